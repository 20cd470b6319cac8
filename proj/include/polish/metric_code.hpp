#pragma once

#include <polish/interval.hpp>
#include <polish/rational.hpp>
#include <polish/verdict.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace polish {

/// Per-index separation data a code may carry: either a certified punctured
/// ball, or a stream of ever-closer distinct neighbours.
struct IsolatedSep {
    Rational delta;  // every other index is at distance >= delta
};
struct NotIsolatedSep {
    // approximant(k) is an index j != i with d(i, j) <= 2^-k
    std::function<Index(Precision)> approximant;
};
using SeparationInfo = std::variant<std::monostate, IsolatedSep, NotIsolatedSep>;

/// A countable metric space presented as a precision-parameterized rational
/// distance oracle on omega (or a finite initial segment). Oracles are pure;
/// instances are immutable after construction and safe to share.
class MetricCode {
public:
    using DistFn = std::function<Rational(const Index&, const Index&, Precision)>;
    using SeparationFn = std::function<SeparationInfo(const Index&)>;
    using RealValueFn = std::function<Interval(const Index&, Precision)>;

    std::string family;                     // generator tag, for reports
    std::optional<Index> size;              // nullopt = all of omega
    bool exact = false;                     // oracle independent of precision
    bool pseudometric = false;              // distinct indices may sit at 0
    bool ultrametric = false;               // satisfies the strong triangle
    std::optional<Rational> diameter_bound;
    DistFn oracle;                          // raw; dist() canonicalizes
    SeparationFn separation;                // may be empty
    RealValueFn real_value;                 // set for line-family codes

    bool in_range(const Index& i) const { return i >= 0 && (!size || i < *size); }

    void require_index(const Index& i) const {
        if (!in_range(i))
            throw std::out_of_range("index " + i.str() + " out of range for code " + family);
    }

    /// |result - d(i,j)| <= 2^-k. The diagonal and symmetry are exact by
    /// construction: the pair is canonicalized before the oracle runs.
    Rational dist(const Index& i, const Index& j, Precision k) const {
        require_index(i);
        require_index(j);
        if (i == j) return Rational(0);
        return i < j ? oracle(i, j, k) : oracle(j, i, k);
    }
};

using CodePtr = std::shared_ptr<const MetricCode>;

/// Oracle distance; thin free-function form of MetricCode::dist.
inline Rational dist(const MetricCode& code, const Index& i, const Index& j, Precision k) {
    return code.dist(i, j, k);
}

/// Stage-n refuter for the metric axioms. Diagonal and symmetry hold by
/// construction; nonnegativity and the triangle are checked with the slack
/// the 2^-k oracle contract forces. Identity of indiscernibles cannot be
/// certified at finite precision, so unresolved pairs make the verdict
/// Unknown unless the code is declared pseudometric.
inline Verdict verify_metric(const MetricCode& code, unsigned long long n, Precision k) {
    if (code.size && Index(n) > *code.size)
        throw std::out_of_range("verify_metric: n exceeds code size");
    Bounds bounds;
    bounds.n = n;
    bounds.precision = k.k;

    const Rational tol = tolerance(k);
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
    for (unsigned long long i = 0; i < n; ++i)
        for (unsigned long long j = i + 1; j < n; ++j) d[i][j] = d[j][i] = code.dist(i, j, k);

    std::optional<Witness> unresolved;
    for (unsigned long long i = 0; i < n; ++i) {
        for (unsigned long long j = i + 1; j < n; ++j) {
            if (d[i][j] < (code.exact ? Rational(0) : Rational(-tol)))
                return Verdict::fails(
                    Witness("negative-distance").idx("i", i).idx("j", j).val("d", d[i][j]),
                    bounds);
            if (!code.pseudometric && d[i][j] <= tol && !unresolved)
                unresolved = Witness("indiscernible-at-scale").idx("i", i).idx("j", j);
        }
    }
    for (unsigned long long i = 0; i < n; ++i)
        for (unsigned long long j = 0; j < n; ++j) {
            if (j == i) continue;
            for (unsigned long long l = 0; l < n; ++l) {
                if (l == i || l == j) continue;
                if (d[i][l] > d[i][j] + d[j][l] + 3 * tol)
                    return Verdict::fails(Witness("triangle")
                                              .idx("i", i)
                                              .idx("j", j)
                                              .idx("l", l)
                                              .val("d_il", d[i][l])
                                              .val("d_ij", d[i][j])
                                              .val("d_jl", d[j][l]),
                                          bounds);
            }
        }
    if (unresolved) return Verdict::unknown(*unresolved, bounds);
    return Verdict::holds(bounds);
}

}  // namespace polish
