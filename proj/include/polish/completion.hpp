#pragma once

#include <polish/metric_code.hpp>
#include <polish/verdict.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace polish {

/// The claimed fast-Cauchy property of a sequence was refuted at a pair of
/// stages: d(at(k), at(m)) came out above 2^-k plus the query slack.
class ModulusViolation : public std::runtime_error {
public:
    unsigned k, m;
    Rational observed;
    ModulusViolation(unsigned kk, unsigned mm, Rational obs)
        : std::runtime_error("fast-Cauchy modulus refuted at stages (" + std::to_string(kk) +
                             "," + std::to_string(mm) + "): observed " + format_rational(obs)),
          k(kk),
          m(mm),
          observed(std::move(obs)) {}
};

/// A fixture point was declared only up to a finite depth and a deeper stage
/// was requested; bounded verifiers turn this into an Unknown verdict.
class TruncatedPoint : public std::runtime_error {
public:
    unsigned depth;
    explicit TruncatedPoint(unsigned d)
        : std::runtime_error("point defined only to depth " + std::to_string(d)), depth(d) {}
};

/// A point of the completion: an index sequence with the fast-Cauchy modulus
/// d(at(k), at(m)) <= 2^-k for k <= m. Accesses are memoized; the observable
/// behavior equals the pure sequence.
class CauchyPoint {
public:
    CauchyPoint(CodePtr space, std::function<Index(Precision)> at)
        : state_(std::make_shared<State>(std::move(space), std::move(at))) {}

    const CodePtr& space() const { return state_->space; }

    Index at(Precision k) const {
        std::lock_guard<std::mutex> lock(state_->mu);
        auto it = state_->memo.find(k.k);
        if (it != state_->memo.end()) return it->second;
        Index v = state_->fn(k);
        state_->space->require_index(v);
        state_->memo.emplace(k.k, v);
        return v;
    }

    /// Identity of the underlying representation (not of the denoted point:
    /// that would be a limit statement).
    bool same_object(const CauchyPoint& other) const { return state_ == other.state_; }

private:
    struct State {
        CodePtr space;
        std::function<Index(Precision)> fn;
        std::map<unsigned, Index> memo;
        std::mutex mu;
        State(CodePtr s, std::function<Index(Precision)> f) : space(std::move(s)), fn(std::move(f)) {}
    };
    std::shared_ptr<State> state_;
};

/// Canonical image of a code point in the completion: the constant sequence.
inline CauchyPoint embed(CodePtr code, const Index& i) {
    code->require_index(i);
    return CauchyPoint(std::move(code), [i](Precision) { return i; });
}

/// Wraps a sequence after spot-checking its claimed modulus on all stage
/// pairs up to check_depth. A passing point may still be invalid beyond the
/// checked depth; that is all a finite check can give.
inline CauchyPoint make_point(CodePtr code, std::function<Index(Precision)> seq,
                              unsigned check_depth) {
    for (unsigned k = 0; k <= check_depth; ++k) {
        for (unsigned m = k; m <= check_depth; ++m) {
            const Precision query(k + 2);
            Rational observed = code->dist(seq(Precision(k)), seq(Precision(m)), query);
            if (observed > tolerance(Precision(k)) + tolerance(query))
                throw ModulusViolation(k, m, observed);
        }
    }
    return CauchyPoint(std::move(code), std::move(seq));
}

inline void require_same_space(const CauchyPoint& z, const CauchyPoint& w) {
    if (z.space().get() != w.space().get())
        throw std::invalid_argument("points live over different codes");
}

/// Completion distance to within 2^-k: evaluate both representatives at
/// stage k+2, where the two modulus tails and the oracle slack sum to at
/// most the advertised tolerance.
inline Rational point_dist(const CauchyPoint& z, const CauchyPoint& w, Precision k) {
    require_same_space(z, w);
    const Precision deep(k.k + 2);
    return z.space()->dist(z.at(deep), w.at(deep), deep);
}

/// Semi-decidable apartness. Equality of completion points is a limit
/// statement, so the negative side stays Unknown forever.
inline Verdict apart(const CauchyPoint& z, const CauchyPoint& w, Precision k) {
    require_same_space(z, w);
    Bounds bounds;
    bounds.precision = k.k;
    Rational d = point_dist(z, w, k);
    if (d > 2 * tolerance(k))
        return Verdict::holds(Witness("apart").val("distance", d), bounds);
    return Verdict::unknown(bounds);
}

}  // namespace polish
