#pragma once

#include <polish/enumeration.hpp>
#include <polish/interval.hpp>
#include <polish/metric_code.hpp>

#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polish {

namespace detail {

inline unsigned long long to_ull(const Index& i, const char* what,
                                 unsigned long long cap = 1ull << 62) {
    if (i < 0 || i > Integer(cap)) throw std::overflow_error(std::string(what) + ": index too large");
    return static_cast<unsigned long long>(i);
}

}  // namespace detail

/// The canonical coding of R: indices name rationals through
/// rational_enumeration, distances are exact.
inline CodePtr make_rational_line() {
    auto code = std::make_shared<MetricCode>();
    code->family = "rational_line";
    code->exact = true;
    code->oracle = [](const Index& i, const Index& j, Precision) {
        return abs(rational_enumeration(i) - rational_enumeration(j));
    };
    code->separation = [](const Index& i) -> SeparationInfo {
        Rational q = rational_enumeration(i);
        return NotIsolatedSep{[q](Precision k) { return rational_index(approach_within(q, k.k)); }};
    };
    code->real_value = [](const Index& i, Precision) {
        return Interval::point(rational_enumeration(i));
    };
    return code;
}

/// The dyadic rationals with the euclidean metric; a dense proper subline of
/// the rational line.
inline CodePtr make_dyadic_line() {
    auto code = std::make_shared<MetricCode>();
    code->family = "dyadic_line";
    code->exact = true;
    code->oracle = [](const Index& i, const Index& j, Precision) {
        return abs(dyadic_value(i) - dyadic_value(j));
    };
    code->real_value = [](const Index& i, Precision) { return Interval::point(dyadic_value(i)); };
    return code;
}

/// The rational line translated by a quadratic irrational. Distances are
/// evaluated through interval arithmetic with outward rounding, so the
/// oracle genuinely depends on the requested precision.
inline CodePtr make_shifted_line(QuadIrrational offset) {
    auto code = std::make_shared<MetricCode>();
    code->family = "shifted_line";
    code->exact = false;
    code->oracle = [offset](const Index& i, const Index& j, Precision k) {
        Interval s = offset.enclose(Precision(k.k + 3));
        Interval a = Interval::point(rational_enumeration(i)) + s;
        Interval b = Interval::point(rational_enumeration(j)) + s;
        return abs(a - b).midpoint();
    };
    code->real_value = [offset](const Index& i, Precision k) {
        return Interval::point(rational_enumeration(i)) + offset.enclose(Precision(k.k + 1));
    };
    return code;
}

/// Alphabet sizes for product codes: the full Baire alphabet on every
/// coordinate, or a finite radix list whose last entry repeats forever.
struct ProductSpec {
    bool omega = false;
    std::vector<unsigned long long> radices;

    static ProductSpec baire() {
        ProductSpec s;
        s.omega = true;
        return s;
    }
    static ProductSpec finite(std::vector<unsigned long long> r) {
        ProductSpec s;
        s.radices = std::move(r);
        return s;
    }

    unsigned long long radix(std::size_t n) const {
        return radices[n < radices.size() ? n : radices.size() - 1];
    }
};

namespace detail {

// Eventually-zero sequences over finite radices, enumerated by blocks: the
// sequences whose last nonzero entry sits at position L-1 are ranked by the
// mixed-radix value of the prefix and the magnitude of that entry.
inline std::vector<Integer> finite_product_decode(const ProductSpec& spec, const Index& i) {
    if (i == 0) return {};
    Integer rem = i - 1;
    std::size_t L = 1;
    Integer weight(1);  // product of radices below L-1
    while (true) {
        Integer top(spec.radix(L - 1));
        Integer block = weight * (top - 1);
        if (block > 0 && rem < block) {
            std::vector<Integer> seq(L, Integer(0));
            seq[L - 1] = 1 + rem / weight;
            Integer r = rem % weight;
            for (std::size_t n = 0; n + 1 < L; ++n) {
                Integer radix(spec.radix(n));
                seq[n] = r % radix;
                r /= radix;
            }
            return seq;
        }
        rem -= block;
        weight *= top;
        ++L;
        if (L > (1u << 24)) throw std::out_of_range("product code: index out of range");
    }
}

inline std::vector<Integer> product_decode(const ProductSpec& spec, const Index& i) {
    return spec.omega ? finite_seq_enumeration(i) : finite_product_decode(spec, i);
}

inline std::optional<Index> product_size(const ProductSpec& spec) {
    if (spec.omega || spec.radices.back() >= 2) return std::nullopt;
    Integer total(1);
    for (auto r : spec.radices) total *= r;
    return Index(total);
}

}  // namespace detail

/// Product-space code: eventually-zero sequences under the first-difference
/// metric d(x,y) = 2^-min{n : x(n) != y(n)}. ProductSpec::baire() yields the
/// standard Baire-space code.
inline CodePtr make_product(ProductSpec spec) {
    if (!spec.omega) {
        if (spec.radices.empty()) throw std::invalid_argument("product code: empty radix list");
        for (auto r : spec.radices)
            if (r == 0) throw std::invalid_argument("product code: radix must be >= 1");
    }
    auto code = std::make_shared<MetricCode>();
    code->family = spec.omega ? "baire" : "product";
    code->exact = true;
    code->ultrametric = true;
    code->diameter_bound = Rational(1);
    code->size = spec.omega ? std::nullopt : detail::product_size(spec);
    code->oracle = [spec](const Index& i, const Index& j, Precision) {
        std::vector<Integer> x = detail::product_decode(spec, i);
        std::vector<Integer> y = detail::product_decode(spec, j);
        std::size_t limit = std::max(x.size(), y.size());
        for (std::size_t n = 0; n < limit; ++n) {
            Integer xn = n < x.size() ? x[n] : Integer(0);
            Integer yn = n < y.size() ? y[n] : Integer(0);
            if (xn != yn) return pow2(-static_cast<long>(n));
        }
        return Rational(0);  // unreachable for distinct indices of a bijective coding
    };
    return code;
}

/// Encode a sequence as an index of the given product code family.
inline Index product_index(const ProductSpec& spec, const std::vector<Integer>& seq) {
    for (std::size_t n = 0; n < seq.size(); ++n) {
        if (seq[n] < 0) throw std::invalid_argument("product_index: negative entry");
        if (!spec.omega && seq[n] >= Integer(spec.radix(n)))
            throw std::invalid_argument("product_index: entry exceeds radix");
    }
    if (spec.omega) return finite_seq_index(seq);
    std::vector<Integer> tuple = seq;
    while (!tuple.empty() && tuple.back() == 0) tuple.pop_back();
    if (tuple.empty()) return Index(0);
    std::size_t L = tuple.size();
    Integer index(1), weight(1);
    for (std::size_t l = 1; l < L; ++l) {
        index += weight * (Integer(spec.radix(l - 1)) - 1);
        weight *= spec.radix(l - 1);
    }
    Integer rank = (tuple[L - 1] - 1) * weight;
    Integer w(1);
    for (std::size_t n = 0; n + 1 < L; ++n) {
        rank += tuple[n] * w;
        w *= spec.radix(n);
    }
    return Index(index + rank);
}

/// Discrete metric: every pair of distinct indices at distance one.
inline CodePtr make_discrete() {
    auto code = std::make_shared<MetricCode>();
    code->family = "discrete";
    code->exact = true;
    code->ultrametric = true;
    code->diameter_bound = Rational(1);
    code->oracle = [](const Index&, const Index&, Precision) { return Rational(1); };
    code->separation = [](const Index&) -> SeparationInfo { return IsolatedSep{Rational(1)}; };
    return code;
}

/// d(n, m) = |2^-n - 2^-m|: a convergent sequence together with its gaps;
/// the completion adjoins the single limit point.
inline CodePtr make_geometric() {
    auto code = std::make_shared<MetricCode>();
    code->family = "geometric";
    code->exact = true;
    code->diameter_bound = Rational(1);
    code->oracle = [](const Index& i, const Index& j, Precision) {
        long a = static_cast<long>(detail::to_ull(i, "geometric", 1u << 26));
        long b = static_cast<long>(detail::to_ull(j, "geometric", 1u << 26));
        return abs(pow2(-a) - pow2(-b));
    };
    code->separation = [](const Index& i) -> SeparationInfo {
        long a = static_cast<long>(detail::to_ull(i, "geometric", 1u << 26));
        return IsolatedSep{pow2(-a - 1)};
    };
    code->real_value = [](const Index& i, Precision) {
        return Interval::point(pow2(-static_cast<long>(detail::to_ull(i, "geometric", 1u << 26))));
    };
    return code;
}

/// The y-coordinates of the planar list {(1/(n+1), q_n)}: the rationals in
/// (0,1), which are exactly the odd Calkin-Wilf positions.
inline Rational euclidean_point_ordinate(const Index& i) { return calkin_wilf(Integer(2 * i + 1)); }

/// Index of the point with ordinate y, for y in Q and 0 < y < 1.
inline Index euclidean_point_index(const Rational& y) {
    if (y <= 0 || y >= 1) throw std::invalid_argument("euclidean_point_index: need 0 < y < 1");
    Integer n = calkin_wilf_index(y);
    return Index((n - 1) / 2);
}

/// Planar list code {(1/(n+1), q_n) : n < omega} with q_n enumerating the
/// rationals in (0,1). Every point is isolated, yet the completion has a
/// nonempty perfect kernel.
inline CodePtr make_euclidean_list() {
    auto code = std::make_shared<MetricCode>();
    code->family = "euclidean_list";
    code->exact = false;
    code->diameter_bound = Rational(3, 2);
    code->oracle = [](const Index& i, const Index& j, Precision k) {
        Rational dx = Rational(1, Integer(i + 1)) - Rational(1, Integer(j + 1));
        Rational dy = euclidean_point_ordinate(i) - euclidean_point_ordinate(j);
        return sqrt_enclosure(dx * dx + dy * dy, Precision(k.k + 1)).midpoint();
    };
    code->separation = [](const Index& i) -> SeparationInfo {
        return IsolatedSep{Rational(1, Integer((i + 1) * (i + 2)))};
    };
    return code;
}

/// Finite code given by its lower-triangle distance table.
inline CodePtr make_finite_table(const std::vector<std::vector<Rational>>& rows,
                                 bool pseudometric = false) {
    const std::size_t n = rows.size();
    if (n == 0) throw std::invalid_argument("finite table: empty");
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != i + 1)
            throw std::invalid_argument("finite table: row " + std::to_string(i) +
                                        " must have " + std::to_string(i + 1) + " entries");
        if (rows[i][i] != 0)
            throw std::invalid_argument("finite table: nonzero diagonal at " + std::to_string(i));
        for (std::size_t j = 0; j <= i; ++j)
            if (rows[i][j] < 0)
                throw std::invalid_argument("finite table: negative entry at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
    }
    auto table = std::make_shared<std::vector<std::vector<Rational>>>(rows);
    auto code = std::make_shared<MetricCode>();
    code->family = pseudometric ? "pseudo-table" : "table";
    code->exact = true;
    code->pseudometric = pseudometric;
    code->size = Index(n);
    Rational diam(0);
    for (const auto& row : rows)
        for (const auto& v : row)
            if (v > diam) diam = v;
    code->diameter_bound = diam;
    code->oracle = [table](const Index& i, const Index& j, Precision) {
        auto a = detail::to_ull(i, "table");
        auto b = detail::to_ull(j, "table");
        return a >= b ? (*table)[a][b] : (*table)[b][a];
    };
    return code;
}

}  // namespace polish
