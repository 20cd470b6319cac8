#pragma once

#include <polish/metric_code.hpp>
#include <polish/verdict.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace polish {

/// Finite stage of an isometric embedding claim between two codes.
struct PartialIsometry {
    CodePtr source, target;
    std::vector<std::pair<Index, Index>> pairs;
    unsigned slack = 0;  // distances are claimed to match within 2^-slack
};

/// Refuter for a partial isometry: any listed pair of pairs whose distances
/// disagree by more than the claimed slack plus twice the query tolerance is
/// a hard counterexample.
inline Verdict check_partial_isometry(const PartialIsometry& pi, Precision k) {
    for (std::size_t a = 0; a < pi.pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pi.pairs.size(); ++b) {
            if (pi.pairs[a].first == pi.pairs[b].first || pi.pairs[a].second == pi.pairs[b].second)
                throw std::invalid_argument("check_partial_isometry: pairs not injective");
        }
    Bounds bounds;
    bounds.n = pi.pairs.size();
    bounds.precision = k.k;
    const Rational allowed = pow2(-static_cast<long>(pi.slack)) + 2 * tolerance(k);
    for (std::size_t a = 0; a < pi.pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pi.pairs.size(); ++b) {
            const auto& [i, ti] = pi.pairs[a];
            const auto& [j, tj] = pi.pairs[b];
            Rational ds = pi.source->dist(i, j, k);
            Rational dt = pi.target->dist(ti, tj, k);
            if (abs(ds - dt) > allowed)
                return Verdict::fails(Witness("distance-mismatch")
                                          .idx("i", i)
                                          .idx("j", j)
                                          .idx("i'", ti)
                                          .idx("j'", tj)
                                          .val("d_src", ds)
                                          .val("d_tgt", dt),
                                      bounds);
        }
    return Verdict::holds(bounds);
}

/// Result of a bounded witness search. A missing witness is never a
/// nonexistence claim beyond the searched bound.
struct SearchOutcome {
    std::optional<PartialIsometry> witness;
    unsigned long long bound = 0;
    unsigned long long nodes_expanded = 0;
    std::string pruned;  // nonempty when a structural obstruction cut the search

    bool found() const { return witness.has_value(); }
};

/// Backtracking search for an eps-isometric embedding of A's first n points
/// into B's first `bound` points. Deterministic: returns the
/// lexicographically least assignment in target-index order. Structural
/// prunes (target diameter bound, target ultrametricity) may refute without
/// expanding the tree; both are sound for true isometries within the slack
/// budget.
inline SearchOutcome search_isometry(const CodePtr& A, const CodePtr& B, unsigned long long n,
                                     Precision eps, unsigned long long bound) {
    if (A->size && Index(n) > *A->size) throw std::out_of_range("search_isometry: n exceeds |A|");
    SearchOutcome out;
    out.bound = bound;
    if (B->size && Index(bound) > *B->size)
        bound = static_cast<unsigned long long>(*B->size);

    const Precision query(eps.k + 2);
    const Rational qtol = tolerance(query);
    const Rational tol = tolerance(eps) + 2 * qtol;

    std::vector<std::vector<Rational>> dA(n, std::vector<Rational>(n));
    for (unsigned long long i = 0; i < n; ++i)
        for (unsigned long long j = i + 1; j < n; ++j) dA[i][j] = dA[j][i] = A->dist(i, j, query);

    if (B->diameter_bound) {
        const Rational limit = *B->diameter_bound + qtol + tol;
        for (unsigned long long i = 0; i < n; ++i)
            for (unsigned long long j = i + 1; j < n; ++j)
                if (dA[i][j] > limit) {
                    out.pruned = "diameter";
                    return out;
                }
    }
    if (B->ultrametric) {
        const Rational s = 2 * (tol + qtol);
        for (unsigned long long i = 0; i < n; ++i)
            for (unsigned long long j = 0; j < n; ++j)
                for (unsigned long long l = 0; l < n; ++l) {
                    if (i == j || j == l || i == l) continue;
                    if (dA[i][l] > std::max(dA[i][j], dA[j][l]) + s) {
                        out.pruned = "ultrametric";
                        return out;
                    }
                }
    }

    std::unordered_map<unsigned long long, Rational> dB_memo;
    auto dB = [&](unsigned long long a, unsigned long long b) -> const Rational& {
        if (a > b) std::swap(a, b);
        unsigned long long key = (a << 32) | b;
        auto it = dB_memo.find(key);
        if (it == dB_memo.end()) it = dB_memo.emplace(key, B->dist(a, b, query)).first;
        return it->second;
    };
    if (bound > (1ull << 31)) throw std::invalid_argument("search_isometry: bound too large");

    std::vector<unsigned long long> assigned(n, 0);
    std::vector<bool> used(bound, false);
    std::function<bool(unsigned long long)> dfs = [&](unsigned long long level) -> bool {
        if (level == n) return true;
        for (unsigned long long t = 0; t < bound; ++t) {
            if (used[t]) continue;
            ++out.nodes_expanded;
            bool ok = true;
            for (unsigned long long prev = 0; prev < level; ++prev) {
                if (abs(dA[prev][level] - dB(assigned[prev], t)) > tol) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            assigned[level] = t;
            used[t] = true;
            if (dfs(level + 1)) return true;
            used[t] = false;
        }
        return false;
    };
    if (n == 0 || dfs(0)) {
        PartialIsometry w;
        w.source = A;
        w.target = B;
        w.slack = eps.k;
        for (unsigned long long i = 0; i < n; ++i) w.pairs.emplace_back(Index(i), Index(assigned[i]));
        out.witness = std::move(w);
    }
    return out;
}

/// Decidable index set, optionally carrying exact separation data: a
/// certified lower bound on the distance from an index to the whole subset.
/// Without it a failed density scan can only ever report Unknown.
struct IndexSubset {
    std::string label;
    std::function<bool(const Index&)> contains;
    std::function<std::optional<Rational>(const Index&)> separation_lb;  // may be empty
};

/// Bounded density check: for each target index, hunt for a subset member
/// within 2^-k below the search bound.
inline Verdict density_check(const MetricCode& code, const IndexSubset& subset,
                             const std::vector<Index>& targets, Precision k,
                             unsigned long long bound) {
    Bounds bounds;
    bounds.n = targets.size();
    bounds.precision = k.k;
    bounds.bound = bound;
    const Precision query(k.k + 2);
    for (const Index& i : targets) {
        code.require_index(i);
        bool found = false;
        for (unsigned long long j = 0; j <= bound && (!code.size || Index(j) < *code.size); ++j) {
            if (!subset.contains(j)) continue;
            if (code.dist(i, j, query) <= tolerance(k)) {
                found = true;
                break;
            }
        }
        if (found) continue;
        if (code.exact && subset.separation_lb) {
            if (auto lb = subset.separation_lb(i); lb && *lb > tolerance(k))
                return Verdict::fails(Witness("separated").idx("i", i).val("lb", *lb), bounds);
        }
        return Verdict::unknown(Witness("no-approximant").idx("i", i), bounds);
    }
    return Verdict::holds(bounds);
}

/// Spec-shaped overload: targets are the first n indices.
inline Verdict density_check(const MetricCode& code, const IndexSubset& subset,
                             unsigned long long n, Precision k, unsigned long long bound) {
    std::vector<Index> targets;
    for (unsigned long long i = 0; i < n; ++i) targets.emplace_back(i);
    return density_check(code, subset, targets, k, bound);
}

/// Constructive form of a dense isometry: a total index map plus a density
/// modulus returning, for each target index and tolerance, a source index
/// mapped into that ball.
struct DenseIsometryWitness {
    CodePtr source, target;
    std::function<Index(const Index&)> map;
    std::function<Index(const Index&, Precision)> density;
};

/// Refuter for a dense-isometry witness: distance preservation on the first
/// n indices, then validity of every density answer down to tolerance k.
inline Verdict check_dense_witness(const DenseIsometryWitness& w, unsigned long long n,
                                   Precision k) {
    Bounds bounds;
    bounds.n = n;
    bounds.precision = k.k;
    const Rational allowed = 2 * tolerance(k);
    std::vector<Index> mapped;
    for (unsigned long long i = 0; i < n; ++i) {
        mapped.push_back(w.map(i));
        w.target->require_index(mapped.back());
    }
    for (unsigned long long i = 0; i < n; ++i)
        for (unsigned long long j = i + 1; j < n; ++j) {
            Rational ds = w.source->dist(i, j, k);
            Rational dt = w.target->dist(mapped[i], mapped[j], k);
            if (abs(ds - dt) > allowed)
                return Verdict::fails(Witness("distance-mismatch")
                                          .idx("i", i)
                                          .idx("j", j)
                                          .val("d_src", ds)
                                          .val("d_tgt", dt),
                                      bounds);
        }
    for (unsigned long long j = 0; j < n; ++j)
        for (unsigned kk = 0; kk <= k.k; ++kk) {
            const Precision want(kk), query(kk + 2);
            Index i = w.density(j, want);
            Rational d = w.target->dist(w.map(i), j, query);
            if (d > tolerance(want) + tolerance(query))
                return Verdict::fails(
                    Witness("density").idx("j", j).idx("i", i).val("d", d).val(
                        "tol", tolerance(want)),
                    bounds);
        }
    return Verdict::holds(bounds);
}

/// g[x] restricted to the first n indices; depends only on x|n and g|n.
inline std::vector<Index> image_prefix(const std::function<Index(const Index&)>& g,
                                       const std::function<bool(const Index&)>& x,
                                       unsigned long long n) {
    std::vector<Index> out;
    for (unsigned long long i = 0; i < n; ++i)
        if (x(i)) out.push_back(g(i));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Cross-distance data joining two codes: d*(iota_0(i), iota_1(j)) at the
/// requested precision.
struct CrossOracle {
    std::function<Rational(const Index&, const Index&, Precision)> fn;
    bool exact = false;
};

/// Cross distances from the real-value embeddings two line-family codes
/// carry, evaluated outward.
inline CrossOracle cross_from_real_values(const CodePtr& A, const CodePtr& B) {
    if (!A->real_value || !B->real_value)
        throw std::invalid_argument("cross_from_real_values: codes carry no value embedding");
    CrossOracle cross;
    cross.exact = A->exact && B->exact;
    auto av = A->real_value;
    auto bv = B->real_value;
    cross.fn = [av, bv](const Index& i, const Index& j, Precision k) {
        const Precision deep(k.k + 3);
        return abs(av(i, deep) - bv(j, deep)).midpoint();
    };
    return cross;
}

inline CrossOracle constant_cross(Rational value) {
    CrossOracle cross;
    cross.exact = true;
    cross.fn = [value](const Index&, const Index&, Precision) { return value; };
    return cross;
}

/// An amalgam with its two canonical embeddings.
struct Amalgam {
    CodePtr code;
    std::function<Index(const Index&)> embed_left, embed_right;
};

namespace detail {

// Even/odd interleaving while both sides last, then the longer side packed
// contiguously; this keeps the union an initial segment for finite codes.
struct AmalgamLayout {
    std::optional<Index> size_a, size_b, total;

    Index common() const {
        if (size_a && (!size_b || *size_a <= *size_b)) return *size_a;
        if (size_b) return *size_b;
        return Index(-1);  // both infinite: interleave everywhere
    }
    Index left(const Index& i) const {
        Index m = common();
        return (m < 0 || i < m) ? Index(2 * i) : Index(i + m);
    }
    Index right(const Index& j) const {
        Index m = common();
        return (m < 0 || j < m) ? Index(2 * j + 1) : Index(j + m);
    }
    // (side, original index); side 0 = left.
    std::pair<int, Index> decode(const Index& u) const {
        Index m = common();
        if (m < 0 || u < 2 * m)
            return bit_test(Integer(u), 0) ? std::make_pair(1, Index((u - 1) / 2))
                                           : std::make_pair(0, Index(u / 2));
        bool left_is_longer = size_b && (!size_a || *size_a > *size_b);
        return {left_is_longer ? 0 : 1, Index(u - m)};
    }
};

}  // namespace detail

/// Single code containing exact isometric copies of both inputs, with the
/// supplied cross-distances between the copies. Amalgams are pseudometric:
/// the two copies may identify points, and nothing at finite precision could
/// decide that. Soundness of the cross data is the caller's to verify, via
/// verify_metric on the result.
inline Amalgam amalgamate(CodePtr A, CodePtr B, CrossOracle cross) {
    detail::AmalgamLayout layout{A->size, B->size, std::nullopt};
    auto code = std::make_shared<MetricCode>();
    code->family = "amalgam";
    code->pseudometric = true;
    code->exact = A->exact && B->exact && cross.exact;
    if (A->size && B->size) code->size = Index(*A->size + *B->size);
    auto a_oracle = A;
    auto b_oracle = B;
    code->oracle = [a_oracle, b_oracle, cross, layout](const Index& u, const Index& v,
                                                       Precision k) {
        auto [su, iu] = layout.decode(u);
        auto [sv, iv] = layout.decode(v);
        if (su == 0 && sv == 0) return a_oracle->dist(iu, iv, k);
        if (su == 1 && sv == 1) return b_oracle->dist(iu, iv, k);
        const Index& ia = su == 0 ? iu : iv;
        const Index& ib = su == 0 ? iv : iu;
        return cross.fn(ia, ib, k);
    };
    if (A->real_value && B->real_value) {
        auto av = A->real_value;
        auto bv = B->real_value;
        code->real_value = [av, bv, layout](const Index& u, Precision k) {
            auto [side, i] = layout.decode(u);
            return side == 0 ? av(i, k) : bv(i, k);
        };
    }
    Amalgam out;
    out.code = code;
    out.embed_left = [layout](const Index& i) { return layout.left(i); };
    out.embed_right = [layout](const Index& j) { return layout.right(j); };
    return out;
}

}  // namespace polish
