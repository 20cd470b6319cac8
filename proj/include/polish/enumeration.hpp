#pragma once

#include <polish/rational.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace polish {

// ---------------------------------------------------------------------------
// Stern's diatomic sequence and the Calkin-Wilf enumeration of positive
// rationals. cw(m) = fusc(m+1)/fusc(m+2); the index of p/q is recovered from
// the run-length encoding of its continued fraction, so both directions cost
// O(bits) big-integer work even for indices with thousands of bits.
// ---------------------------------------------------------------------------

/// (fusc(n), fusc(n+1)), by consuming the bits of n from the top.
inline std::pair<Integer, Integer> fusc_pair(const Integer& n) {
    if (n == 0) return {Integer(0), Integer(1)};
    std::pair<Integer, Integer> acc{0, 1};
    for (long bit = static_cast<long>(msb(n)); bit >= 0; --bit) {
        if (bit_test(n, static_cast<unsigned>(bit)))
            acc = {acc.first + acc.second, acc.second};
        else
            acc = {acc.first, acc.first + acc.second};
    }
    return acc;
}

/// The m-th positive rational in Calkin-Wilf (breadth-first) order; cw(0)=1.
inline Rational calkin_wilf(const Integer& m) {
    auto [a, b] = fusc_pair(Integer(m + 1));
    return Rational(a, b);
}

/// Continued fraction [a0; a1, ..., ar] of a nonnegative rational, canonical
/// form (final term >= 2 unless the expansion is a bare integer part).
inline std::vector<Integer> continued_fraction(const Rational& x) {
    if (x < 0) throw std::invalid_argument("continued_fraction: negative argument");
    std::vector<Integer> terms;
    Integer p = numerator(x), q = denominator(x);
    while (true) {
        terms.push_back(p / q);
        Integer r = p % q;
        if (r == 0) break;
        p = q;
        q = r;
    }
    return terms;
}

inline Rational rational_from_cf(const std::vector<Integer>& terms) {
    if (terms.empty()) throw std::invalid_argument("rational_from_cf: empty expansion");
    Rational v(terms.back());
    for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) v = Rational(*it) + 1 / v;
    return v;
}

/// Calkin-Wilf index of a positive rational. The path from the tree root is
/// the run-length encoding of the continued fraction, assembled with shifts
/// so that huge runs stay cheap.
inline Integer calkin_wilf_index(const Rational& x) {
    if (x <= 0) throw std::invalid_argument("calkin_wilf_index: argument must be positive");
    std::vector<Integer> cf = continued_fraction(x);
    // Walking from the node to the root takes a_0 right-steps, a_1 left-steps,
    // a_2 right-steps, ... with the run reaching the root shortened by one.
    // The bits of (index+1) after the leading 1 spell the reversed walk, so
    // the expansion is emitted last term first; term t contributes one-bits
    // iff t is even. Runs become shifts, so huge terms stay cheap in time,
    // though the index itself has ~sum(a_t) bits.
    Integer n1(1);
    for (std::size_t t = cf.size(); t-- > 0;) {
        Integer run = cf[t];
        if (t + 1 == cf.size()) run -= 1;  // the root consumes one step
        if (run < 0) throw std::invalid_argument("calkin_wilf_index: malformed expansion");
        if (run > (Integer(1) << 26))
            throw std::overflow_error("calkin_wilf_index: index would exceed 2^26 bits");
        unsigned shift = static_cast<unsigned>(run);
        n1 <<= shift;
        if (t % 2 == 0) n1 += (Integer(1) << shift) - 1;
    }
    return n1 - 1;
}

// ---------------------------------------------------------------------------
// The canonical bijection omega -> Q: q_0 = 0, q_{2m+1} = cw(m),
// q_{2m+2} = -cw(m). Negation is then an index involution.
// ---------------------------------------------------------------------------

inline Rational rational_enumeration(const Index& i) {
    if (i < 0) throw std::invalid_argument("rational_enumeration: negative index");
    if (i == 0) return Rational(0);
    Integer m = (i - 1) / 2;
    Rational q = calkin_wilf(m);
    return bit_test(Integer(i), 0) ? q : Rational(-q);
}

inline Index rational_index(const Rational& q) {
    if (q == 0) return Index(0);
    Integer m = calkin_wilf_index(abs(q));
    return q > 0 ? Index(2 * m + 1) : Index(2 * m + 2);
}

/// The index involution realizing x -> -x: 0 -> 0, 2m+1 <-> 2m+2.
inline Index negation_involution(const Index& i) {
    if (i == 0) return i;
    return bit_test(Integer(i), 0) ? Index(i + 1) : Index(i - 1);
}

/// A rational w != q with |w - q| <= 2^-m, built by extending the continued
/// fraction of q with the term 2^m. Keeps the sign region of q (w > 0 for
/// q >= 0), and its enumeration index stays polynomial in 2^m bits.
inline Rational approach_within(const Rational& q, unsigned m) {
    const Rational target = abs(q);
    std::vector<Integer> cf = continued_fraction(target);
    cf.push_back(Integer(1) << m);
    Rational w = rational_from_cf(cf);
    return q < 0 ? Rational(-w) : w;
}

// ---------------------------------------------------------------------------
// Cantor pairing on naturals, used by the iterated-pairing tuple codes and
// the dyadic enumeration.
// ---------------------------------------------------------------------------

inline Integer pair_cantor(const Integer& a, const Integer& b) {
    Integer s = a + b;
    return s * (s + 1) / 2 + b;
}

inline std::pair<Integer, Integer> unpair_cantor(const Integer& m) {
    Integer w = (sqrt(Integer(8 * m + 1)) - 1) / 2;
    Integer t = w * (w + 1) / 2;
    while (t > m) {  // guard against isqrt landing one diagonal high
        w -= 1;
        t = w * (w + 1) / 2;
    }
    while (t + w + 1 <= m) {
        t += w + 1;
        w += 1;
    }
    Integer b = m - t;
    return {w - b, b};
}

// ---------------------------------------------------------------------------
// Eventually-zero sequences of naturals: index 0 is the zero sequence;
// otherwise the standard iterated-pairing code of the nonempty tuple with
// nonzero last entry, read back padded with zeros.
// ---------------------------------------------------------------------------

namespace detail {

// Lists of naturals as nested pairs: 0 is nil, i+1 is cons(unpair(i)).
inline std::vector<Integer> decode_list(Integer code) {
    std::vector<Integer> out;
    while (code != 0) {
        auto [head, rest] = unpair_cantor(code - 1);
        out.push_back(head);
        code = rest;
    }
    return out;
}

inline Integer encode_list(const std::vector<Integer>& xs) {
    Integer code(0);
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) code = pair_cantor(*it, code) + 1;
    return code;
}

}  // namespace detail

/// Tuple at index i, trailing zeros stripped (empty tuple for i = 0).
inline std::vector<Integer> finite_seq_enumeration(const Index& i) {
    if (i < 0) throw std::invalid_argument("finite_seq_enumeration: negative index");
    if (i == 0) return {};
    auto [last_minus_one, rest_code] = unpair_cantor(Integer(i - 1));
    std::vector<Integer> reversed = detail::decode_list(rest_code);
    std::vector<Integer> tuple(reversed.rbegin(), reversed.rend());
    tuple.push_back(last_minus_one + 1);
    return tuple;
}

/// Inverse of finite_seq_enumeration; accepts trailing zeros.
inline Index finite_seq_index(std::vector<Integer> tuple) {
    while (!tuple.empty() && tuple.back() == 0) tuple.pop_back();
    if (tuple.empty()) return Index(0);
    Integer last = tuple.back();
    tuple.pop_back();
    std::vector<Integer> reversed(tuple.rbegin(), tuple.rend());
    return pair_cantor(last - 1, detail::encode_list(reversed)) + 1;
}

// ---------------------------------------------------------------------------
// Dyadic rationals z * 2^-e. Every nonzero dyadic is (odd a) * 2^s uniquely;
// the enumeration pairs the odd part with a zigzagged exponent, with the same
// sign interleaving as the rational line. Both directions are O(1).
// ---------------------------------------------------------------------------

inline bool is_dyadic(const Rational& q) {
    Integer den = denominator(q);
    return (den & (den - 1)) == 0;
}

namespace detail {

inline Integer zigzag_encode(long s) { return s >= 0 ? Integer(2 * s) : Integer(-2 * s - 1); }

inline long zigzag_decode(const Integer& v) {
    long x = static_cast<long>(v);
    return (x % 2 == 0) ? x / 2 : -(x + 1) / 2;
}

inline Rational positive_dyadic(const Integer& m) {
    auto [u, v] = unpair_cantor(m);
    Integer odd = 2 * u + 1;
    long s = zigzag_decode(v);
    return s >= 0 ? Rational(odd << s, 1) : Rational(odd, Integer(1) << -s);
}

}  // namespace detail

inline Rational dyadic_value(const Index& i) {
    if (i < 0) throw std::invalid_argument("dyadic_value: negative index");
    if (i == 0) return Rational(0);
    Integer m = (i - 1) / 2;
    Rational v = detail::positive_dyadic(m);
    return bit_test(Integer(i), 0) ? v : Rational(-v);
}

inline Index dyadic_index(const Rational& q) {
    if (!is_dyadic(q)) throw std::invalid_argument("dyadic_index: not a dyadic rational");
    if (q == 0) return Index(0);
    Integer num = boost::multiprecision::abs(numerator(q));
    Integer den = denominator(q);
    long s;
    Integer odd;
    if (den > 1) {
        s = -static_cast<long>(msb(den));
        odd = num;  // lowest terms: numerator already odd
    } else {
        s = static_cast<long>(lsb(num));
        odd = num >> static_cast<unsigned>(s);
    }
    Integer m = pair_cantor((odd - 1) / 2, detail::zigzag_encode(s));
    return q > 0 ? Index(2 * m + 1) : Index(2 * m + 2);
}

// ---------------------------------------------------------------------------
// Periodic continued fraction of sqrt(n) and its convergents, the classic
// integer-only recurrence. Convergent r satisfies
// |sqrt(n) - p_r/q_r| < 1/(q_r q_{r+1}).
// ---------------------------------------------------------------------------

/// Best convergent of sqrt(n) with guaranteed error <= 2^-k (exact value for
/// perfect squares).
inline Rational sqrt_convergent_within(unsigned long long n, Precision k) {
    Integer root = sqrt(Integer(n));
    if (root * root == n) return Rational(root);
    const Integer a0 = root;
    Integer m(0), d(1), a(a0);
    Integer p_prev(1), p(a0), q_prev(0), q(1);
    const Integer limit = Integer(1) << k.k;
    while (true) {
        m = d * a - m;
        d = (Integer(n) - m * m) / d;
        a = (a0 + m) / d;
        Integer p_next = a * p + p_prev;
        Integer q_next = a * q + q_prev;
        if (q * q_next >= limit) return Rational(p, q);
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
    }
}

}  // namespace polish
