#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace polish {

// Exact arbitrary-precision arithmetic. cpp_rational keeps values in lowest
// terms with a positive denominator, which is exactly the canonical form the
// file formats require.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Indices into a code live on omega. They get genuinely large: approximants
// of a rational at tolerance 2^-k sit at enumeration indices with ~2^k bits.
using Index = Integer;

/// Tolerance exponent: Precision{k} means 2^-k.
struct Precision {
    unsigned k = 0;

    constexpr explicit Precision(unsigned kk) : k(kk) {}
    constexpr Precision plus(unsigned d) const { return Precision(k + d); }

    friend constexpr bool operator==(Precision a, Precision b) { return a.k == b.k; }
    friend constexpr bool operator<=(Precision a, Precision b) { return a.k <= b.k; }
};

/// 2^e as an exact rational, e may be negative.
inline Rational pow2(long e) {
    if (e >= 0) return Rational(Integer(1) << e, 1);
    return Rational(1, Integer(1) << -e);
}

/// The tolerance 2^-k named by a precision.
inline Rational tolerance(Precision p) { return pow2(-static_cast<long>(p.k)); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Smallest e with x <= 2^e; requires x > 0.
inline long ceil_log2(const Rational& x) {
    if (x <= 0) throw std::invalid_argument("ceil_log2: argument must be positive");
    const Integer num = numerator(x);
    const Integer den = denominator(x);
    long e = static_cast<long>(msb(num)) - static_cast<long>(msb(den));
    // msb gives an estimate within one; settle by comparison.
    while (pow2(e) < x) ++e;
    while (pow2(e - 1) >= x) --e;
    return e;
}

/// Canonical text form: "p" when integral, "p/q" otherwise.
inline std::string format_rational(const Rational& q) {
    const Integer den = denominator(q);
    if (den == 1) return numerator(q).str();
    return numerator(q).str() + "/" + den.str();
}

namespace detail {

inline bool is_canonical_integer_text(const std::string& s) {
    std::size_t pos = 0;
    if (pos < s.size() && s[pos] == '-') ++pos;
    if (pos >= s.size()) return false;
    if (s[pos] == '0') return pos + 1 == s.size() && s[0] != '-';
    for (; pos < s.size(); ++pos)
        if (s[pos] < '0' || s[pos] > '9') return false;
    return true;
}

}  // namespace detail

/// Strict parser for the fixture serialization: lowest terms, positive
/// denominator, integers written without a slash. Returns nullopt on any
/// deviation ("2/4", "4/1", "-0", "01", ...).
inline std::optional<Rational> parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!detail::is_canonical_integer_text(text)) return std::nullopt;
        return Rational(Integer(text), 1);
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!detail::is_canonical_integer_text(num) || !detail::is_canonical_integer_text(den))
        return std::nullopt;
    const Integer n(num), d(den);
    if (d <= 1) return std::nullopt;          // "p/1" and "p/0" are not canonical
    if (n == 0) return std::nullopt;          // zero is written "0"
    if (gcd(Integer(boost::multiprecision::abs(n)), d) != 1) return std::nullopt;
    return Rational(n, d);
}

}  // namespace polish
