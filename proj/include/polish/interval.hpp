#pragma once

#include <polish/rational.hpp>

#include <stdexcept>
#include <utility>

namespace polish {

/// Closed rational interval, the working representation for every quantity
/// that is not itself rational. All operations round outward.
struct Interval {
    Rational lo, hi;

    Interval() = default;
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    }
    static Interval point(Rational q) { return Interval(q, q); }

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return Interval(a.lo + b.lo, a.hi + b.hi);
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return Interval(a.lo - b.hi, a.hi - b.lo);
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        Rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
        Rational lo = c1, hi = c1;
        for (const Rational* c : {&c2, &c3, &c4}) {
            if (*c < lo) lo = *c;
            if (*c > hi) hi = *c;
        }
        return Interval(lo, hi);
    }
};

inline Interval abs(const Interval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return Interval(-a.hi, -a.lo);
    Rational m = a.hi > -a.lo ? a.hi : -a.lo;
    return Interval(Rational(0), m);
}

/// Enclosure of sqrt(x) of width <= 2^-k, by binary bisection: the integer
/// square root of x scaled to 2k+2 fractional bits gives dyadic endpoints.
inline Interval sqrt_enclosure(const Rational& x, Precision k) {
    if (x < 0) throw std::invalid_argument("sqrt_enclosure: negative argument");
    if (x == 0) return Interval::point(Rational(0));
    const unsigned t = k.k + 1;
    // floor(sqrt(x * 4^t)) without rounding: scale numerator by den * 4^t.
    Integer scaled = (numerator(x) * denominator(x)) << (2 * t);
    Integer root = sqrt(scaled);  // floor integer square root
    Rational lo(root, denominator(x) << t);
    Rational hi(root + 1, denominator(x) << t);
    return Interval(lo, hi);
}

/// Quadratic irrational a + b*sqrt(n), the offset descriptors accepted by
/// the shifted-line generator.
struct QuadIrrational {
    Rational a;
    Rational b;
    unsigned long long n = 0;  // radicand

    bool is_rational() const {
        if (b == 0) return true;
        Integer r = sqrt(Integer(n));
        return r * r == n;
    }

    Rational exact_value() const {
        Integer r = sqrt(Integer(n));
        return a + b * Rational(r);
    }

    /// Enclosure of width <= 2^-k.
    Interval enclose(Precision k) const {
        if (is_rational()) return Interval::point(exact_value());
        long scale = b == 0 ? 0 : ceil_log2(polish::abs(b));
        unsigned extra = scale > 0 ? static_cast<unsigned>(scale) : 0u;
        Interval s = sqrt_enclosure(Rational(n), Precision(k.k + extra + 1));
        Interval bs = Interval::point(b) * s;
        return Interval::point(a) + bs;
    }
};

}  // namespace polish
