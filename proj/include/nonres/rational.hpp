#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace nonres {

// Floor division with b > 0 (rounds toward minus infinity).
inline int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Exact rational with a positive denominator, reduced on construction.
// Comparisons cross-multiply in 128 bits, so interval endpoint tests never
// touch floating point.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const int64_t g = std::gcd(n < 0 ? -n : n, d);
        num = g ? n / g : n;
        den = g ? d / g : d;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
    }

    // Largest integer strictly below, and smallest integer strictly above.
    int64_t floor_strict_below() const { return floor_div(num - 1, den); }
    int64_t ceil_strict_above() const { return floor_div(num, den) + 1; }
    int64_t floor() const { return floor_div(num, den); }
    int64_t ceil() const { return -floor_div(-num, den); }
};

}  // namespace nonres
