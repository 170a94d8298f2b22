#pragma once

#include <string>

#include "paraspin/checked_int.hpp"
#include "paraspin/errors.hpp"

namespace paraspin {

// Exact rational number with 64-bit numerator and denominator, always kept
// normalized (gcd 1, denominator positive).  Intermediate products go through
// 128 bits and are range-checked on the way back, so class-number sums and
// coefficient averages either come out exact or fail loudly.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n) : num(n), den(1) {} // NOLINT(google-explicit-constructor)
    Rational(i64 n, i64 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw InvalidInputError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i64 g = gcd64(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static Rational from_i128(i128 n, i128 d) {
        if (d == 0) throw InvalidInputError("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 a = n < 0 ? -n : n, b = d;
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        return Rational(narrow_to_i64(n), narrow_to_i64(d));
    }

    Rational operator+(const Rational& o) const {
        return from_i128(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                         checked_mul(den, o.den));
    }
    Rational operator-(const Rational& o) const {
        return from_i128(checked_sub(checked_mul(num, o.den), checked_mul(o.num, den)),
                         checked_mul(den, o.den));
    }
    Rational operator*(const Rational& o) const {
        return from_i128(checked_mul(num, o.num), checked_mul(den, o.den));
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw InvalidInputError("rational division by zero");
        return from_i128(checked_mul(num, o.den), checked_mul(den, o.num));
    }
    Rational operator-() const { return Rational(-num, den); }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Parses "n" or "n/d"; whitespace is not tolerated (CSV fields are
    // expected to be pre-trimmed by the reader).
    static Rational parse(const std::string& s);
};

inline Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw InvalidInputError("empty rational literal");
    std::size_t slash = s.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            i64 n = std::stoll(s, &used);
            if (used != s.size()) throw InvalidInputError("trailing junk in rational literal: " + s);
            return Rational(n);
        }
        i64 n = std::stoll(s.substr(0, slash), &used);
        if (used != slash) throw InvalidInputError("trailing junk in rational literal: " + s);
        std::string dpart = s.substr(slash + 1);
        i64 d = std::stoll(dpart, &used);
        if (used != dpart.size()) throw InvalidInputError("trailing junk in rational literal: " + s);
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw InvalidInputError("malformed rational literal: " + s);
    } catch (const std::out_of_range&) {
        throw InvalidInputError("rational literal out of range: " + s);
    }
}

} // namespace paraspin
