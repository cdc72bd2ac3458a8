#ifndef CL3_RATIONAL_HPP
#define CL3_RATIONAL_HPP

// Exact rationals over 64-bit integers, always in lowest terms with den > 0.

#include <numeric>
#include <string>

#include "cl3/arith.hpp"
#include "cl3/error.hpp"

namespace cl3 {

struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n) : num(n), den(1) {}
    Rational(i64 n, i64 d) : num(n), den(d) {
        if (d == 0) fail(ErrorCode::InvalidArgument, "Rational: zero denominator");
        normalize();
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

    friend Rational operator+(const Rational& x, const Rational& y) { return from128(i128(x.num) * y.den + i128(y.num) * x.den, i128(x.den) * y.den); }
    friend Rational operator-(const Rational& x, const Rational& y) { return from128(i128(x.num) * y.den - i128(y.num) * x.den, i128(x.den) * y.den); }
    friend Rational operator*(const Rational& x, const Rational& y) { return from128(i128(x.num) * y.num, i128(x.den) * y.den); }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num == 0) fail(ErrorCode::InvalidArgument, "Rational: division by zero");
        return from128(i128(x.num) * y.den, i128(x.den) * y.num);
    }
    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    friend bool operator==(const Rational& x, const Rational& y) { return x.num == y.num && x.den == y.den; }
    friend bool operator<(const Rational& x, const Rational& y) { return i128(x.num) * y.den < i128(y.num) * x.den; }

    /// b^e for integer e (negative allowed).
    static Rational power(i64 b, int e) {
        Rational r(1), base(b);
        if (e < 0) {
            base = Rational(1) / base;
            e = -e;
        }
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    }

private:
    static Rational from128(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 a = n < 0 ? -n : n, b = d;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        const i128 lim = static_cast<i128>(INT64_MAX);
        if (n > lim || n < -lim || d > lim) fail(ErrorCode::PrecisionFailure, "Rational: overflow");
        Rational r;
        r.num = static_cast<i64>(n);
        r.den = static_cast<i64>(d);
        return r;
    }
    void normalize() { *this = from128(num, den); }
};

}  // namespace cl3

#endif
