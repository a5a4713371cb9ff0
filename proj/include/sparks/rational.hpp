#pragma once

#include "sparks/diagnostics.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

namespace sparks {

// Exact rational on 64-bit numerator/denominator with 128-bit intermediates.
// Solver outputs are decimal literals, so denominators stay powers of ten and
// additions never grow the denominator past the finest decimal seen.
struct rat {
    long long num = 0;
    long long den = 1;

    rat() = default;
    rat(long long n) : num(n), den(1) {}
    rat(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0)
            fail(error_kind::internal, "rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static long long narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            fail(error_kind::internal, "rational overflow");
        return static_cast<long long>(v);
    }

    static rat make(__int128 n, __int128 d) {
        if (d == 0)
            fail(error_kind::internal, "rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        rat r;
        r.num = narrow(n);
        r.den = narrow(d);
        return r;
    }

    friend rat operator+(const rat& x, const rat& y) {
        return make(static_cast<__int128>(x.num) * y.den + static_cast<__int128>(y.num) * x.den,
                    static_cast<__int128>(x.den) * y.den);
    }
    friend rat operator-(const rat& x, const rat& y) {
        return make(static_cast<__int128>(x.num) * y.den - static_cast<__int128>(y.num) * x.den,
                    static_cast<__int128>(x.den) * y.den);
    }
    friend rat operator*(const rat& x, const rat& y) {
        return make(static_cast<__int128>(x.num) * y.num, static_cast<__int128>(x.den) * y.den);
    }
    friend rat operator/(const rat& x, const rat& y) {
        if (y.num == 0)
            fail(error_kind::internal, "rational division by zero");
        return make(static_cast<__int128>(x.num) * y.den, static_cast<__int128>(x.den) * y.num);
    }
    rat& operator+=(const rat& y) { return *this = *this + y; }
    rat& operator-=(const rat& y) { return *this = *this - y; }

    friend bool operator==(const rat& x, const rat& y) { return x.num == y.num && x.den == y.den; }
    friend bool operator!=(const rat& x, const rat& y) { return !(x == y); }
    friend bool operator<(const rat& x, const rat& y) {
        return static_cast<__int128>(x.num) * y.den < static_cast<__int128>(y.num) * x.den;
    }
    friend bool operator<=(const rat& x, const rat& y) { return !(y < x); }
    friend bool operator>(const rat& x, const rat& y) { return y < x; }
    friend bool operator>=(const rat& x, const rat& y) { return !(x < y); }

    bool is_integer() const { return den == 1; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string to_string() const {
        if (den == 1)
            return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Parses integers, fractions ("1/2"), and decimal literals ("0.5", "-3.25e-2")
// exactly. Exponents are applied as powers of ten.
bool parse_rat(std::string_view s, rat& out);

} // namespace sparks
