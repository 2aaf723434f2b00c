#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace divspec {

using int128 = __int128;

std::string to_string_int128(int128 v);

/// Reduced fraction on 128-bit integers. Denominators stay small here
/// (table limits, moduli, lcms of a few small integers), so no bignum.
struct Rat {
    int128 num = 0;
    int128 den = 1;  // > 0, gcd(|num|, den) == 1

    static Rat of(int128 n, int128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rat r; r.num = n; r.den = d; return r;
    }
    static Rat integer(int128 n) { Rat r; r.num = n; r.den = 1; return r; }

    Rat operator+(const Rat& o) const { return of(num * o.den + o.num * den, den * o.den); }
    Rat operator-(const Rat& o) const { return of(num * o.den - o.num * den, den * o.den); }
    Rat operator*(const Rat& o) const { return of(num * o.num, den * o.den); }
    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const {
        if (den == 1) return to_string_int128(num);
        return to_string_int128(num) + "/" + to_string_int128(den);
    }

    static int128 gcd128(int128 a, int128 b) {
        while (b != 0) { int128 t = a % b; a = b; b = t; }
        return a;
    }
};

inline std::string to_string_int128(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) { s += static_cast<char>('0' + static_cast<int>(u % 10)); u /= 10; }
    if (neg) s += '-';
    for (size_t i = 0, j = s.size() - 1; i < j; ++i, --j) std::swap(s[i], s[j]);
    return s;
}

}  // namespace divspec
