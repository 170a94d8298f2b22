#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "paraspin/errors.hpp"

namespace paraspin {

using i64 = std::int64_t;
using i128 = __int128;

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

inline i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit subtraction overflow");
    return r;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

inline i64 checked_add64(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("64-bit addition overflow");
    return r;
}

inline i64 checked_sub64(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("64-bit subtraction overflow");
    return r;
}

inline i64 checked_mul64(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit multiplication overflow");
    return r;
}

// Narrow a 128-bit value back to 64 bits, throwing if it does not fit.
inline i64 narrow_to_i64(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw OverflowError("value does not fit in 64 bits");
    return static_cast<i64>(v);
}

inline std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // Avoid UB on the most negative value by peeling digits from the
    // unsigned magnitude.
    unsigned __int128 u = neg ? (~static_cast<unsigned __int128>(v) + 1)
                              : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    for (std::size_t i = 0, j = s.size() - 1; i < j; ++i, --j) std::swap(s[i], s[j]);
    return s;
}

// Floor of sqrt for non-negative 64-bit integers, exact.
inline i64 isqrt64(i64 n) {
    if (n < 0) throw InvalidInputError("isqrt of negative number");
    if (n == 0) return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && i128(r) * r > n) --r;
    while (i128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline i64 gcd64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace paraspin
