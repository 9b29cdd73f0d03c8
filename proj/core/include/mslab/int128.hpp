#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "mslab/errors.hpp"

namespace mslab {

using int128 = __int128;
using uint128 = unsigned __int128;

// Overflow-checked arithmetic. 128-bit overflow is unreachable for every
// summatory function in range, but checked means checked.
inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw ValidationError("int128 addition overflow");
    return r;
}

inline int128 checked_sub(int128 a, int128 b) {
    int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw ValidationError("int128 subtraction overflow");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ValidationError("int128 multiplication overflow");
    return r;
}

inline std::string to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    uint128 u = neg ? uint128(-(v + 1)) + 1 : uint128(v);
    char buf[48];
    int n = 0;
    while (u != 0) {
        buf[n++] = char('0' + int(u % 10));
        u /= 10;
    }
    std::string s;
    if (neg) s.push_back('-');
    while (n > 0) s.push_back(buf[--n]);
    return s;
}

inline int128 parse_int128(std::string_view s) {
    if (s.empty()) throw ValidationError("empty integer literal");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw ValidationError("bad integer literal");
    uint128 u = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw ValidationError(std::string("bad digit in integer literal: ") + c);
        uint128 next = u * 10 + uint128(c - '0');
        if (next < u) throw ValidationError("integer literal overflows int128");
        u = next;
    }
    if (!neg && u > uint128(~uint128(0) >> 1)) throw ValidationError("integer literal overflows int128");
    return neg ? -int128(u) : int128(u);
}

inline double to_double(int128 v) { return double(v); }

inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = uint64_t(std::sqrt(double(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

}  // namespace mslab
