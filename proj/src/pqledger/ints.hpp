#pragma once

#include <cstdint>
#include <cstddef>
#include <string>

namespace pqledger {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// 256-bit unsigned, little-endian halves. Only the handful of operations the
// Barrett reducer and norm accounting need.
struct U256 {
    u128 lo = 0;
    u128 hi = 0;
};

inline U256 mul_wide(u128 a, u128 b) {
    const u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
    const u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
    const u128 p00 = static_cast<u128>(a0) * b0;
    const u128 p01 = static_cast<u128>(a0) * b1;
    const u128 p10 = static_cast<u128>(a1) * b0;
    const u128 p11 = static_cast<u128>(a1) * b1;
    u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
    U256 r;
    r.lo = (mid << 64) | static_cast<u64>(p00);
    r.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    return r;
}

// floor(a*b / 2^128)
inline u128 mulhi(u128 a, u128 b) { return mul_wide(a, b).hi; }

inline U256 add256(U256 a, U256 b) {
    U256 r;
    r.lo = a.lo + b.lo;
    r.hi = a.hi + b.hi + (r.lo < a.lo ? 1 : 0);
    return r;
}

inline U256 sub256(U256 a, U256 b) {
    U256 r;
    r.lo = a.lo - b.lo;
    r.hi = a.hi - b.hi - (a.lo < b.lo ? 1 : 0);
    return r;
}

inline int cmp256(U256 a, U256 b) {
    if (a.hi != b.hi) return a.hi < b.hi ? -1 : 1;
    if (a.lo != b.lo) return a.lo < b.lo ? -1 : 1;
    return 0;
}

inline U256 shr256(U256 a, unsigned s) {
    U256 r;
    if (s == 0) return a;
    if (s < 128) {
        r.lo = (a.lo >> s) | (a.hi << (128 - s));
        r.hi = a.hi >> s;
    } else {
        r.lo = a.hi >> (s - 128);
        r.hi = 0;
    }
    return r;
}

inline U256 shl256(U256 a, unsigned s) {
    U256 r;
    if (s == 0) return a;
    if (s < 128) {
        r.hi = (a.hi << s) | (a.lo >> (128 - s));
        r.lo = a.lo << s;
    } else {
        r.hi = a.lo << (s - 128);
        r.lo = 0;
    }
    return r;
}

// floor(x / d) for d != 0 via binary long division. Setup-time only.
u128 div256_128(U256 x, u128 d, u128* rem = nullptr);

inline U256 mul256_u64(U256 a, u64 m) {
    const U256 lo = mul_wide(a.lo, m);
    U256 r;
    r.lo = lo.lo;
    r.hi = a.hi * m + lo.hi;
    return r;
}

inline unsigned bit_width_u128(u128 x) {
    unsigned n = 0;
    while (x) { x >>= 1; ++n; }
    return n;
}

std::string to_decimal(u128 x);
bool from_decimal(const std::string& s, u128& out);
std::string to_decimal_i128(i128 x);

inline u128 abs_i128(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

}  // namespace pqledger
