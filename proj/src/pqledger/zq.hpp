#pragma once

#include "pqledger/ints.hpp"

#include <cassert>

namespace pqledger {

// Arithmetic modulo an odd prime q < 2^125. Multiplication uses Barrett
// reduction on the full 256-bit product; a fast path covers q < 2^63.
class Zq {
public:
    Zq() = default;
    explicit Zq(u128 q) { init(q); }

    void init(u128 q) {
        assert(q >= 3 && (q & 1) == 1);
        q_ = q;
        bits_ = bit_width_u128(q);
        assert(bits_ <= 125);
        half_ = (q - 1) / 2;
        small_ = bits_ <= 63;
        // mu = floor(2^(2*bits) / q)
        U256 pow{0, 0};
        if (2 * bits_ >= 128)
            pow.hi = static_cast<u128>(1) << (2 * bits_ - 128);
        else
            pow.lo = static_cast<u128>(1) << (2 * bits_);
        mu_ = div256_128(pow, q_);
    }

    u128 q() const { return q_; }
    unsigned bits() const { return bits_; }
    u128 half() const { return half_; }

    u128 add(u128 a, u128 b) const {
        u128 r = a + b;
        if (r >= q_) r -= q_;
        return r;
    }
    u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + q_ - b; }
    u128 neg(u128 a) const { return a == 0 ? 0 : q_ - a; }

    u128 mul(u128 a, u128 b) const {
        if (small_) return (a * b) % q_;
        return reduce(mul_wide(a, b));
    }

    // Reduce x < 2^(2*bits) mod q.
    u128 reduce(U256 x) const {
        const U256 t = shr256(x, bits_ - 1);
        const U256 tm = mul_wide(t.lo, mu_);
        const U256 m = shr256(tm, bits_ + 1);
        // m <= floor(x/q) and floor(x/q) - m <= 2, so the remainder fits u128.
        const U256 r = sub256(x, mul_wide(m.lo, q_));
        u128 v = r.lo;
        while (v >= q_) v -= q_;
        return v;
    }

    u128 reduce_u128(u128 x) const {
        if (x < q_) return x;
        if (small_) return x % q_;
        return reduce(U256{x, 0});
    }

    u128 pow(u128 base, u128 e) const {
        u128 r = 1;
        base = reduce_u128(base);
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    u128 inv(u128 a) const { return pow(a, q_ - 2); }

    // Centered representative in [-(q-1)/2, (q-1)/2].
    i128 center(u128 a) const {
        return a <= half_ ? static_cast<i128>(a) : static_cast<i128>(a) - static_cast<i128>(q_);
    }

    u128 from_centered(i128 v) const {
        i128 m = v % static_cast<i128>(q_);
        if (m < 0) m += static_cast<i128>(q_);
        return static_cast<u128>(m);
    }

    u128 from_i64(i64 v) const { return from_centered(static_cast<i128>(v)); }

private:
    u128 q_ = 0;
    u128 mu_ = 0;
    u128 half_ = 0;
    unsigned bits_ = 0;
    bool small_ = false;
};

// Centered representative of r modulo an arbitrary odd or even modulus s,
// in the interval [-floor(s/2), ceil(s/2)-1] shifted so |result| <= s/2.
inline i128 mod_pm(i128 r, u128 s) {
    i128 m = r % static_cast<i128>(s);
    if (m < 0) m += static_cast<i128>(s);
    if (static_cast<u128>(m) >= (s + 1) / 2 && static_cast<u128>(m) * 2 > s)
        m -= static_cast<i128>(s);
    return m;
}

}  // namespace pqledger
