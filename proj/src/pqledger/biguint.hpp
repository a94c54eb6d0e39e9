#pragma once

#include "pqledger/ints.hpp"

#include <vector>

namespace pqledger {

// Minimal arbitrary-precision unsigned integer (base 2^64 limbs, little
// endian). Used for the exact binomial tail that fixes the challenge weight
// bound and for a naive multiplication oracle in tests.
class BigUint {
public:
    BigUint() = default;
    BigUint(u64 v) { if (v) limbs_.push_back(v); }  // NOLINT(google-explicit-constructor)
    static BigUint from_u128(u128 v);
    static BigUint pow2(unsigned k);

    bool is_zero() const { return limbs_.empty(); }
    size_t limb_count() const { return limbs_.size(); }

    BigUint& add(const BigUint& o);
    BigUint& sub(const BigUint& o);  // requires *this >= o
    BigUint& mul_small(u64 m);
    BigUint& div_small(u64 d, u64* rem = nullptr);
    BigUint& shl(unsigned bits);

    static BigUint mul(const BigUint& a, const BigUint& b);

    int cmp(const BigUint& o) const;
    bool operator<(const BigUint& o) const { return cmp(o) < 0; }
    bool operator<=(const BigUint& o) const { return cmp(o) <= 0; }
    bool operator==(const BigUint& o) const { return cmp(o) == 0; }

    unsigned bit_length() const;
    u128 to_u128() const;  // low 128 bits
    std::string to_string() const;

private:
    void trim();
    std::vector<u64> limbs_;
};

}  // namespace pqledger
