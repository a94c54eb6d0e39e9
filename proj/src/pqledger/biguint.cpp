#include "pqledger/biguint.hpp"

namespace pqledger {

BigUint BigUint::from_u128(u128 v) {
    BigUint r;
    if (static_cast<u64>(v)) r.limbs_.push_back(static_cast<u64>(v));
    if (v >> 64) {
        r.limbs_.resize(2, 0);
        r.limbs_[1] = static_cast<u64>(v >> 64);
    }
    return r;
}

BigUint BigUint::pow2(unsigned k) {
    BigUint r;
    r.limbs_.resize(k / 64 + 1, 0);
    r.limbs_.back() = static_cast<u64>(1) << (k % 64);
    return r;
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::add(const BigUint& o) {
    if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    u128 carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        u128 s = carry + limbs_[i];
        if (i < o.limbs_.size()) s += o.limbs_[i];
        limbs_[i] = static_cast<u64>(s);
        carry = s >> 64;
    }
    if (carry) limbs_.push_back(static_cast<u64>(carry));
    return *this;
}

BigUint& BigUint::sub(const BigUint& o) {
    i128 borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        i128 s = static_cast<i128>(limbs_[i]) - borrow;
        if (i < o.limbs_.size()) s -= o.limbs_[i];
        if (s < 0) {
            s += (static_cast<i128>(1) << 64);
            borrow = 1;
        } else {
            borrow = 0;
        }
        limbs_[i] = static_cast<u64>(s);
    }
    trim();
    return *this;
}

BigUint& BigUint::mul_small(u64 m) {
    u128 carry = 0;
    for (auto& limb : limbs_) {
        u128 p = static_cast<u128>(limb) * m + carry;
        limb = static_cast<u64>(p);
        carry = p >> 64;
    }
    if (carry) limbs_.push_back(static_cast<u64>(carry));
    trim();
    return *this;
}

BigUint& BigUint::div_small(u64 d, u64* rem) {
    u128 r = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        u128 cur = (r << 64) | limbs_[i];
        limbs_[i] = static_cast<u64>(cur / d);
        r = cur % d;
    }
    if (rem) *rem = static_cast<u64>(r);
    trim();
    return *this;
}

BigUint& BigUint::shl(unsigned bits) {
    if (is_zero() || bits == 0) return *this;
    const unsigned words = bits / 64, rest = bits % 64;
    limbs_.insert(limbs_.begin(), words, 0);
    if (rest) {
        u64 carry = 0;
        for (size_t i = words; i < limbs_.size(); ++i) {
            u64 nc = limbs_[i] >> (64 - rest);
            limbs_[i] = (limbs_[i] << rest) | carry;
            carry = nc;
        }
        if (carry) limbs_.push_back(carry);
    }
    return *this;
}

BigUint BigUint::mul(const BigUint& a, const BigUint& b) {
    BigUint r;
    if (a.is_zero() || b.is_zero()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        u128 carry = 0;
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            u128 cur = static_cast<u128>(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<u64>(cur);
            carry = cur >> 64;
        }
        size_t k = i + b.limbs_.size();
        while (carry) {
            u128 cur = static_cast<u128>(r.limbs_[k]) + carry;
            r.limbs_[k] = static_cast<u64>(cur);
            carry = cur >> 64;
            ++k;
        }
    }
    r.trim();
    return r;
}

int BigUint::cmp(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    }
    return 0;
}

unsigned BigUint::bit_length() const {
    if (is_zero()) return 0;
    unsigned n = static_cast<unsigned>((limbs_.size() - 1) * 64);
    u64 top = limbs_.back();
    while (top) { top >>= 1; ++n; }
    return n;
}

u128 BigUint::to_u128() const {
    u128 v = 0;
    if (!limbs_.empty()) v = limbs_[0];
    if (limbs_.size() > 1) v |= static_cast<u128>(limbs_[1]) << 64;
    return v;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    BigUint t = *this;
    std::string s;
    while (!t.is_zero()) {
        u64 r = 0;
        t.div_small(10, &r);
        s.push_back(static_cast<char>('0' + r));
    }
    return std::string(s.rbegin(), s.rend());
}

}  // namespace pqledger
