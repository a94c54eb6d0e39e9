#include "pqledger/fpexp.hpp"

namespace pqledger {

namespace {

constexpr u128 kSat = ~static_cast<u128>(0);  // ~1.0 in Q0.128
constexpr int kHornerTerms = 40;              // 1/40! < 2^-159

// e^{-f} for f in [0,1) given as Q0.128, by alternating-series Horner:
// e^{-f} = 1 - f*(1 - (f/2)*(1 - (f/3)*(...))).
u128 exp_neg_frac(u128 f) {
    if (f == 0) return kSat;
    u128 t = kSat;
    for (int n = kHornerTerms; n >= 2; --n) t = kSat - mulhi(f / static_cast<u128>(n), t);
    return kSat - mulhi(f, t);
}

u128 exp_neg_one() {
    static const u128 e1 = [] {
        const u128 half = static_cast<u128>(1) << 127;  // 0.5 in Q0.128
        const u128 eh = exp_neg_frac(half);
        return mulhi(eh, eh);
    }();
    return e1;
}

}  // namespace

u128 exp_neg_q128(u128 num, u128 den) {
    const u128 k = num / den;
    if (k >= 96) return 0;  // e^-96 < 2^-138
    const u128 rem = num % den;
    // frac = rem/den in Q0.128
    const u128 frac = div256_128(shl256(U256{rem, 0}, 128), den);
    u128 acc = exp_neg_frac(frac);
    // multiply by e^-k via square-and-multiply on e^-1
    u128 base = exp_neg_one();
    u128 kk = k;
    while (kk) {
        if (kk & 1) acc = mulhi(acc, base);
        base = mulhi(base, base);
        kk >>= 1;
    }
    return acc;
}

bool rej_decision(i128 n, u128 s, u128 u) {
    constexpr u128 kThird = kSat / 3;  // floor((2^128-1)/3), exact since 3 | 2^128-1
    if (n >= 0) {
        // acceptance probability (1/3)e^{n/s} >= 1/3
        if (static_cast<u128>(n) >= 2 * s) return true;  // e^2 > 3, probability 1
        const u128 e = exp_neg_q128(static_cast<u128>(n), s);
        // u < e^{n/s}/3  <=>  3*u*e^{-n/s} < 1
        return mulhi(u, e) <= kThird;
    }
    const u128 e = exp_neg_q128(static_cast<u128>(-n), s);
    // u < e/3
    if (u > kThird) return false;
    return 3 * u < e;
}

}  // namespace pqledger
