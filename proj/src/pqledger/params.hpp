#pragma once

#include "pqledger/ints.hpp"

#include <optional>
#include <string>

namespace pqledger {

// Exact squared standard deviations for one protocol role. Norm checks
// compare squared integers, the samplers use the double approximation.
struct SigmaSq {
    u128 s1 = 0;
    u128 s2 = 0;
    u128 s3 = 0;
};

// Every scheme-level constant lives here. Immutable after construction and
// freely shared across threads.
struct ParamSet {
    std::string name;
    u128 q = 0;          // prime modulus, q = 2l+1 (mod 4l)
    u128 sqrt_q = 0;     // nearest integer to sqrt(q)
    u32 d = 0;           // ring degree, power of two
    u32 l = 0;           // number of NTT slots (X^d+1 splits into l factors)
    u32 kappa = 0;       // MSIS rank
    u32 lambda = 0;      // MLWE rank
    u32 n_msg = 3;       // message rows of a transaction commitment
    u32 omega = 0;       // challenge l1-norm bound
    u32 value_bits = 0;  // range-proof bit width
    u32 beta_bits = 0;   // per-asset bit width in compact mode
    u32 rej_m = 3;       // rejection-sampling repetition bound M
    u32 proj_rows = 256; // approximate-range projection rows
    u32 col_budget = 64; // transactions per column the noise budgets are sized for
    u32 poe_sigma_cols = 1;  // column factor baked into the equivalence-proof s3

    // Per-protocol Gaussian widths (exact squares).
    SigmaSq poc;
    SigmaSq poe;
    SigmaSq pokw;
    SigmaSq poa;   // only s1 used
    SigmaSq poac;
    SigmaSq poe2;  // only s1 used

    u32 width() const { return kappa + lambda + n_msg; }          // randomness length
    u32 key_width() const { return 2 * (2 * kappa + lambda + n_msg); }  // s1|e1|s2|e2
    u32 proj_k() const { return proj_rows / 2; }                  // the k of sqrt(2k)*s3

    // Balance-proof sigma^2 for a sum of n_parties randomness vectors.
    u128 pob_sigma_sq(u32 n_parties) const;

    std::string to_text() const;
    static std::optional<ParamSet> from_text(const std::string& text, std::string* err = nullptr);
};

// The production parameter set: q ~ 2^100, d = 256, l = 128, kappa = lambda = 16.
const ParamSet& paper_params();

// Reduced set for fast test runs: q < 2^62 (single machine word), d = 64.
const ParamSet& desk_params();

// Checks every ParamSet invariant; returns the name of the first violated
// invariant, or an empty optional when the set is valid.
std::optional<std::string> validate(const ParamSet& p);

// Exact binomial tail: the smallest w such that a d-coefficient ternary
// challenge with P(0)=1/2 has Pr(||c||_1 <= w) >= 1 - 2^-128.
u32 challenge_weight_bound(u32 d);

// Deterministic Miller-Rabin over a fixed base set (first 40 primes).
bool is_prime_u128(u128 n);

// Smallest prime p >= start with p = 2l+1 (mod 4l).
u128 find_splitting_prime(u128 start, u32 l);

u128 isqrt_u128(u128 n);       // floor(sqrt(n))
u128 round_sqrt_u128(u128 n);  // nearest integer to sqrt(n)

}  // namespace pqledger
