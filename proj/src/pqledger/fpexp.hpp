#pragma once

#include "pqledger/ints.hpp"

namespace pqledger {

// exp(-num/den) in Q0.128 fixed point (1.0 saturates to 2^128-1).
// Evaluated entirely in 128-bit integer arithmetic: a 40-term Horner series
// for the fractional part and square-and-multiply for the integer part.
// Absolute error is below 2^-120.
u128 exp_neg_q128(u128 num, u128 den);

// Decision function used by rejection sampling: given the exact exponent
// argument (B - 2A)/S with A = <z,v>, B = |v|^2, S = 2*sigma^2 and a uniform
// 128-bit draw u, accept iff u < (1/M) * exp((B - 2A)/S), M = 3.
bool rej_decision(i128 b_minus_2a, u128 s, u128 u);

}  // namespace pqledger
