#pragma once

#include "pqledger/ring.hpp"
#include "pqledger/sampling.hpp"

#include <array>
#include <optional>

namespace pqledger {

// Base commitment rows shared by every participant: A is kappa x n, B is a
// single row of width n, with n = kappa + lambda + 3.
struct TxKeys {
    NttMat A;
    std::vector<NttVec> B;
};

struct SecretKey {
    RingVec s1, e1, s2, e2;  // s: kappa elems, e: n elems, all ternary
};

struct ParticipantKey {
    RingVec pk1, pk2;  // Aᵀ s_j + e_j, length n
    std::vector<NttVec> pk1_ntt, pk2_ntt;
};

struct KeyPair {
    SecretKey sk;
    ParticipantKey pk;
};

// The 4-row extractable transaction commitment
//   (A r, pk1ᵀ r + v, pk2ᵀ r + sqrt(q) v, Bᵀ r + v).
struct Commitment {
    RingVec c0;  // kappa rows
    RingElem c1, c2, c3;
};

// Auxiliary keys for the consistency proof.
struct PocKeys {
    NttMat a1, a2;            // kappa x n each
    std::vector<NttVec> b1;   // n
    NttMat bc_p;              // (proj_rows/d) x n
    std::vector<NttVec> bc_pp;  // n
};

// Auxiliary keys for the equivalence / key well-formedness proofs.
struct PoeKeys {
    NttMat a3;                 // kappa x key_width
    NttMat a4;                 // kappa x n
    NttMat be_p;               // (proj_rows/d) x n
    std::vector<NttVec> be_pp;  // n
};

// Range-proof rows.
struct PoaKeys {
    std::vector<NttVec> a_bin, a_bin_p, a_g;  // each width n
};

// Compact multi-asset range-proof rows, width n + beta.
struct PoacKeys {
    NttMat a_a;                                // kappa x (n+beta)
    std::vector<std::vector<NttVec>> b_bin;    // beta rows of width n+beta
    NttMat b_y2;                               // (proj_rows/d) x (n+beta)
    std::vector<NttVec> b_g, b_g1;             // width n+beta
};

struct PublicParams {
    ParamSet ps;
    std::array<u8, 32> seed{};
    TxKeys tx;
    PocKeys poc;
    PoeKeys poe;
    PoaKeys poa;
    PoacKeys poac;
};

// Expands every commitment key deterministically from a 32-byte public seed.
PublicParams expand_public_params(const RingCtx& ctx, const std::array<u8, 32>& seed);

KeyPair keygen(const RingCtx& ctx, const TxKeys& tx, Rng& rng);

Commitment commit_tx(const RingCtx& ctx, const TxKeys& tx, const ParticipantKey& pk,
                     const RingElem& v, const RingVec& r);

// Plain BDLOP: rows (A r, b_iᵀ r + m_i).
RingVec commit_bdlop(const RingCtx& ctx, const NttMat& a,
                     const std::vector<std::vector<NttVec>>& b_rows, const RingVec& msgs,
                     const RingVec& r);

// ABDLOP: rows (A1 r + A2 s, b_iᵀ s + m_i).
RingVec commit_abdlop(const RingCtx& ctx, const NttMat& a1, const NttMat& a2,
                      const std::vector<std::vector<NttVec>>& b_rows, const RingVec& r,
                      const RingVec& s, const RingVec& msgs);

Commitment sum_commitments(const RingCtx& ctx, const std::vector<const Commitment*>& coms);
void add_commitment(const RingCtx& ctx, Commitment& acc, const Commitment& c);

void encode_commitment(const RingCtx& ctx, const Commitment& c, ByteWriter& w);
Commitment decode_commitment(const RingCtx& ctx, ByteReader& r);

struct WeakOpeningResult {
    bool ok = false;
    std::string failed;  // name of the first violated bullet
};

// The four bullets of the BDLOP weak-opening definition. `sigma_sq` is the
// squared Gaussian width of the protocol the opening came from; `dim` the
// randomness length in ring elements.
WeakOpeningResult check_weak_opening_bdlop(const RingCtx& ctx, const NttMat& a,
                                           const std::vector<std::vector<NttVec>>& b_rows,
                                           const RingVec& com0, const RingVec& com_msgs,
                                           const RingElem& cbar, const RingVec& r_star,
                                           const RingVec& m_star, u128 sigma_sq);

// The five bullets of the ABDLOP weak-opening definition.
WeakOpeningResult check_weak_opening_abdlop(const RingCtx& ctx, const NttMat& a1,
                                            const NttMat& a2,
                                            const std::vector<std::vector<NttVec>>& b_rows,
                                            const RingVec& com0, const RingVec& com_msgs,
                                            const RingElem& cbar, const RingVec& r_star,
                                            const RingVec& s_star, const RingVec& m_star,
                                            u128 sigma1_sq, u128 sigma2_sq);

enum class ExtractStatus { ok, noise_budget, quotient_budget };

// Value extraction from a (verified) commitment using the secret key. Fails
// when the recovered noise exceeds the parameter set's column budget.
ExtractStatus extract(const RingCtx& ctx, const Commitment& com, const SecretKey& sk,
                      RingElem& v_out);

const char* extract_status_name(ExtractStatus s);

}  // namespace pqledger
