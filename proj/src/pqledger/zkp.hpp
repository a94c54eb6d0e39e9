#pragma once

#include "pqledger/commit.hpp"

#include <functional>
#include <optional>

namespace pqledger {

struct VerifyResult {
    bool ok = false;
    std::string failed;  // identifier of the first failed check, e.g. "poc:c"
    static VerifyResult pass() { return {true, ""}; }
    static VerifyResult fail(std::string why) { return {false, std::move(why)}; }
};

enum class ProofKind : u8 {
    PoB = 1,
    PoC = 2,
    PoE = 3,
    PoKW = 4,
    PoA = 5,
    PoAc = 6,
    PoE2 = 7,
    Or = 8,
};

const char* proof_kind_name(ProofKind k);

// Fiat-Shamir challenge oracle: a running SHAKE256 absorb with labeled
// derivations. Every challenge is a pure function of everything absorbed
// before it. The override hook lets interactive tests pin specific
// challenges while keeping message binding intact.
class FsOracle {
public:
    explicit FsOracle(const std::string& domain);

    void absorb(const Bytes& b);
    void absorb_raw(const void* p, size_t n);
    void absorb_elem(const RingCtx& ctx, const RingElem& e);
    void absorb_vec(const RingCtx& ctx, const RingVec& v);
    void absorb_ints(const std::vector<i64>& v);

    std::array<u8, 32> seed(const std::string& label);
    RingElem challenge(const RingCtx& ctx, bool symmetric = false);
    std::vector<u128> scalars(const RingCtx& ctx, size_t n, const std::string& label);

    std::function<std::optional<RingElem>(int)> challenge_override;

private:
    Shake256 st_;
    int challenge_calls_ = 0;
};

RingElem expand_challenge(const RingCtx& ctx, const std::array<u8, 32>& seed,
                          const std::string& label, bool symmetric = false);

// ---- helpers shared by the protocols ----

// Pack flat integers (centered) into proj_rows/d ring elements.
RingVec pack_ints(const RingCtx& ctx, const std::vector<i64>& v);

// sum_j d_j * sigma_{-1}(row_j) of a Bin1 matrix, as a width cols/d ring
// vector (the random linear combination both sides of the approximate range
// argument need).
RingVec combine_rows_sigma(const RingCtx& ctx, const ProjMatrix& m,
                           const std::vector<u128>& d1);

// sum_j d_j * sigma_{-1}(unit_j) over unit coefficient vectors of total
// length `count`, as a width count/d ring vector.
RingVec combine_units_sigma(const RingCtx& ctx, const std::vector<u128>& d1, u32 count);

// ||z||^2 <= sigma_sq * 2 * dim_coeffs, exact integers.
bool l2_within(const RingCtx& ctx, const RingVec& z, u128 sigma_sq, u64 dim_coeffs);

struct ProveOptions {
    u32 max_attempts = 1000;
    bool skip_rejection = false;                     // interactive harness only
    const std::array<u8, 32>* record_seed = nullptr;  // test-mode replay envelope
};

struct ProveError : std::runtime_error {
    explicit ProveError(const std::string& w) : std::runtime_error(w) {}
};

// ---- proof of balance ----

struct PobStatement {
    Bytes context;
    RingVec sum_com0;
    RingElem sum_com3;
    u32 n_parties = 0;
};

struct PobProof {
    RingVec w;
    RingElem u;
    RingVec z;
};

Bytes prove_pob(const RingCtx& ctx, const PublicParams& pp, const PobStatement& stmt,
                const RingVec& r_sum, Rng& rng, const ProveOptions& opt = {});
VerifyResult verify_pob(const RingCtx& ctx, const PublicParams& pp, const PobStatement& stmt,
                        const Bytes& proof);
// Interactive pieces (soundness harness, simulator-based ZK smoke tests).
VerifyResult pob_checks(const RingCtx& ctx, const PublicParams& pp, const PobStatement& stmt,
                        const PobProof& pf, const RingElem& c);
PobProof simulate_pob(const RingCtx& ctx, const PublicParams& pp, const PobStatement& stmt,
                      const RingElem& c, Rng& rng);
void pob_absorb_statement(const RingCtx& ctx, FsOracle& fs, const PobStatement& stmt);
Bytes pob_serialize(const RingCtx& ctx, const PobProof& pf, const ProveOptions& opt);
PobProof pob_deserialize(const RingCtx& ctx, const Bytes& b);

// ---- BDLOP opening with message equality ----

struct Poe2Statement {
    Bytes context;
    const ParticipantKey* pk = nullptr;
    const Commitment* com = nullptr;
    const Commitment* comp = nullptr;
};

struct Poe2Proof {
    RingVec w, wp;
    RingElem u1, u2, u3;
    RingVec z, zp;
};

Bytes prove_poe2(const RingCtx& ctx, const PublicParams& pp, const Poe2Statement& stmt,
                 const RingVec& r, const RingVec& rp, Rng& rng, const ProveOptions& opt = {});
VerifyResult verify_poe2(const RingCtx& ctx, const PublicParams& pp, const Poe2Statement& stmt,
                         const Bytes& proof);
VerifyResult poe2_checks(const RingCtx& ctx, const PublicParams& pp, const Poe2Statement& stmt,
                         const Poe2Proof& pf, const RingElem& c);
Poe2Proof simulate_poe2(const RingCtx& ctx, const PublicParams& pp, const Poe2Statement& stmt,
                        const RingElem& c, Rng& rng);

// ---- proof of consistency ----

struct PocStatement {
    Bytes context;
    const ParticipantKey* pk = nullptr;
    const Commitment* com = nullptr;
    // Standard commitments carry integer values; the random-combination term
    // that pins coefficients 1..d/2-1 of the value to zero is enabled here
    // and disabled in compact mode.
    bool constrain_value_coeffs = true;
};

struct PocProof {
    RingVec f0;  // kappa
    RingElem f1;
    RingVec u1;  // proj_rows/d
    RingElem u2;
    std::vector<i64> z3;  // proj_rows
    RingElem h;
    RingVec w;  // kappa
    RingVec v;  // kappa + 4
    RingVec z1, z2;
};

Bytes prove_poc(const RingCtx& ctx, const PublicParams& pp, const PocStatement& stmt,
                const RingVec& r, const RingElem& value, Rng& rng,
                const ProveOptions& opt = {});
VerifyResult verify_poc(const RingCtx& ctx, const PublicParams& pp, const PocStatement& stmt,
                        const Bytes& proof);
VerifyResult poc_checks(const RingCtx& ctx, const PublicParams& pp, const PocStatement& stmt,
                        const PocProof& pf, const ProjMatrix& bigr,
                        const std::vector<u128>& d1, const std::vector<u128>& d2,
                        const RingElem& c);

// ---- proof of equivalence / key well-formedness ----

struct PoeStatement {
    Bytes context;
    const ParticipantKey* pk = nullptr;
    Commitment com;  // column sum, rebuilt by the verifier
    const Commitment* comp = nullptr;
};

struct PokwStatement {
    Bytes context;
    const ParticipantKey* pk = nullptr;
};

struct PoeProof {
    RingVec f;  // kappa
    RingVec u1;
    RingElem u2;
    std::vector<i64> z3;
    RingElem h;
    RingVec w;  // kappa
    RingVec v;  // 2n + 1
    RingVec z1, z2;
};

Bytes prove_poe(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                const SecretKey& sk, Rng& rng, const ProveOptions& opt = {});
VerifyResult verify_poe(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                        const Bytes& proof);
Bytes prove_pokw(const RingCtx& ctx, const PublicParams& pp, const PokwStatement& stmt,
                 const SecretKey& sk, Rng& rng, const ProveOptions& opt = {});
VerifyResult verify_pokw(const RingCtx& ctx, const PublicParams& pp, const PokwStatement& stmt,
                         const Bytes& proof);

// ---- range proof ----

struct PoaStatement {
    Bytes context;
    const ParticipantKey* pk = nullptr;
    const RingElem* com1p = nullptr;  // value row of the re-commitment
};

struct PoaProof {
    RingVec f0;  // kappa
    RingElem f1, u1, u2, u3;
    RingVec w;  // kappa
    RingElem h, u4;
    RingVec z;
};

// `value_ring` is the committed balance, `value_bits` the integer whose
// binary decomposition is proven; honest callers pass matching values.
Bytes prove_poa(const RingCtx& ctx, const PublicParams& pp, const PoaStatement& stmt,
                const RingVec& r, const RingElem& value_ring, u64 value_bits, Rng& rng,
                const ProveOptions& opt = {});
VerifyResult verify_poa(const RingCtx& ctx, const PublicParams& pp, const PoaStatement& stmt,
                        const Bytes& proof);

// ---- compact multi-asset range proof ----

struct PoacStatement {
    Bytes context;
    const Commitment* com = nullptr;
};

struct PoacProof {
    RingVec u0;     // kappa
    RingVec u_y2;   // proj_rows/d
    RingElem u_g;
    RingVec u_bin;  // beta
    std::vector<i64> z2;  // proj_rows
    RingElem h;
    RingVec w1, w2;  // kappa each
    RingElem v, u_g1;
    RingVec z1, z3;
};

Bytes prove_poac(const RingCtx& ctx, const PublicParams& pp, const PoacStatement& stmt,
                 const RingVec& r, const RingElem& value, Rng& rng,
                 const ProveOptions& opt = {});
VerifyResult verify_poac(const RingCtx& ctx, const PublicParams& pp, const PoacStatement& stmt,
                         const Bytes& proof);

// ---- 1-out-of-2 composition over PoE / PoE2 ----

struct OrStatement {
    PoeStatement poe;
    Poe2Statement poe2;
};

struct OrWitness {
    bool use_poe = false;
    const SecretKey* sk = nullptr;      // PoE branch
    const RingVec* r = nullptr;         // PoE2 branch: openings of com and com'
    const RingVec* rp = nullptr;
};

Bytes prove_or(const RingCtx& ctx, const PublicParams& pp, const OrStatement& stmt,
               const OrWitness& wit, Rng& rng, const ProveOptions& opt = {});
VerifyResult verify_or(const RingCtx& ctx, const PublicParams& pp, const OrStatement& stmt,
                       const Bytes& proof);

// Test hook: range proof over an explicitly supplied bit polynomial (lets
// negative tests commit non-binary slots).
Bytes prove_poa_with_vbin(const RingCtx& ctx, const PublicParams& pp, const PoaStatement& stmt,
                          const RingVec& r, const RingElem& value_ring, const RingElem& v_bin,
                          Rng& rng, const ProveOptions& opt = {});

// ---- pieces shared with the OR composition and interactive tests ----

void poc_encode_body(const RingCtx& ctx, const PocProof& pf, ByteWriter& w);
PocProof poc_decode_body(const RingCtx& ctx, ByteReader& r);
void poa_encode_body(const RingCtx& ctx, const PoaProof& pf, ByteWriter& w);
PoaProof poa_decode_body(const RingCtx& ctx, ByteReader& r);
void poac_encode_body(const RingCtx& ctx, const PoacProof& pf, ByteWriter& w);
PoacProof poac_decode_body(const RingCtx& ctx, ByteReader& r);

void poe2_absorb_statement(const RingCtx& ctx, FsOracle& fs, const Poe2Statement& stmt);
void poe2_absorb_first(const RingCtx& ctx, FsOracle& fs, const Poe2Proof& pf);
void poe2_encode_body(const RingCtx& ctx, const Poe2Proof& pf, ByteWriter& w);
Poe2Proof poe2_decode_body(const RingCtx& ctx, ByteReader& r);

void poe_absorb_statement(const RingCtx& ctx, FsOracle& fs, const PoeStatement& stmt);
void poe_absorb_prefix(const RingCtx& ctx, FsOracle& fs, const PoeProof& pf);
void poe_absorb_mid(const RingCtx& ctx, FsOracle& fs, const PoeProof& pf);
void poe_encode_body(const RingCtx& ctx, const PoeProof& pf, ByteWriter& w);
PoeProof poe_decode_body(const RingCtx& ctx, ByteReader& r);
VerifyResult poe_checks(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                        const PoeProof& pf, const ProjMatrix& bigr,
                        const std::vector<u128>& d1, const RingElem& c);

// Prover state for the equivalence proof, split at the OR boundary: the
// prefix (f, u1, u2, z3) runs first, the quadratic phase fixes (h, w, v),
// and the response phase answers the final challenge.
struct PoeProverState {
    RingVec m, s;
    RingVec y1, y2;
    std::vector<i64> y3;
    RingElem g;
    RingVec l;       // projected vector: decryption difference or key vector
    ProjMatrix bigr;  // expanded Bin1 challenge
    PoeProof pf;
};

// Returns false when the z3 rejection fired (caller restarts).
bool poe_phase_commit(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                      const SecretKey& sk, FsOracle& fs, Rng& rng, bool skip_rej,
                      PoeProverState& st);
void poe_phase_quad(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                    PoeProverState& st, const ProjMatrix& bigr, const std::vector<u128>& d1);
bool poe_phase_respond(const RingCtx& ctx, const PublicParams& pp, PoeProverState& st,
                       const RingElem& c, Rng& rng, bool skip_rej);
// HVZK-simulated prefix and challenge-dependent finish for the deniable branch.
void poe_simulate_prefix(const RingCtx& ctx, const PublicParams& pp, PoeProof& pf, Rng& rng);
void poe_simulate_finish(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                         PoeProof& pf, const ProjMatrix& bigr, const std::vector<u128>& d1,
                         const RingElem& c, Rng& rng);

// ---- envelope ----

struct ProofHeader {
    ProofKind kind;
    u8 version;
    std::optional<std::array<u8, 32>> seed;
};

void write_proof_header(ByteWriter& w, ProofKind kind, const ProveOptions& opt);
ProofHeader read_proof_header(ByteReader& r, ProofKind expect);

}  // namespace pqledger
