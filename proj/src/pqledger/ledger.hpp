#pragma once

#include "pqledger/zkp.hpp"

#include <map>
#include <memory>

namespace pqledger {

// One (asset, participant) cell of a transaction row: the value commitment,
// the re-commitment, and the proofs tied to them. In compact mode a row has
// one cell per participant and the asset index is a coefficient index.
struct TxCell {
    Commitment com;
    Commitment comp;
    Bytes poc;    // consistency of com
    Bytes pocp;   // consistency of com'
    Bytes poa;    // range proof on com' (PoA or PoAc)
    Bytes oreq;   // OR(PoE, PoE2) against the column sum
};

struct TxRecord {
    std::vector<TxCell> cells;  // asset-major (standard) or per participant (compact)
    std::vector<Bytes> pob;     // one per asset row (single entry in compact mode)
    bool genesis = false;
};

struct ParticipantRecord {
    ParticipantKey pk;
    Bytes pokw;
};

struct Ledger {
    ParamSet ps;
    std::unique_ptr<RingCtx> ctx;
    PublicParams pp;
    u32 n_parties = 0;
    u32 n_assets = 0;
    bool compact = false;
    std::vector<ParticipantRecord> participants;
    std::vector<TxRecord> rows;  // rows[0] is the genesis row

    u32 cells_per_row() const { return compact ? n_parties : n_assets * n_parties; }
    u32 cell_index(u32 asset, u32 party) const {
        return compact ? party : asset * n_parties + party;
    }
    // Column sum of stored commitments for (asset-row, participant).
    Commitment column_sum(u32 asset_row, u32 party, size_t row_limit) const;
};

struct SetupResult {
    Ledger ledger;
    std::vector<SecretKey> secret_keys;
};

// Samples every commitment key from the seed, registers n_parties key pairs
// with key well-formedness proofs, and commits the genesis value list
// (asset-major, non-negative).
SetupResult ledger_setup(const ParamSet& ps, u32 n_parties, u32 n_assets,
                         const std::vector<i64>& genesis, const std::array<u8, 32>& seed,
                         bool compact = false);

struct TxOptions {
    bool force = false;        // build even if the value list fails the advisory check
    bool record_seeds = false;
};

// Builds a full transaction row: commitments, re-commitments, consistency and
// range proofs per cell, OR-composed equivalence proofs against the column
// sums, and per-asset balance proofs. `sks` maps participant index to secret
// key; every spending participant must be present.
TxRecord create_tx(const Ledger& ledger, const std::vector<i64>& values,
                   const std::map<u32, const SecretKey*>& sks, Rng& rng,
                   const TxOptions& opt = {});

// Full verification against the ledger state the row would be appended to
// (row_limit = number of existing rows to count; SIZE_MAX means current).
VerifyResult verify_tx(const Ledger& ledger, const TxRecord& tx,
                       size_t row_limit = static_cast<size_t>(-1));

// Appends after verification; returns the new row index or an error.
struct AppendResult {
    bool ok = false;
    size_t index = 0;
    std::string error;
};
AppendResult append_tx(Ledger& ledger, TxRecord tx);

struct BalanceResult {
    bool ok = false;
    i64 value = 0;
    std::string error;
};
BalanceResult check_balance(const Ledger& ledger, const SecretKey& sk, u32 party, u32 asset);

// Advisory validity check of a value list against plaintext balances the
// caller can compute (authority rests with verify_tx).
struct ValueCheck {
    bool ok = false;
    std::string error;
};
ValueCheck check_value_list(const Ledger& ledger, const std::vector<i64>& values,
                            const std::map<u32, const SecretKey*>& sks);

// Re-verifies every stored transaction against its pre-append state.
VerifyResult verify_ledger(const Ledger& ledger);

void save_ledger(const Ledger& ledger, const std::string& path);
Ledger load_ledger(const std::string& path);

void save_secret_key(const RingCtx& ctx, const SecretKey& sk, const std::string& path);
SecretKey load_secret_key(const RingCtx& ctx, const std::string& path);

Bytes serialize_tx(const RingCtx& ctx, const TxRecord& tx);
TxRecord deserialize_tx(const RingCtx& ctx, ByteReader& r);

}  // namespace pqledger
