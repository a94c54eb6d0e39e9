#include "pqledger/ledger.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

namespace pqledger {

namespace {

constexpr char kLedgerMagic[8] = {'P', 'Q', 'T', 'L', '0', '0', '0', '1'};

Bytes stmt_context(const PublicParams& pp, const char* tag, u64 row, u32 asset, u32 party) {
    ByteWriter w;
    w.raw(pp.seed.data(), pp.seed.size());
    w.u32v(static_cast<u32>(strlen(tag)));
    w.raw(tag, strlen(tag));
    w.u64v(row);
    w.u32v(asset);
    w.u32v(party);
    return w.take();
}

// Committed value polynomial for one cell.
RingElem cell_value(const RingCtx& ctx, const Ledger& lg, const std::vector<i64>& values,
                    u32 asset_or_cell, u32 party) {
    if (!lg.compact) {
        const i64 v = values[static_cast<size_t>(asset_or_cell) * lg.n_parties + party];
        return ctx.from_value(ctx.zq().from_i64(v));
    }
    RingElem e = ctx.zero();
    for (u32 a = 0; a < lg.n_assets; ++a)
        e.c[a] = ctx.zq().from_i64(values[static_cast<size_t>(a) * lg.n_parties + party]);
    return e;
}

bool party_spends(const Ledger& lg, const std::vector<i64>& values, u32 party) {
    for (u32 a = 0; a < lg.n_assets; ++a)
        if (values[static_cast<size_t>(a) * lg.n_parties + party] < 0) return true;
    return false;
}

}  // namespace

Commitment Ledger::column_sum(u32 asset_row, u32 party, size_t row_limit) const {
    const size_t upto = std::min(row_limit, rows.size());
    Commitment acc;
    bool first = true;
    for (size_t t = 0; t < upto; ++t) {
        const Commitment& c = rows[t].cells[cell_index(asset_row, party)].com;
        if (first) {
            acc = c;
            first = false;
        } else {
            add_commitment(*ctx, acc, c);
        }
    }
    if (first) throw std::logic_error("empty column");
    return acc;
}

SetupResult ledger_setup(const ParamSet& ps, u32 n_parties, u32 n_assets,
                         const std::vector<i64>& genesis, const std::array<u8, 32>& seed,
                         bool compact) {
    if (const auto bad = validate(ps)) throw std::invalid_argument("invalid params: " + *bad);
    if (n_parties == 0 || n_assets == 0) throw std::invalid_argument("empty ledger");
    if (genesis.size() != static_cast<size_t>(n_parties) * n_assets)
        throw std::invalid_argument("genesis size mismatch");
    for (i64 v : genesis)
        if (v < 0) throw std::invalid_argument("negative genesis value");
    if (compact && n_assets > ps.d) throw std::invalid_argument("too many assets for compact mode");
    if (compact) {
        for (i64 v : genesis)
            if (v >= (static_cast<i64>(1) << ps.beta_bits))
                throw std::invalid_argument("genesis value exceeds compact width");
    } else {
        for (i64 v : genesis)
            if (v >= (static_cast<i64>(1) << ps.value_bits))
                throw std::invalid_argument("genesis value exceeds value width");
    }

    SetupResult res;
    Ledger& lg = res.ledger;
    lg.ps = ps;
    lg.ctx = std::make_unique<RingCtx>(lg.ps);
    lg.pp = expand_public_params(*lg.ctx, seed);
    lg.n_parties = n_parties;
    lg.n_assets = n_assets;
    lg.compact = compact;

    Rng base(seed, "ledger/setup");
    for (u32 i = 0; i < n_parties; ++i) {
        Rng krng = base.fork("keygen/" + std::to_string(i));
        KeyPair kp = keygen(*lg.ctx, lg.pp.tx, krng);
        PokwStatement stmt;
        stmt.context = stmt_context(lg.pp, "pokw", 0, 0, i);
        stmt.pk = &kp.pk;
        Rng prng = base.fork("pokw/" + std::to_string(i));
        ParticipantRecord rec;
        rec.pokw = prove_pokw(*lg.ctx, lg.pp, stmt, kp.sk, prng);
        rec.pk = std::move(kp.pk);
        lg.participants.push_back(std::move(rec));
        res.secret_keys.push_back(std::move(kp.sk));
    }

    // genesis row: committed directly, no proofs (values are the public input
    // of the setup)
    TxRecord row;
    row.genesis = true;
    row.cells.resize(lg.cells_per_row());
    const u32 outer = compact ? 1 : n_assets;
    for (u32 a = 0; a < outer; ++a) {
        for (u32 i = 0; i < n_parties; ++i) {
            Rng crng = base.fork("genesis/" + std::to_string(a) + "/" + std::to_string(i));
            const RingVec r = sample_chi_vec(crng, *lg.ctx, ps.width());
            const RingElem v = cell_value(*lg.ctx, lg, genesis, a, i);
            row.cells[lg.cell_index(a, i)].com =
                commit_tx(*lg.ctx, lg.pp.tx, lg.participants[i].pk, v, r);
        }
    }
    lg.rows.push_back(std::move(row));
    return res;
}

ValueCheck check_value_list(const Ledger& lg, const std::vector<i64>& values,
                            const std::map<u32, const SecretKey*>& sks) {
    if (values.size() != static_cast<size_t>(lg.n_parties) * lg.n_assets)
        return {false, "value list size mismatch"};
    for (u32 a = 0; a < lg.n_assets; ++a) {
        i64 sum = 0;
        for (u32 i = 0; i < lg.n_parties; ++i)
            sum += values[static_cast<size_t>(a) * lg.n_parties + i];
        if (sum != 0) return {false, "asset " + std::to_string(a) + " does not balance"};
    }
    for (u32 i = 0; i < lg.n_parties; ++i) {
        if (!party_spends(lg, values, i)) continue;
        const auto it = sks.find(i);
        if (it == sks.end())
            return {false, "missing secret key for spender " + std::to_string(i)};
        for (u32 a = 0; a < lg.n_assets; ++a) {
            const BalanceResult b = check_balance(lg, *it->second, i, a);
            if (!b.ok) return {false, "balance extraction failed: " + b.error};
            const i64 v = values[static_cast<size_t>(a) * lg.n_parties + i];
            if (b.value + v < 0)
                return {false, "participant " + std::to_string(i) + " overspends asset " +
                                   std::to_string(a)};
        }
    }
    return {true, ""};
}

TxRecord create_tx(const Ledger& lg, const std::vector<i64>& values,
                   const std::map<u32, const SecretKey*>& sks, Rng& rng, const TxOptions& opt) {
    const RingCtx& ctx = *lg.ctx;
    const ParamSet& ps = lg.ps;
    if (!opt.force) {
        const ValueCheck vc = check_value_list(lg, values, sks);
        if (!vc.ok) throw std::invalid_argument("invalid value list: " + vc.error);
    }
    for (u32 i = 0; i < lg.n_parties; ++i) {
        if (party_spends(lg, values, i) && sks.find(i) == sks.end())
            throw std::invalid_argument("missing secret key for spender " + std::to_string(i));
    }

    ProveOptions popt;
    std::array<u8, 32> proof_seed{};
    if (opt.record_seeds) {
        rng.fill(proof_seed.data(), proof_seed.size());
        popt.record_seed = &proof_seed;
    }

    const u64 row_index = lg.rows.size();
    const u32 outer = lg.compact ? 1 : lg.n_assets;
    TxRecord tx;
    tx.cells.resize(lg.cells_per_row());

    std::vector<RingVec> r_sums(outer);
    for (u32 a = 0; a < outer; ++a) {
        for (u32 i = 0; i < lg.n_parties; ++i) {
            TxCell& cell = tx.cells[lg.cell_index(a, i)];
            const ParticipantKey& pk = lg.participants[i].pk;
            const RingElem v = cell_value(ctx, lg, values, a, i);
            const RingVec r = sample_chi_vec(rng, ctx, ps.width());
            cell.com = commit_tx(ctx, lg.pp.tx, pk, v, r);
            if (r_sums[a].empty())
                r_sums[a] = r;
            else
                r_sums[a] = ctx.vadd(r_sums[a], r);

            // re-commitment: original message for receivers and decoys,
            // column sum plus the pending spend for spenders
            const bool spender = lg.compact ? party_spends(lg, values, i)
                                            : values[static_cast<size_t>(a) * lg.n_parties + i] < 0;
            RingElem vp = v;
            if (spender) {
                Commitment col = lg.column_sum(a, i, lg.rows.size());
                add_commitment(ctx, col, cell.com);
                const SecretKey& sk = *sks.at(i);
                RingElem extracted;
                if (extract(ctx, col, sk, extracted) != ExtractStatus::ok)
                    throw std::runtime_error("column extraction failed while building tx");
                vp = extracted;
            }
            const RingVec rp = sample_chi_vec(rng, ctx, ps.width());
            cell.comp = commit_tx(ctx, lg.pp.tx, pk, vp, rp);

            // consistency proofs for both commitments
            PocStatement poc;
            poc.pk = &pk;
            poc.constrain_value_coeffs = !lg.compact;
            poc.context = stmt_context(lg.pp, "poc", row_index, a, i);
            poc.com = &cell.com;
            cell.poc = prove_poc(ctx, lg.pp, poc, r, v, rng, popt);
            poc.context = stmt_context(lg.pp, "pocp", row_index, a, i);
            poc.com = &cell.comp;
            cell.pocp = prove_poc(ctx, lg.pp, poc, rp, vp, rng, popt);

            // range proof on the re-commitment
            if (!lg.compact) {
                PoaStatement poa;
                poa.context = stmt_context(lg.pp, "poa", row_index, a, i);
                poa.pk = &pk;
                poa.com1p = &cell.comp.c1;
                const i128 vtot = ctx.zq().center(vp.c[0]);
                u64 bits;
                if (vtot >= 0 && vtot < (static_cast<i128>(1) << ps.value_bits)) {
                    bits = static_cast<u64>(vtot);
                } else if (opt.force) {
                    bits = static_cast<u64>(vtot) &
                           ((static_cast<u64>(1) << ps.value_bits) - 1);
                } else {
                    throw std::invalid_argument("balance out of range for range proof");
                }
                cell.poa = prove_poa(ctx, lg.pp, poa, rp, vp, bits, rng, popt);
            } else {
                PoacStatement poa;
                poa.context = stmt_context(lg.pp, "poac", row_index, a, i);
                poa.com = &cell.comp;
                RingElem vclamped = vp;
                for (u32 t = 0; t < ctx.d(); ++t) {
                    const i128 c = ctx.zq().center(vclamped.c[t]);
                    if (c < 0 || c >= (static_cast<i128>(1) << ps.beta_bits)) {
                        if (!opt.force)
                            throw std::invalid_argument("coefficient out of compact range");
                        vclamped.c[t] = static_cast<u128>(c) &
                                        ((static_cast<u128>(1) << ps.beta_bits) - 1);
                    }
                }
                cell.poa = prove_poac(ctx, lg.pp, poa, rp, vclamped, rng, popt);
            }

            // OR-composed equivalence: real branch is PoE for spenders (the
            // column-sum value equals the re-committed one) and PoE2 for
            // receivers and decoys (same message, fresh randomness)
            OrStatement orst;
            orst.poe.context = stmt_context(lg.pp, "poe", row_index, a, i);
            orst.poe.pk = &pk;
            orst.poe.com = lg.column_sum(a, i, lg.rows.size());
            add_commitment(ctx, orst.poe.com, cell.com);
            orst.poe.comp = &cell.comp;
            orst.poe2.context = stmt_context(lg.pp, "poe2", row_index, a, i);
            orst.poe2.pk = &pk;
            orst.poe2.com = &cell.com;
            orst.poe2.comp = &cell.comp;
            OrWitness wit;
            wit.use_poe = spender;
            if (spender) {
                wit.sk = sks.at(i);
            } else {
                wit.r = &r;
                wit.rp = &rp;
            }
            cell.oreq = prove_or(ctx, lg.pp, orst, wit, rng, popt);
        }

        PobStatement pob;
        pob.context = stmt_context(lg.pp, "pob", row_index, a, 0);
        pob.n_parties = lg.n_parties;
        Commitment sum = tx.cells[lg.cell_index(a, 0)].com;
        for (u32 i = 1; i < lg.n_parties; ++i)
            add_commitment(ctx, sum, tx.cells[lg.cell_index(a, i)].com);
        pob.sum_com0 = sum.c0;
        pob.sum_com3 = sum.c3;
        tx.pob.push_back(prove_pob(ctx, lg.pp, pob, r_sums[a], rng, popt));
    }
    return tx;
}

VerifyResult verify_tx(const Ledger& lg, const TxRecord& tx, size_t row_limit) {
    const RingCtx& ctx = *lg.ctx;
    const size_t upto = std::min(row_limit, lg.rows.size());
    if (tx.genesis) return VerifyResult::fail("tx:genesis-row");
    if (tx.cells.size() != lg.cells_per_row()) return VerifyResult::fail("tx:arity");
    const u32 outer = lg.compact ? 1 : lg.n_assets;
    if (tx.pob.size() != outer) return VerifyResult::fail("tx:arity");
    const u64 row_index = upto;

    for (u32 a = 0; a < outer; ++a) {
        for (u32 i = 0; i < lg.n_parties; ++i) {
            const TxCell& cell = tx.cells[lg.cell_index(a, i)];
            const ParticipantKey& pk = lg.participants[i].pk;
            if (cell.com.c0.size() != lg.ps.kappa || cell.comp.c0.size() != lg.ps.kappa)
                return VerifyResult::fail("tx:commitment-shape");

            PocStatement poc;
            poc.pk = &pk;
            poc.constrain_value_coeffs = !lg.compact;
            poc.context = stmt_context(lg.pp, "poc", row_index, a, i);
            poc.com = &cell.com;
            VerifyResult r = verify_poc(ctx, lg.pp, poc, cell.poc);
            if (!r.ok) return r;
            poc.context = stmt_context(lg.pp, "pocp", row_index, a, i);
            poc.com = &cell.comp;
            r = verify_poc(ctx, lg.pp, poc, cell.pocp);
            if (!r.ok) return VerifyResult::fail(r.failed + "-prime");

            if (!lg.compact) {
                PoaStatement poa;
                poa.context = stmt_context(lg.pp, "poa", row_index, a, i);
                poa.pk = &pk;
                poa.com1p = &cell.comp.c1;
                r = verify_poa(ctx, lg.pp, poa, cell.poa);
                if (!r.ok) return r;
            } else {
                PoacStatement poa;
                poa.context = stmt_context(lg.pp, "poac", row_index, a, i);
                poa.com = &cell.comp;
                r = verify_poac(ctx, lg.pp, poa, cell.poa);
                if (!r.ok) return r;
            }

            OrStatement orst;
            orst.poe.context = stmt_context(lg.pp, "poe", row_index, a, i);
            orst.poe.pk = &pk;
            orst.poe.com = lg.column_sum(a, i, upto);
            add_commitment(ctx, orst.poe.com, cell.com);
            orst.poe.comp = &cell.comp;
            orst.poe2.context = stmt_context(lg.pp, "poe2", row_index, a, i);
            orst.poe2.pk = &pk;
            orst.poe2.com = &cell.com;
            orst.poe2.comp = &cell.comp;
            r = verify_or(ctx, lg.pp, orst, cell.oreq);
            if (!r.ok) return r;
        }

        PobStatement pob;
        pob.context = stmt_context(lg.pp, "pob", row_index, a, 0);
        pob.n_parties = lg.n_parties;
        Commitment sum = tx.cells[lg.cell_index(a, 0)].com;
        for (u32 i = 1; i < lg.n_parties; ++i)
            add_commitment(ctx, sum, tx.cells[lg.cell_index(a, i)].com);
        pob.sum_com0 = sum.c0;
        pob.sum_com3 = sum.c3;
        const VerifyResult r = verify_pob(ctx, lg.pp, pob, tx.pob[a]);
        if (!r.ok) return r;
    }
    return VerifyResult::pass();
}

AppendResult append_tx(Ledger& lg, TxRecord tx) {
    const VerifyResult r = verify_tx(lg, tx);
    if (!r.ok) return {false, 0, r.failed};
    lg.rows.push_back(std::move(tx));
    return {true, lg.rows.size() - 1, ""};
}

BalanceResult check_balance(const Ledger& lg, const SecretKey& sk, u32 party, u32 asset) {
    if (party >= lg.n_parties || asset >= lg.n_assets) return {false, 0, "index out of range"};
    const RingCtx& ctx = *lg.ctx;
    const u32 arow = lg.compact ? 0 : asset;
    const Commitment col = lg.column_sum(arow, party, lg.rows.size());
    RingElem v;
    const ExtractStatus st = extract(ctx, col, sk, v);
    if (st != ExtractStatus::ok) return {false, 0, extract_status_name(st)};
    const u32 coeff = lg.compact ? asset : 0;
    for (u32 t = 0; t < ctx.d(); ++t) {
        if (lg.compact || t == coeff) continue;
        if (v.c[t] != 0) return {false, 0, "non-scalar extracted value"};
    }
    const i128 val = ctx.zq().center(v.c[coeff]);
    if (val > static_cast<i128>(INT64_MAX) || val < static_cast<i128>(INT64_MIN))
        return {false, 0, "balance out of integer range"};
    return {true, static_cast<i64>(val), ""};
}

VerifyResult verify_ledger(const Ledger& lg) {
    for (u32 i = 0; i < lg.n_parties; ++i) {
        PokwStatement stmt;
        stmt.context = stmt_context(lg.pp, "pokw", 0, 0, i);
        stmt.pk = &lg.participants[i].pk;
        const VerifyResult r = verify_pokw(*lg.ctx, lg.pp, stmt, lg.participants[i].pokw);
        if (!r.ok)
            return VerifyResult::fail("participant " + std::to_string(i) + ": " + r.failed);
    }
    for (size_t t = 1; t < lg.rows.size(); ++t) {
        const VerifyResult r = verify_tx(lg, lg.rows[t], t);
        if (!r.ok) return VerifyResult::fail("row " + std::to_string(t) + ": " + r.failed);
    }
    return VerifyResult::pass();
}

// ---- persistence ----

namespace {

void encode_cell(const RingCtx& ctx, const TxCell& c, bool genesis, ByteWriter& w) {
    encode_commitment(ctx, c.com, w);
    if (genesis) return;  // genesis rows carry bare commitments
    encode_commitment(ctx, c.comp, w);
    w.blob(c.poc);
    w.blob(c.pocp);
    w.blob(c.poa);
    w.blob(c.oreq);
}

TxCell decode_cell(const RingCtx& ctx, bool genesis, ByteReader& r) {
    TxCell c;
    c.com = decode_commitment(ctx, r);
    if (genesis) return c;
    c.comp = decode_commitment(ctx, r);
    c.poc = r.blob();
    c.pocp = r.blob();
    c.poa = r.blob();
    c.oreq = r.blob();
    return c;
}

}  // namespace

Bytes serialize_tx(const RingCtx& ctx, const TxRecord& tx) {
    ByteWriter w;
    w.u8v(tx.genesis ? 1 : 0);
    w.u32v(static_cast<u32>(tx.cells.size()));
    for (const auto& c : tx.cells) encode_cell(ctx, c, tx.genesis, w);
    w.u32v(static_cast<u32>(tx.pob.size()));
    for (const auto& p : tx.pob) w.blob(p);
    return w.take();
}

TxRecord deserialize_tx(const RingCtx& ctx, ByteReader& r) {
    TxRecord tx;
    tx.genesis = r.u8v() != 0;
    const u32 nc = r.u32v();
    tx.cells.reserve(nc);
    for (u32 i = 0; i < nc; ++i) tx.cells.push_back(decode_cell(ctx, tx.genesis, r));
    const u32 np = r.u32v();
    for (u32 i = 0; i < np; ++i) tx.pob.push_back(r.blob());
    return tx;
}

namespace {

void write_record(std::ofstream& os, std::vector<u64>& offsets, const Bytes& payload) {
    offsets.push_back(static_cast<u64>(os.tellp()));
    const u32 len = static_cast<u32>(payload.size());
    os.write(reinterpret_cast<const char*>(&len), sizeof len);
    os.write(reinterpret_cast<const char*>(payload.data()), payload.size());
}

Bytes read_record(std::ifstream& is) {
    u32 len = 0;
    is.read(reinterpret_cast<char*>(&len), sizeof len);
    if (!is) throw std::runtime_error("truncated ledger file");
    Bytes b(len);
    is.read(reinterpret_cast<char*>(b.data()), len);
    if (!is) throw std::runtime_error("truncated ledger record");
    return b;
}

}  // namespace

void save_ledger(const Ledger& lg, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path);
    std::vector<u64> offsets;
    os.write(kLedgerMagic, sizeof kLedgerMagic);
    {
        ByteWriter w;
        const std::string params = lg.ps.to_text();
        w.u32v(static_cast<u32>(params.size()));
        w.raw(params.data(), params.size());
        w.raw(lg.pp.seed.data(), lg.pp.seed.size());
        w.u32v(lg.n_parties);
        w.u32v(lg.n_assets);
        w.u8v(lg.compact ? 1 : 0);
        write_record(os, offsets, w.bytes());
    }
    for (const auto& p : lg.participants) {
        ByteWriter w;
        lg.ctx->encode_vec(p.pk.pk1, w);
        lg.ctx->encode_vec(p.pk.pk2, w);
        w.blob(p.pokw);
        write_record(os, offsets, w.bytes());
    }
    for (const auto& row : lg.rows) write_record(os, offsets, serialize_tx(*lg.ctx, row));
    os.close();

    std::ofstream idx(path + ".idx", std::ios::binary | std::ios::trunc);
    const u64 n = offsets.size();
    idx.write(reinterpret_cast<const char*>(&n), sizeof n);
    for (u64 off : offsets) idx.write(reinterpret_cast<const char*>(&off), sizeof off);
}

Ledger load_ledger(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || memcmp(magic, kLedgerMagic, sizeof magic) != 0)
        throw std::runtime_error("not a ledger file");

    Ledger lg;
    {
        const Bytes hdr = read_record(is);
        ByteReader r(hdr);
        const u32 plen = r.u32v();
        const u8* p = r.take(plen);
        std::string ptext(reinterpret_cast<const char*>(p), plen);
        std::string err;
        auto ps = ParamSet::from_text(ptext, &err);
        if (!ps) throw std::runtime_error("bad params in ledger: " + err);
        lg.ps = *ps;
        if (const auto bad = validate(lg.ps))
            throw std::runtime_error("ledger params invalid: " + *bad);
        lg.ctx = std::make_unique<RingCtx>(lg.ps);
        const u8* sp = r.take(32);
        std::copy(sp, sp + 32, lg.pp.seed.begin());
        lg.n_parties = r.u32v();
        lg.n_assets = r.u32v();
        lg.compact = r.u8v() != 0;
        lg.pp = expand_public_params(*lg.ctx, lg.pp.seed);
    }
    for (u32 i = 0; i < lg.n_parties; ++i) {
        const Bytes rec = read_record(is);
        ByteReader r(rec);
        ParticipantRecord p;
        p.pk.pk1 = lg.ctx->decode_vec(r, lg.ps.width());
        p.pk.pk2 = lg.ctx->decode_vec(r, lg.ps.width());
        p.pk.pk1_ntt = lg.ctx->to_ntt(p.pk.pk1);
        p.pk.pk2_ntt = lg.ctx->to_ntt(p.pk.pk2);
        p.pokw = r.blob();
        r.expect_done();
        lg.participants.push_back(std::move(p));
    }
    while (is.peek() != EOF) {
        const Bytes rec = read_record(is);
        ByteReader r(rec);
        lg.rows.push_back(deserialize_tx(*lg.ctx, r));
        r.expect_done();
    }
    if (lg.rows.empty()) throw std::runtime_error("ledger has no genesis row");
    return lg;
}

void save_secret_key(const RingCtx& ctx, const SecretKey& sk, const std::string& path) {
    ByteWriter w;
    ctx.encode_vec(sk.s1, w);
    ctx.encode_vec(sk.e1, w);
    ctx.encode_vec(sk.s2, w);
    ctx.encode_vec(sk.e2, w);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.write(reinterpret_cast<const char*>(w.bytes().data()),
             static_cast<std::streamsize>(w.bytes().size()));
    os.close();
    // test tool: keys are plaintext, keep them at least private to the user
    std::error_code ec;
    std::filesystem::permissions(
        path, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write,
        std::filesystem::perm_options::replace, ec);
}

SecretKey load_secret_key(const RingCtx& ctx, const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    Bytes b((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    ByteReader r(b);
    SecretKey sk;
    sk.s1 = ctx.decode_vec(r, ctx.params().kappa);
    sk.e1 = ctx.decode_vec(r, ctx.params().width());
    sk.s2 = ctx.decode_vec(r, ctx.params().kappa);
    sk.e2 = ctx.decode_vec(r, ctx.params().width());
    r.expect_done();
    return sk;
}

}  // namespace pqledger
