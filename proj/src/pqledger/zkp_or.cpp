#include "pqledger/zkp.hpp"

namespace pqledger {

// 1-out-of-2 composition of the equivalence proof and the BDLOP message
// equality proof. Challenge splitting happens on 32-byte seeds: the final
// hash output must equal seed_poe XOR seed_poe2, the prover fixes the
// deniable branch's seed before hashing and answers the derived seed on the
// real branch. For the 7-move equivalence proof only the final challenge is
// split; everything before the last three moves is bound as statement.

namespace {

std::array<u8, 32> xor_seeds(const std::array<u8, 32>& a, const std::array<u8, 32>& b) {
    std::array<u8, 32> r{};
    for (size_t i = 0; i < 32; ++i) r[i] = a[i] ^ b[i];
    return r;
}

void or_absorb_statements(const RingCtx& ctx, FsOracle& fs, const OrStatement& stmt) {
    poe_absorb_statement(ctx, fs, stmt.poe);
    poe2_absorb_statement(ctx, fs, stmt.poe2);
}

struct FsFlow {
    ProjMatrix bigr;
    std::vector<u128> d1;
};

// Drives the shared FS schedule given the already-known PoE prefix messages.
FsFlow or_flow_prefix(const RingCtx& ctx, FsOracle& fs, const PoeProof& poe) {
    const ParamSet& ps = ctx.params();
    poe_absorb_prefix(ctx, fs, poe);
    const auto rseed = fs.seed("R");
    FsFlow fl;
    fl.bigr = expand_proj_matrix(rseed, "poe/R", ps.proj_rows, 2 * ps.d);
    fs.absorb_ints(poe.z3);
    fl.d1 = fs.scalars(ctx, ps.proj_rows, "d1");
    return fl;
}

}  // namespace

Bytes prove_or(const RingCtx& ctx, const PublicParams& pp, const OrStatement& stmt,
               const OrWitness& wit, Rng& rng, const ProveOptions& opt) {
    for (u32 attempt = 0; attempt < opt.max_attempts; ++attempt) {
        FsOracle fs("or");
        or_absorb_statements(ctx, fs, stmt);

        std::array<u8, 32> fake_seed{};
        rng.fill(fake_seed.data(), fake_seed.size());

        PoeProof poe_pf;
        Poe2Proof poe2_pf;
        PoeProverState st;

        if (wit.use_poe) {
            // deniable PoE2 branch first, from the pre-committed seed
            const RingElem c2 = expand_challenge(ctx, fake_seed, "or/poe2");
            poe2_pf = simulate_poe2(ctx, pp, stmt.poe2, c2, rng);
            if (!poe_phase_commit(ctx, pp, stmt.poe, *wit.sk, fs, rng, opt.skip_rejection, st))
                continue;
            const std::vector<u128> d1 = fs.scalars(ctx, ctx.params().proj_rows, "d1");
            poe_phase_quad(ctx, pp, stmt.poe, st, st.bigr, d1);
            poe_pf = st.pf;
            poe_absorb_mid(ctx, fs, poe_pf);
            poe2_absorb_first(ctx, fs, poe2_pf);
            const auto total = fs.seed("split");
            const auto poe_seed = xor_seeds(total, fake_seed);
            const RingElem c1 = expand_challenge(ctx, poe_seed, "or/poe");
            if (!poe_phase_respond(ctx, pp, st, c1, rng, opt.skip_rejection)) continue;
            poe_pf = st.pf;

            ByteWriter w;
            write_proof_header(w, ProofKind::Or, opt);
            w.raw(poe_seed.data(), poe_seed.size());
            poe_encode_body(ctx, poe_pf, w);
            poe2_encode_body(ctx, poe2_pf, w);
            return w.take();
        }

        // real PoE2 branch; the PoE side is simulated with challenge from the
        // pre-committed seed
        const RingElem c1 = expand_challenge(ctx, fake_seed, "or/poe");
        poe_simulate_prefix(ctx, pp, poe_pf, rng);
        const FsFlow fl = or_flow_prefix(ctx, fs, poe_pf);
        poe_simulate_finish(ctx, pp, stmt.poe, poe_pf, fl.bigr, fl.d1, c1, rng);
        poe_absorb_mid(ctx, fs, poe_pf);

        // honest PoE2 first messages
        const ParamSet& ps = ctx.params();
        const size_t nd = static_cast<size_t>(ps.width()) * ps.d;
        const GaussianSampler gs = GaussianSampler::from_sigma_sq(ps.poe2.s1);
        RingVec y = pack_ints(ctx, gs.sample_vec(rng, nd));
        RingVec yp = pack_ints(ctx, gs.sample_vec(rng, nd));
        const auto yh = ctx.to_ntt(y);
        const auto yph = ctx.to_ntt(yp);
        poe2_pf.w = ctx.matvec_ntt(pp.tx.A, yh);
        poe2_pf.wp = ctx.matvec_ntt(pp.tx.A, yph);
        const std::vector<NttVec>* rows[3] = {&stmt.poe2.pk->pk1_ntt, &stmt.poe2.pk->pk2_ntt,
                                              &pp.tx.B};
        RingElem* us[3] = {&poe2_pf.u1, &poe2_pf.u2, &poe2_pf.u3};
        for (int i = 0; i < 3; ++i)
            *us[i] = ctx.sub(ctx.row_dot_ntt(*rows[i], yh), ctx.row_dot_ntt(*rows[i], yph));
        poe2_absorb_first(ctx, fs, poe2_pf);

        const auto total = fs.seed("split");
        const auto poe2_seed = xor_seeds(total, fake_seed);
        const RingElem c2 = expand_challenge(ctx, poe2_seed, "or/poe2");
        const RingVec cr = ctx.vscale(c2, *wit.r);
        const RingVec crp = ctx.vscale(c2, *wit.rp);
        poe2_pf.z = ctx.vadd(y, cr);
        poe2_pf.zp = ctx.vadd(yp, crp);
        if (!opt.skip_rejection) {
            if (!rej_accept(rng, ctx.centered(poe2_pf.z), ctx.centered(cr), ps.poe2.s1))
                continue;
            if (!rej_accept(rng, ctx.centered(poe2_pf.zp), ctx.centered(crp), ps.poe2.s1))
                continue;
        }

        ByteWriter w;
        write_proof_header(w, ProofKind::Or, opt);
        w.raw(fake_seed.data(), fake_seed.size());
        poe_encode_body(ctx, poe_pf, w);
        poe2_encode_body(ctx, poe2_pf, w);
        return w.take();
    }
    throw ProveError("or: rejection-sampling attempt cap exceeded");
}

VerifyResult verify_or(const RingCtx& ctx, const PublicParams& pp, const OrStatement& stmt,
                       const Bytes& proof) {
    PoeProof poe_pf;
    Poe2Proof poe2_pf;
    std::array<u8, 32> poe_seed{};
    try {
        ByteReader r(proof);
        read_proof_header(r, ProofKind::Or);
        const u8* p = r.take(32);
        std::copy(p, p + 32, poe_seed.begin());
        poe_pf = poe_decode_body(ctx, r);
        poe2_pf = poe2_decode_body(ctx, r);
        r.expect_done();
    } catch (const ParseError& e) {
        return VerifyResult::fail(std::string("or:parse:") + e.what());
    }

    FsOracle fs("or");
    or_absorb_statements(ctx, fs, stmt);
    const FsFlow fl = or_flow_prefix(ctx, fs, poe_pf);
    poe_absorb_mid(ctx, fs, poe_pf);
    poe2_absorb_first(ctx, fs, poe2_pf);
    const auto total = fs.seed("split");
    const auto poe2_seed = xor_seeds(total, poe_seed);

    const RingElem c1 = expand_challenge(ctx, poe_seed, "or/poe");
    const RingElem c2 = expand_challenge(ctx, poe2_seed, "or/poe2");
    const VerifyResult r1 = poe_checks(ctx, pp, stmt.poe, poe_pf, fl.bigr, fl.d1, c1);
    if (!r1.ok) return VerifyResult::fail("or:" + r1.failed);
    const VerifyResult r2 = poe2_checks(ctx, pp, stmt.poe2, poe2_pf, c2);
    if (!r2.ok) return VerifyResult::fail("or:" + r2.failed);
    return VerifyResult::pass();
}

}  // namespace pqledger
