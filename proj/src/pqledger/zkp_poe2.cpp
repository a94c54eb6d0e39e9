#include "pqledger/zkp.hpp"

namespace pqledger {

// BDLOP proof of opening for two commitments plus the cross checks
// b_i z - b_i z' = (com_i - com'_i) c + u_i, which bind the two message
// vectors to be equal without revealing them.

void poe2_absorb_statement(const RingCtx& ctx, FsOracle& fs, const Poe2Statement& stmt) {
    fs.absorb(stmt.context);
    fs.absorb_vec(ctx, stmt.pk->pk1);
    fs.absorb_vec(ctx, stmt.pk->pk2);
    ByteWriter w;
    encode_commitment(ctx, *stmt.com, w);
    encode_commitment(ctx, *stmt.comp, w);
    fs.absorb(w.bytes());
}

void poe2_absorb_first(const RingCtx& ctx, FsOracle& fs, const Poe2Proof& pf) {
    fs.absorb_vec(ctx, pf.w);
    fs.absorb_vec(ctx, pf.wp);
    fs.absorb_elem(ctx, pf.u1);
    fs.absorb_elem(ctx, pf.u2);
    fs.absorb_elem(ctx, pf.u3);
}

void poe2_encode_body(const RingCtx& ctx, const Poe2Proof& pf, ByteWriter& w) {
    ctx.encode_vec(pf.w, w);
    ctx.encode_vec(pf.wp, w);
    ctx.encode(pf.u1, w);
    ctx.encode(pf.u2, w);
    ctx.encode(pf.u3, w);
    ctx.encode_vec(pf.z, w);
    ctx.encode_vec(pf.zp, w);
}

Poe2Proof poe2_decode_body(const RingCtx& ctx, ByteReader& r) {
    const ParamSet& ps = ctx.params();
    Poe2Proof pf;
    pf.w = ctx.decode_vec(r, ps.kappa);
    pf.wp = ctx.decode_vec(r, ps.kappa);
    pf.u1 = ctx.decode(r);
    pf.u2 = ctx.decode(r);
    pf.u3 = ctx.decode(r);
    pf.z = ctx.decode_vec(r, ps.width());
    pf.zp = ctx.decode_vec(r, ps.width());
    return pf;
}

VerifyResult poe2_checks(const RingCtx& ctx, const PublicParams& pp, const Poe2Statement& stmt,
                         const Poe2Proof& pf, const RingElem& c) {
    const ParamSet& ps = ctx.params();
    const u64 nd = static_cast<u64>(ps.width()) * ps.d;
    if (!l2_within(ctx, pf.z, ps.poe2.s1, nd)) return VerifyResult::fail("poe2:norm");
    if (!l2_within(ctx, pf.zp, ps.poe2.s1, nd)) return VerifyResult::fail("poe2:norm-prime");

    const auto zh = ctx.to_ntt(pf.z);
    const auto zph = ctx.to_ntt(pf.zp);
    const RingVec az = ctx.matvec_ntt(pp.tx.A, zh);
    const RingVec azp = ctx.matvec_ntt(pp.tx.A, zph);
    for (u32 i = 0; i < ps.kappa; ++i) {
        if (!(az[i] == ctx.add(pf.w[i], ctx.mul(c, stmt.com->c0[i]))))
            return VerifyResult::fail("poe2:matrix");
        if (!(azp[i] == ctx.add(pf.wp[i], ctx.mul(c, stmt.comp->c0[i]))))
            return VerifyResult::fail("poe2:matrix-prime");
    }

    const std::vector<NttVec>* rows[3] = {&stmt.pk->pk1_ntt, &stmt.pk->pk2_ntt, &pp.tx.B};
    const RingElem* cm[3] = {&stmt.com->c1, &stmt.com->c2, &stmt.com->c3};
    const RingElem* cmp[3] = {&stmt.comp->c1, &stmt.comp->c2, &stmt.comp->c3};
    const RingElem* us[3] = {&pf.u1, &pf.u2, &pf.u3};
    for (int i = 0; i < 3; ++i) {
        const RingElem lhs =
            ctx.sub(ctx.row_dot_ntt(*rows[i], zh), ctx.row_dot_ntt(*rows[i], zph));
        const RingElem rhs = ctx.add(ctx.mul(ctx.sub(*cm[i], *cmp[i]), c), *us[i]);
        if (!(lhs == rhs)) return VerifyResult::fail("poe2:cross");
    }
    return VerifyResult::pass();
}

Bytes prove_poe2(const RingCtx& ctx, const PublicParams& pp, const Poe2Statement& stmt,
                 const RingVec& r, const RingVec& rp, Rng& rng, const ProveOptions& opt) {
    const ParamSet& ps = ctx.params();
    const size_t nd = static_cast<size_t>(ps.width()) * ps.d;
    const GaussianSampler gs = GaussianSampler::from_sigma_sq(ps.poe2.s1);

    for (u32 attempt = 0; attempt < opt.max_attempts; ++attempt) {
        FsOracle fs("poe2");
        poe2_absorb_statement(ctx, fs, stmt);

        Poe2Proof pf;
        RingVec y = pack_ints(ctx, gs.sample_vec(rng, nd));
        RingVec yp = pack_ints(ctx, gs.sample_vec(rng, nd));
        const auto yh = ctx.to_ntt(y);
        const auto yph = ctx.to_ntt(yp);
        pf.w = ctx.matvec_ntt(pp.tx.A, yh);
        pf.wp = ctx.matvec_ntt(pp.tx.A, yph);
        const std::vector<NttVec>* rows[3] = {&stmt.pk->pk1_ntt, &stmt.pk->pk2_ntt, &pp.tx.B};
        RingElem* us[3] = {&pf.u1, &pf.u2, &pf.u3};
        for (int i = 0; i < 3; ++i)
            *us[i] = ctx.sub(ctx.row_dot_ntt(*rows[i], yh), ctx.row_dot_ntt(*rows[i], yph));

        poe2_absorb_first(ctx, fs, pf);
        const RingElem c = fs.challenge(ctx);

        const RingVec cr = ctx.vscale(c, r);
        const RingVec crp = ctx.vscale(c, rp);
        pf.z = ctx.vadd(y, cr);
        pf.zp = ctx.vadd(yp, crp);
        if (!opt.skip_rejection) {
            if (!rej_accept(rng, ctx.centered(pf.z), ctx.centered(cr), ps.poe2.s1)) continue;
            if (!rej_accept(rng, ctx.centered(pf.zp), ctx.centered(crp), ps.poe2.s1)) continue;
        }
        ByteWriter w;
        write_proof_header(w, ProofKind::PoE2, opt);
        poe2_encode_body(ctx, pf, w);
        return w.take();
    }
    throw ProveError("poe2: rejection-sampling attempt cap exceeded");
}

VerifyResult verify_poe2(const RingCtx& ctx, const PublicParams& pp, const Poe2Statement& stmt,
                         const Bytes& proof) {
    Poe2Proof pf;
    try {
        ByteReader r(proof);
        read_proof_header(r, ProofKind::PoE2);
        pf = poe2_decode_body(ctx, r);
        r.expect_done();
    } catch (const ParseError& e) {
        return VerifyResult::fail(std::string("poe2:parse:") + e.what());
    }
    FsOracle fs("poe2");
    poe2_absorb_statement(ctx, fs, stmt);
    poe2_absorb_first(ctx, fs, pf);
    const RingElem c = fs.challenge(ctx);
    return poe2_checks(ctx, pp, stmt, pf, c);
}

Poe2Proof simulate_poe2(const RingCtx& ctx, const PublicParams& pp, const Poe2Statement& stmt,
                        const RingElem& c, Rng& rng) {
    const ParamSet& ps = ctx.params();
    const size_t nd = static_cast<size_t>(ps.width()) * ps.d;
    const GaussianSampler gs = GaussianSampler::from_sigma_sq(ps.poe2.s1);
    Poe2Proof pf;
    pf.z = pack_ints(ctx, gs.sample_vec(rng, nd));
    pf.zp = pack_ints(ctx, gs.sample_vec(rng, nd));
    const auto zh = ctx.to_ntt(pf.z);
    const auto zph = ctx.to_ntt(pf.zp);
    const RingVec az = ctx.matvec_ntt(pp.tx.A, zh);
    const RingVec azp = ctx.matvec_ntt(pp.tx.A, zph);
    pf.w.clear();
    pf.wp.clear();
    for (u32 i = 0; i < ps.kappa; ++i) {
        pf.w.push_back(ctx.sub(az[i], ctx.mul(c, stmt.com->c0[i])));
        pf.wp.push_back(ctx.sub(azp[i], ctx.mul(c, stmt.comp->c0[i])));
    }
    const std::vector<NttVec>* rows[3] = {&stmt.pk->pk1_ntt, &stmt.pk->pk2_ntt, &pp.tx.B};
    const RingElem* cm[3] = {&stmt.com->c1, &stmt.com->c2, &stmt.com->c3};
    const RingElem* cmp[3] = {&stmt.comp->c1, &stmt.comp->c2, &stmt.comp->c3};
    RingElem* us[3] = {&pf.u1, &pf.u2, &pf.u3};
    for (int i = 0; i < 3; ++i) {
        const RingElem bz =
            ctx.sub(ctx.row_dot_ntt(*rows[i], zh), ctx.row_dot_ntt(*rows[i], zph));
        *us[i] = ctx.sub(bz, ctx.mul(ctx.sub(*cm[i], *cmp[i]), c));
    }
    return pf;
}

}  // namespace pqledger
