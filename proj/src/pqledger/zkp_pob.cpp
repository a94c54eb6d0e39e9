#include "pqledger/zkp.hpp"

namespace pqledger {

// Balance proof: a BDLOP opening of the row-wise commitment sum whose value
// row opens to zero. Three moves: (w, u) -> c -> z.

void pob_absorb_statement(const RingCtx& ctx, FsOracle& fs, const PobStatement& stmt) {
    fs.absorb(stmt.context);
    fs.absorb_vec(ctx, stmt.sum_com0);
    fs.absorb_elem(ctx, stmt.sum_com3);
    ByteWriter w;
    w.u32v(stmt.n_parties);
    fs.absorb(w.bytes());
}

Bytes pob_serialize(const RingCtx& ctx, const PobProof& pf, const ProveOptions& opt) {
    ByteWriter w;
    write_proof_header(w, ProofKind::PoB, opt);
    ctx.encode_vec(pf.w, w);
    ctx.encode(pf.u, w);
    ctx.encode_vec(pf.z, w);
    return w.take();
}

PobProof pob_deserialize(const RingCtx& ctx, const Bytes& b) {
    ByteReader r(b);
    read_proof_header(r, ProofKind::PoB);
    const ParamSet& ps = ctx.params();
    PobProof pf;
    pf.w = ctx.decode_vec(r, ps.kappa);
    pf.u = ctx.decode(r);
    pf.z = ctx.decode_vec(r, ps.width());
    r.expect_done();
    return pf;
}

VerifyResult pob_checks(const RingCtx& ctx, const PublicParams& pp, const PobStatement& stmt,
                        const PobProof& pf, const RingElem& c) {
    const ParamSet& ps = ctx.params();
    const u64 nd = static_cast<u64>(ps.width()) * ps.d;
    if (!l2_within(ctx, pf.z, ps.pob_sigma_sq(stmt.n_parties), nd))
        return VerifyResult::fail("pob:norm");
    const auto zh = ctx.to_ntt(pf.z);
    const RingVec az = ctx.matvec_ntt(pp.tx.A, zh);
    for (u32 i = 0; i < ps.kappa; ++i) {
        const RingElem rhs = ctx.add(pf.w[i], ctx.mul(c, stmt.sum_com0[i]));
        if (!(az[i] == rhs)) return VerifyResult::fail("pob:matrix");
    }
    const RingElem bz = ctx.row_dot_ntt(pp.tx.B, zh);
    const RingElem rhs = ctx.add(pf.u, ctx.mul(c, stmt.sum_com3));
    if (!(bz == rhs)) return VerifyResult::fail("pob:value");
    return VerifyResult::pass();
}

Bytes prove_pob(const RingCtx& ctx, const PublicParams& pp, const PobStatement& stmt,
                const RingVec& r_sum, Rng& rng, const ProveOptions& opt) {
    const ParamSet& ps = ctx.params();
    const u32 n = ps.width();
    const u128 sigma_sq = ps.pob_sigma_sq(stmt.n_parties);
    const GaussianSampler gs = GaussianSampler::from_sigma_sq(sigma_sq);

    for (u32 attempt = 0; attempt < opt.max_attempts; ++attempt) {
        FsOracle fs("pob");
        pob_absorb_statement(ctx, fs, stmt);

        PobProof pf;
        RingVec y = pack_ints(ctx, gs.sample_vec(rng, static_cast<size_t>(n) * ps.d));
        const auto yh = ctx.to_ntt(y);
        pf.w = ctx.matvec_ntt(pp.tx.A, yh);
        pf.u = ctx.row_dot_ntt(pp.tx.B, yh);

        fs.absorb_vec(ctx, pf.w);
        fs.absorb_elem(ctx, pf.u);
        const RingElem c = fs.challenge(ctx);

        const RingVec cr = ctx.vscale(c, r_sum);
        pf.z = ctx.vadd(y, cr);
        if (!opt.skip_rejection &&
            !rej_accept(rng, ctx.centered(pf.z), ctx.centered(cr), sigma_sq))
            continue;
        return pob_serialize(ctx, pf, opt);
    }
    throw ProveError("pob: rejection-sampling attempt cap exceeded");
}

VerifyResult verify_pob(const RingCtx& ctx, const PublicParams& pp, const PobStatement& stmt,
                        const Bytes& proof) {
    PobProof pf;
    try {
        pf = pob_deserialize(ctx, proof);
    } catch (const ParseError& e) {
        return VerifyResult::fail(std::string("pob:parse:") + e.what());
    }
    FsOracle fs("pob");
    pob_absorb_statement(ctx, fs, stmt);
    fs.absorb_vec(ctx, pf.w);
    fs.absorb_elem(ctx, pf.u);
    const RingElem c = fs.challenge(ctx);
    return pob_checks(ctx, pp, stmt, pf, c);
}

PobProof simulate_pob(const RingCtx& ctx, const PublicParams& pp, const PobStatement& stmt,
                      const RingElem& c, Rng& rng) {
    const ParamSet& ps = ctx.params();
    const GaussianSampler gs = GaussianSampler::from_sigma_sq(ps.pob_sigma_sq(stmt.n_parties));
    PobProof pf;
    pf.z = pack_ints(ctx, gs.sample_vec(rng, static_cast<size_t>(ps.width()) * ps.d));
    const auto zh = ctx.to_ntt(pf.z);
    const RingVec az = ctx.matvec_ntt(pp.tx.A, zh);
    pf.w.clear();
    for (u32 i = 0; i < ps.kappa; ++i)
        pf.w.push_back(ctx.sub(az[i], ctx.mul(c, stmt.sum_com0[i])));
    pf.u = ctx.sub(ctx.row_dot_ntt(pp.tx.B, zh), ctx.mul(c, stmt.sum_com3));
    return pf;
}

}  // namespace pqledger
