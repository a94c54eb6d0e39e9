#include "pqledger/zkp.hpp"

namespace pqledger {

// Range proof: the balance is committed twice, once directly and once as the
// inverse NTT of its bit decomposition. A product check forces the NTT slots
// of v_bin to be bits, and an unstructured linear check against the
// power-of-two Vandermonde row decodes them back to the committed value.

namespace {

void absorb_statement(const RingCtx& ctx, FsOracle& fs, const PoaStatement& stmt) {
    fs.absorb(stmt.context);
    fs.absorb_vec(ctx, stmt.pk->pk1);
    fs.absorb_elem(ctx, *stmt.com1p);
}

void absorb_first(const RingCtx& ctx, FsOracle& fs, const PoaProof& pf) {
    fs.absorb_vec(ctx, pf.f0);
    fs.absorb_elem(ctx, pf.f1);
    fs.absorb_elem(ctx, pf.u1);
    fs.absorb_elem(ctx, pf.u2);
    fs.absorb_elem(ctx, pf.u3);
    fs.absorb_vec(ctx, pf.w);
}

// binary(value) placed slot-wise: slot i holds bit i as a constant.
RingElem bits_to_ring(const RingCtx& ctx, u64 value) {
    NttVec v{std::vector<u128>(ctx.d(), 0)};
    for (u32 i = 0; i < ctx.params().value_bits; ++i)
        v.c[static_cast<size_t>(i) * ctx.m()] = (value >> i) & 1;
    return ctx.intt(v);
}

// NTT^{-1}(phi) and NTT^{-1}(Q^T phi) for phi given as d slot coefficients.
void vandermonde_pair(const RingCtx& ctx, const std::vector<u128>& phi, RingElem& p_phi,
                      RingElem& p_qphi) {
    const u32 m = ctx.m();
    NttVec pv{std::vector<u128>(ctx.d(), 0)};
    std::vector<u128> slot_sum(m, 0);
    for (u32 i = 0; i < ctx.d(); ++i) {
        pv.c[i] = phi[i];
        slot_sum[i % m] = ctx.zq().add(slot_sum[i % m], phi[i]);
    }
    p_phi = ctx.intt(pv);
    NttVec qv{std::vector<u128>(ctx.d(), 0)};
    u128 pow2 = 1;
    for (u32 i = 0; i < ctx.params().value_bits; ++i) {
        for (u32 t = 0; t < m; ++t)
            qv.c[static_cast<size_t>(i) * m + t] = ctx.zq().mul(pow2, slot_sum[t]);
        pow2 = ctx.zq().add(pow2, pow2);
    }
    p_qphi = ctx.intt(qv);
}

}  // namespace

void poa_encode_body(const RingCtx& ctx, const PoaProof& pf, ByteWriter& w) {
    ctx.encode_vec(pf.f0, w);
    ctx.encode(pf.f1, w);
    ctx.encode(pf.u1, w);
    ctx.encode(pf.u2, w);
    ctx.encode(pf.u3, w);
    ctx.encode_vec(pf.w, w);
    ctx.encode(pf.h, w);
    ctx.encode(pf.u4, w);
    ctx.encode_vec(pf.z, w);
}

PoaProof poa_decode_body(const RingCtx& ctx, ByteReader& r) {
    const ParamSet& ps = ctx.params();
    PoaProof pf;
    pf.f0 = ctx.decode_vec(r, ps.kappa);
    pf.f1 = ctx.decode(r);
    pf.u1 = ctx.decode(r);
    pf.u2 = ctx.decode(r);
    pf.u3 = ctx.decode(r);
    pf.w = ctx.decode_vec(r, ps.kappa);
    pf.h = ctx.decode(r);
    pf.u4 = ctx.decode(r);
    pf.z = ctx.decode_vec(r, ps.width());
    return pf;
}

VerifyResult poa_checks(const RingCtx& ctx, const PublicParams& pp, const PoaStatement& stmt,
                        const PoaProof& pf, const std::vector<u128>& phi, const RingElem& c) {
    const ParamSet& ps = ctx.params();
    const u64 nd = static_cast<u64>(ps.width()) * ps.d;
    if (!l2_within(ctx, pf.z, ps.poa.s1, nd)) return VerifyResult::fail("poa:a");

    const auto zh = ctx.to_ntt(pf.z);
    const RingVec az = ctx.matvec_ntt(pp.tx.A, zh);
    for (u32 i = 0; i < ps.kappa; ++i)
        if (!(az[i] == ctx.add(pf.w[i], ctx.mul(c, pf.f0[i])))) return VerifyResult::fail("poa:b");

    const RingElem abz = ctx.row_dot_ntt(pp.poa.a_bin, zh);
    const RingElem t1 = ctx.sub(abz, ctx.mul(c, pf.f1));
    {
        RingElem lhs = ctx.mul(t1, ctx.add(t1, c));
        ctx.add_inplace(lhs, ctx.row_dot_ntt(pp.poa.a_bin_p, zh));
        ctx.sub_inplace(lhs, ctx.mul(c, pf.u1));
        ctx.sub_inplace(lhs, pf.u3);
        if (!(lhs == ctx.zero())) return VerifyResult::fail("poa:c");
    }
    RingElem p_phi, p_qphi;
    vandermonde_pair(ctx, phi, p_phi, p_qphi);
    {
        RingElem lhs = ctx.mul(p_qphi, pf.f1);
        ctx.sub_inplace(lhs, ctx.mul(p_phi, *stmt.com1p));
        ctx.add_inplace(lhs, pf.u2);
        ctx.sub_inplace(lhs, pf.h);
        lhs = ctx.mul(c, lhs);
        ctx.add_inplace(lhs, pf.u4);
        RingElem rhs = ctx.row_dot_ntt(pp.poa.a_g, zh);
        ctx.add_inplace(rhs, ctx.mul(abz, p_qphi));
        ctx.sub_inplace(rhs, ctx.mul(ctx.row_dot_ntt(stmt.pk->pk1_ntt, zh), p_phi));
        if (!(lhs == rhs)) return VerifyResult::fail("poa:d");
    }
    for (u32 t = 0; t < ctx.m(); ++t)
        if (pf.h.c[t] != 0) return VerifyResult::fail("poa:e");
    return VerifyResult::pass();
}

Bytes prove_poa_with_vbin(const RingCtx& ctx, const PublicParams& pp, const PoaStatement& stmt,
                          const RingVec& r, const RingElem& value_ring, const RingElem& v_bin,
                          Rng& rng, const ProveOptions& opt) {
    const ParamSet& ps = ctx.params();
    const size_t nd = static_cast<size_t>(ps.width()) * ps.d;
    const GaussianSampler gs = GaussianSampler::from_sigma_sq(ps.poa.s1);
    const auto rh = ctx.to_ntt(r);

    for (u32 attempt = 0; attempt < opt.max_attempts; ++attempt) {
        FsOracle fs("poa");
        absorb_statement(ctx, fs, stmt);

        PoaProof pf;
        RingVec y = pack_ints(ctx, gs.sample_vec(rng, nd));
        const auto yh = ctx.to_ntt(y);
        const RingElem g = sample_uniform_zero_prefix(rng, ctx, ctx.m());

        pf.f0 = ctx.matvec_ntt(pp.tx.A, rh);
        pf.f1 = ctx.add(ctx.row_dot_ntt(pp.poa.a_bin, rh), v_bin);
        const RingElem aby = ctx.row_dot_ntt(pp.poa.a_bin, yh);
        // v_bin' = <a_bin, y> (1 - 2 v_bin)
        RingElem one_minus_2v = ctx.sub(ctx.one(), ctx.scalar_mul(2, v_bin));
        const RingElem vbp = ctx.mul(aby, one_minus_2v);
        pf.u1 = ctx.add(ctx.row_dot_ntt(pp.poa.a_bin_p, rh), vbp);
        pf.u2 = ctx.add(ctx.row_dot_ntt(pp.poa.a_g, rh), g);
        pf.u3 = ctx.add(ctx.mul(aby, aby), ctx.row_dot_ntt(pp.poa.a_bin_p, yh));
        pf.w = ctx.matvec_ntt(pp.tx.A, yh);

        absorb_first(ctx, fs, pf);
        const std::vector<u128> phi = fs.scalars(ctx, ps.d, "phi");

        RingElem p_phi, p_qphi;
        vandermonde_pair(ctx, phi, p_phi, p_qphi);
        pf.u4 = ctx.row_dot_ntt(pp.poa.a_g, yh);
        ctx.add_inplace(pf.u4, ctx.mul(aby, p_qphi));
        ctx.sub_inplace(pf.u4, ctx.mul(ctx.row_dot_ntt(stmt.pk->pk1_ntt, yh), p_phi));
        pf.h = ctx.mul(v_bin, p_qphi);
        ctx.sub_inplace(pf.h, ctx.mul(value_ring, p_phi));
        ctx.add_inplace(pf.h, g);

        fs.absorb_elem(ctx, pf.h);
        fs.absorb_elem(ctx, pf.u4);
        const RingElem c = fs.challenge(ctx);

        const RingVec cr = ctx.vscale(c, r);
        pf.z = ctx.vadd(y, cr);
        if (!opt.skip_rejection &&
            !rej_accept(rng, ctx.centered(pf.z), ctx.centered(cr), ps.poa.s1))
            continue;

        ByteWriter w;
        write_proof_header(w, ProofKind::PoA, opt);
        poa_encode_body(ctx, pf, w);
        return w.take();
    }
    throw ProveError("poa: rejection-sampling attempt cap exceeded");
}

Bytes prove_poa(const RingCtx& ctx, const PublicParams& pp, const PoaStatement& stmt,
                const RingVec& r, const RingElem& value_ring, u64 value_bits, Rng& rng,
                const ProveOptions& opt) {
    return prove_poa_with_vbin(ctx, pp, stmt, r, value_ring, bits_to_ring(ctx, value_bits), rng,
                               opt);
}

VerifyResult verify_poa(const RingCtx& ctx, const PublicParams& pp, const PoaStatement& stmt,
                        const Bytes& proof) {
    PoaProof pf;
    try {
        ByteReader r(proof);
        read_proof_header(r, ProofKind::PoA);
        pf = poa_decode_body(ctx, r);
        r.expect_done();
    } catch (const ParseError& e) {
        return VerifyResult::fail(std::string("poa:parse:") + e.what());
    }
    FsOracle fs("poa");
    absorb_statement(ctx, fs, stmt);
    absorb_first(ctx, fs, pf);
    const std::vector<u128> phi = fs.scalars(ctx, ctx.params().d, "phi");
    fs.absorb_elem(ctx, pf.h);
    fs.absorb_elem(ctx, pf.u4);
    const RingElem c = fs.challenge(ctx);
    return poa_checks(ctx, pp, stmt, pf, phi, c);
}

}  // namespace pqledger
