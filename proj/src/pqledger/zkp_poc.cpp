#include "pqledger/zkp.hpp"

namespace pqledger {

// Consistency proof: ABDLOP commitment to (r, v), approximate range proof on
// r through a Bin1 projection, vanishing-constant-coefficient argument, and
// the five-row linear system tying the auxiliary commitment to the
// transaction commitment rows (1, sqrt q, 1 structure included).

namespace {

void absorb_statement(const RingCtx& ctx, FsOracle& fs, const PocStatement& stmt) {
    fs.absorb(stmt.context);
    fs.absorb_vec(ctx, stmt.pk->pk1);
    fs.absorb_vec(ctx, stmt.pk->pk2);
    ByteWriter w;
    encode_commitment(ctx, *stmt.com, w);
    w.u8v(stmt.constrain_value_coeffs ? 1 : 0);
    fs.absorb(w.bytes());
}

void absorb_prefix(const RingCtx& ctx, FsOracle& fs, const PocProof& pf) {
    fs.absorb_vec(ctx, pf.f0);
    fs.absorb_elem(ctx, pf.f1);
    fs.absorb_vec(ctx, pf.u1);
    fs.absorb_elem(ctx, pf.u2);
}

void absorb_mid(const RingCtx& ctx, FsOracle& fs, const PocProof& pf) {
    fs.absorb_elem(ctx, pf.h);
    fs.absorb_vec(ctx, pf.w);
    fs.absorb_vec(ctx, pf.v);
}

// sum_{j=2..d/2} d2_{j-1} sigma_{-1}(X^{j-1}); pins value coefficients
// 1..d/2-1 once the constant coefficient of h is checked.
RingElem value_coeff_comb(const RingCtx& ctx, const std::vector<u128>& d2) {
    RingElem e = ctx.zero();
    for (size_t idx = 0; idx < d2.size(); ++idx) {
        const u32 o = static_cast<u32>(idx) + 1;  // position j-1 for j = idx+2
        e.c[ctx.d() - o] = ctx.zq().sub(e.c[ctx.d() - o], d2[idx]);
    }
    return e;
}

RingElem dot_blocks(const RingCtx& ctx, const RingVec& a, const RingVec& b) {
    RingElem acc = ctx.zero();
    for (size_t i = 0; i < a.size(); ++i) ctx.add_inplace(acc, ctx.mul(a[i], b[i]));
    return acc;
}

}  // namespace

void poc_encode_body(const RingCtx& ctx, const PocProof& pf, ByteWriter& w) {
    ctx.encode_vec(pf.f0, w);
    ctx.encode(pf.f1, w);
    ctx.encode_vec(pf.u1, w);
    ctx.encode(pf.u2, w);
    for (i64 x : pf.z3) w.i64v(x);
    ctx.encode(pf.h, w);
    ctx.encode_vec(pf.w, w);
    ctx.encode_vec(pf.v, w);
    ctx.encode_vec(pf.z1, w);
    ctx.encode_vec(pf.z2, w);
}

PocProof poc_decode_body(const RingCtx& ctx, ByteReader& r) {
    const ParamSet& ps = ctx.params();
    PocProof pf;
    pf.f0 = ctx.decode_vec(r, ps.kappa);
    pf.f1 = ctx.decode(r);
    pf.u1 = ctx.decode_vec(r, ps.proj_rows / ps.d);
    pf.u2 = ctx.decode(r);
    pf.z3.resize(ps.proj_rows);
    for (auto& x : pf.z3) x = r.i64v();
    pf.h = ctx.decode(r);
    pf.w = ctx.decode_vec(r, ps.kappa);
    pf.v = ctx.decode_vec(r, ps.kappa + 4);
    pf.z1 = ctx.decode_vec(r, ps.width());
    pf.z2 = ctx.decode_vec(r, ps.width());
    return pf;
}

VerifyResult poc_checks(const RingCtx& ctx, const PublicParams& pp, const PocStatement& stmt,
                        const PocProof& pf, const ProjMatrix& bigr,
                        const std::vector<u128>& d1, const std::vector<u128>& d2,
                        const RingElem& c) {
    const ParamSet& ps = ctx.params();
    const u32 n = ps.width();
    const u64 nd = static_cast<u64>(n) * ps.d;
    const Commitment& com = *stmt.com;

    if (!l2_within(ctx, pf.z1, ps.poc.s1, nd)) return VerifyResult::fail("poc:a");
    if (!l2_within(ctx, pf.z2, ps.poc.s2, nd)) return VerifyResult::fail("poc:b");
    const u128 inf_bound_sq = static_cast<u128>(2) * ps.proj_k() * ps.poc.s3;
    for (i64 x : pf.z3) {
        const u128 ax = abs_i128(x);
        if (ax * ax > inf_bound_sq) return VerifyResult::fail("poc:c");
    }
    if (pf.h.c[0] != 0) return VerifyResult::fail("poc:d");

    const auto z1h = ctx.to_ntt(pf.z1);
    const auto z2h = ctx.to_ntt(pf.z2);
    {
        const RingVec lhs =
            ctx.vadd(ctx.matvec_ntt(pp.poc.a1, z1h), ctx.matvec_ntt(pp.poc.a2, z2h));
        for (u32 i = 0; i < ps.kappa; ++i)
            if (!(lhs[i] == ctx.add(pf.w[i], ctx.mul(c, pf.f0[i]))))
                return VerifyResult::fail("poc:e");
    }

    // the five-row linear system
    const RingVec rprime = combine_rows_sigma(ctx, bigr, d1);
    const RingVec e1 = combine_units_sigma(ctx, d1, ps.proj_rows);
    const RingElem e2 = stmt.constrain_value_coeffs ? value_coeff_comb(ctx, d2) : ctx.zero();

    const RingElem yb = ctx.sub(ctx.mul(c, pf.f1), ctx.row_dot_ntt(pp.poc.b1, z2h));
    RingVec u1b = ctx.matvec_ntt(pp.poc.bc_p, z2h);
    for (size_t b = 0; b < u1b.size(); ++b) u1b[b] = ctx.sub(ctx.mul(c, pf.u1[b]), u1b[b]);
    const RingElem u2b = ctx.sub(ctx.mul(c, pf.u2), ctx.row_dot_ntt(pp.poc.bc_pp, z2h));

    const RingVec az1 = ctx.matvec_ntt(pp.tx.A, z1h);
    for (u32 i = 0; i < ps.kappa; ++i)
        if (!(ctx.sub(az1[i], ctx.mul(c, com.c0[i])) == pf.v[i]))
            return VerifyResult::fail("poc:f0");
    {
        const RingElem lhs = ctx.sub(
            ctx.add(ctx.row_dot_ntt(stmt.pk->pk1_ntt, z1h), yb), ctx.mul(c, com.c1));
        if (!(lhs == pf.v[ps.kappa])) return VerifyResult::fail("poc:f1");
    }
    {
        const RingElem lhs =
            ctx.sub(ctx.add(ctx.row_dot_ntt(stmt.pk->pk2_ntt, z1h),
                            ctx.scalar_mul(ps.sqrt_q, yb)),
                    ctx.mul(c, com.c2));
        if (!(lhs == pf.v[ps.kappa + 1])) return VerifyResult::fail("poc:f2");
    }
    {
        const RingElem lhs =
            ctx.sub(ctx.add(ctx.row_dot_ntt(pp.tx.B, z1h), yb), ctx.mul(c, com.c3));
        if (!(lhs == pf.v[ps.kappa + 2])) return VerifyResult::fail("poc:f3");
    }
    {
        const RingVec z3pack = pack_ints(ctx, pf.z3);
        RingElem lhs = dot_blocks(ctx, rprime, pf.z1);
        ctx.add_inplace(lhs, ctx.mul(e2, yb));
        ctx.add_inplace(lhs, dot_blocks(ctx, e1, u1b));
        ctx.add_inplace(lhs, u2b);
        RingElem corr = ctx.add(pf.h, dot_blocks(ctx, e1, z3pack));
        ctx.sub_inplace(lhs, ctx.mul(c, corr));
        if (!(lhs == pf.v[ps.kappa + 3])) return VerifyResult::fail("poc:f4");
    }
    return VerifyResult::pass();
}

Bytes prove_poc(const RingCtx& ctx, const PublicParams& pp, const PocStatement& stmt,
                const RingVec& r, const RingElem& value, Rng& rng, const ProveOptions& opt) {
    const ParamSet& ps = ctx.params();
    const u32 n = ps.width();
    const u32 prow = ps.proj_rows / ps.d;
    const size_t nd = static_cast<size_t>(n) * ps.d;
    const GaussianSampler g1 = GaussianSampler::from_sigma_sq(ps.poc.s1);
    const GaussianSampler g2 = GaussianSampler::from_sigma_sq(ps.poc.s2);
    const GaussianSampler g3 = GaussianSampler::from_sigma_sq(ps.poc.s3);

    const std::vector<i128> rflat = ctx.centered(r);

    for (u32 attempt = 0; attempt < opt.max_attempts; ++attempt) {
        FsOracle fs("poc");
        absorb_statement(ctx, fs, stmt);

        PocProof pf;
        const RingVec s = sample_chi_vec(rng, ctx, n);
        const RingElem g = sample_uniform_zero_prefix(rng, ctx, 1);

        const auto rh = ctx.to_ntt(r);
        const auto sh = ctx.to_ntt(s);
        pf.f0 = ctx.vadd(ctx.matvec_ntt(pp.poc.a1, rh), ctx.matvec_ntt(pp.poc.a2, sh));
        pf.f1 = ctx.add(ctx.row_dot_ntt(pp.poc.b1, sh), value);

        RingVec y1 = pack_ints(ctx, g1.sample_vec(rng, nd));
        RingVec y2 = pack_ints(ctx, g2.sample_vec(rng, nd));
        const std::vector<i64> y3 = g3.sample_vec(rng, ps.proj_rows);
        const RingVec y3pack = pack_ints(ctx, y3);

        pf.u1 = ctx.matvec_ntt(pp.poc.bc_p, sh);
        for (u32 b = 0; b < prow; ++b) ctx.add_inplace(pf.u1[b], y3pack[b]);
        pf.u2 = ctx.add(ctx.row_dot_ntt(pp.poc.bc_pp, sh), g);

        absorb_prefix(ctx, fs, pf);
        const auto rseed = fs.seed("R");
        const ProjMatrix bigr =
            expand_proj_matrix(rseed, "poc/R", ps.proj_rows, static_cast<u32>(nd));

        const std::vector<i128> proj = proj_mul(bigr, rflat);
        std::vector<i128> z3c(ps.proj_rows);
        pf.z3.resize(ps.proj_rows);
        for (u32 i = 0; i < ps.proj_rows; ++i) {
            z3c[i] = y3[i] + proj[i];
            pf.z3[i] = static_cast<i64>(z3c[i]);
        }
        if (!opt.skip_rejection && !rej_accept(rng, z3c, proj, ps.poc.s3)) continue;

        fs.absorb_ints(pf.z3);
        const std::vector<u128> d1 = fs.scalars(ctx, ps.proj_rows, "d1");
        std::vector<u128> d2;
        if (stmt.constrain_value_coeffs) d2 = fs.scalars(ctx, ps.d / 2 - 1, "d2");

        const RingVec rprime = combine_rows_sigma(ctx, bigr, d1);
        const RingVec e1 = combine_units_sigma(ctx, d1, ps.proj_rows);
        const RingElem e2 =
            stmt.constrain_value_coeffs ? value_coeff_comb(ctx, d2) : ctx.zero();

        // x = R'·r + E1·(y3 - z3) + E2·v ; h = g + x
        RingElem x = dot_blocks(ctx, rprime, r);
        ctx.add_inplace(x, dot_blocks(ctx, e1, ctx.vsub(y3pack, pack_ints(ctx, pf.z3))));
        ctx.add_inplace(x, ctx.mul(e2, value));
        pf.h = ctx.add(g, x);

        const auto y1h = ctx.to_ntt(y1);
        const auto y2h = ctx.to_ntt(y2);
        pf.w = ctx.vadd(ctx.matvec_ntt(pp.poc.a1, y1h), ctx.matvec_ntt(pp.poc.a2, y2h));

        // v = T [y1, -B1 y2, -Bc' y2, -Bc'' y2]
        const RingElem b1y2 = ctx.row_dot_ntt(pp.poc.b1, y2h);
        RingVec bcp_y2 = ctx.matvec_ntt(pp.poc.bc_p, y2h);
        const RingElem bcpp_y2 = ctx.row_dot_ntt(pp.poc.bc_pp, y2h);
        pf.v = ctx.matvec_ntt(pp.tx.A, y1h);  // rows 0..kappa-1
        pf.v.push_back(ctx.sub(ctx.row_dot_ntt(stmt.pk->pk1_ntt, y1h), b1y2));
        pf.v.push_back(ctx.sub(ctx.row_dot_ntt(stmt.pk->pk2_ntt, y1h),
                               ctx.scalar_mul(ps.sqrt_q, b1y2)));
        pf.v.push_back(ctx.sub(ctx.row_dot_ntt(pp.tx.B, y1h), b1y2));
        {
            RingElem v4 = dot_blocks(ctx, rprime, y1);
            ctx.sub_inplace(v4, ctx.mul(e2, b1y2));
            ctx.sub_inplace(v4, dot_blocks(ctx, e1, bcp_y2));
            ctx.sub_inplace(v4, bcpp_y2);
            pf.v.push_back(v4);
        }

        absorb_mid(ctx, fs, pf);
        const RingElem c = fs.challenge(ctx);

        const RingVec cr = ctx.vscale(c, r);
        const RingVec cs = ctx.vscale(c, s);
        pf.z1 = ctx.vadd(y1, cr);
        pf.z2 = ctx.vadd(y2, cs);
        if (!opt.skip_rejection) {
            if (!rej_accept(rng, ctx.centered(pf.z1), ctx.centered(cr), ps.poc.s1)) continue;
            if (!rej_accept(rng, ctx.centered(pf.z2), ctx.centered(cs), ps.poc.s2)) continue;
        }

        ByteWriter w;
        write_proof_header(w, ProofKind::PoC, opt);
        poc_encode_body(ctx, pf, w);
        return w.take();
    }
    throw ProveError("poc: rejection-sampling attempt cap exceeded");
}

VerifyResult verify_poc(const RingCtx& ctx, const PublicParams& pp, const PocStatement& stmt,
                        const Bytes& proof) {
    const ParamSet& ps = ctx.params();
    PocProof pf;
    try {
        ByteReader r(proof);
        read_proof_header(r, ProofKind::PoC);
        pf = poc_decode_body(ctx, r);
        r.expect_done();
    } catch (const ParseError& e) {
        return VerifyResult::fail(std::string("poc:parse:") + e.what());
    }
    FsOracle fs("poc");
    absorb_statement(ctx, fs, stmt);
    absorb_prefix(ctx, fs, pf);
    const auto rseed = fs.seed("R");
    const ProjMatrix bigr = expand_proj_matrix(rseed, "poc/R", ps.proj_rows,
                                               static_cast<u32>(ps.width()) * ps.d);
    fs.absorb_ints(pf.z3);
    const std::vector<u128> d1 = fs.scalars(ctx, ps.proj_rows, "d1");
    std::vector<u128> d2;
    if (stmt.constrain_value_coeffs) d2 = fs.scalars(ctx, ps.d / 2 - 1, "d2");
    absorb_mid(ctx, fs, pf);
    const RingElem c = fs.challenge(ctx);
    return poc_checks(ctx, pp, stmt, pf, bigr, d1, d2, c);
}

}  // namespace pqledger
