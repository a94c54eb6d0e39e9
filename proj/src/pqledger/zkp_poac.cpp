#include "pqledger/zkp.hpp"

namespace pqledger {

// Compact multi-asset range proof: all d per-asset values of the committed
// ring element are decomposed into beta auxiliary binary commitments, and a
// single random-combination quadratic relation with vanishing constant
// coefficient simultaneously checks the projection response, binarity and
// per-coefficient reconstruction.

namespace {

void absorb_statement(const RingCtx& ctx, FsOracle& fs, const PoacStatement& stmt) {
    fs.absorb(stmt.context);
    ByteWriter w;
    encode_commitment(ctx, *stmt.com, w);
    fs.absorb(w.bytes());
}

void absorb_first(const RingCtx& ctx, FsOracle& fs, const PoacProof& pf) {
    fs.absorb_vec(ctx, pf.u0);
    fs.absorb_vec(ctx, pf.u_y2);
    fs.absorb_elem(ctx, pf.u_g);
    fs.absorb_vec(ctx, pf.u_bin);
}

void absorb_mid(const RingCtx& ctx, FsOracle& fs, const PoacProof& pf) {
    fs.absorb_elem(ctx, pf.h);
    fs.absorb_vec(ctx, pf.w1);
    fs.absorb_vec(ctx, pf.w2);
    fs.absorb_elem(ctx, pf.v);
    fs.absorb_elem(ctx, pf.u_g1);
}

// Flattened binary decomposition: element alpha packs the values with
// indices [alpha*(d/beta), (alpha+1)*(d/beta)), beta bits each.
RingVec binary_decompose(const RingCtx& ctx, const RingElem& value) {
    const u32 beta = ctx.params().beta_bits;
    const u32 per = ctx.d() / beta;  // values per element
    RingVec out(beta, ctx.zero());
    for (u32 j = 0; j < ctx.d(); ++j) {
        const u128 val = value.c[j];
        const u32 alpha = j / per;
        const u32 shift = (j % per) * beta;
        for (u32 i = 0; i < beta; ++i) out[alpha].c[shift + i] = (val >> i) & 1;
    }
    return out;
}

// W_alpha = sum_{j: block(j)=alpha} d2_j sigma_{-1}(pow(2^beta-1, shift_j))
// and U = sum_j d2_j sigma_{-1}(X^{j-1}).
void reconstruction_combos(const RingCtx& ctx, const std::vector<u128>& d2, RingVec& w_alpha,
                           RingElem& u_comb) {
    const u32 beta = ctx.params().beta_bits;
    const u32 per = ctx.d() / beta;
    const u32 d = ctx.d();
    const Zq& zq = ctx.zq();
    w_alpha.assign(beta, ctx.zero());
    u_comb = ctx.zero();
    for (u32 j = 0; j < d; ++j) {
        const u32 alpha = j / per;
        const u32 shift = (j % per) * beta;
        u128 pow2 = 1;
        for (u32 i = 0; i < beta; ++i) {
            const u32 o = shift + i;
            const u128 coef = zq.mul(pow2, d2[j]);
            if (o == 0)
                w_alpha[alpha].c[0] = zq.add(w_alpha[alpha].c[0], coef);
            else
                w_alpha[alpha].c[d - o] = zq.sub(w_alpha[alpha].c[d - o], coef);
            pow2 = zq.add(pow2, pow2);
        }
        if (j == 0)
            u_comb.c[0] = zq.add(u_comb.c[0], d2[j]);
        else
            u_comb.c[d - j] = zq.sub(u_comb.c[d - j], d2[j]);
    }
}

RingElem dot_blocks(const RingCtx& ctx, const RingVec& a, const RingVec& b) {
    RingElem acc = ctx.zero();
    for (size_t i = 0; i < a.size(); ++i) ctx.add_inplace(acc, ctx.mul(a[i], b[i]));
    return acc;
}

}  // namespace

void poac_encode_body(const RingCtx& ctx, const PoacProof& pf, ByteWriter& w) {
    ctx.encode_vec(pf.u0, w);
    ctx.encode_vec(pf.u_y2, w);
    ctx.encode(pf.u_g, w);
    ctx.encode_vec(pf.u_bin, w);
    for (i64 x : pf.z2) w.i64v(x);
    ctx.encode(pf.h, w);
    ctx.encode_vec(pf.w1, w);
    ctx.encode_vec(pf.w2, w);
    ctx.encode(pf.v, w);
    ctx.encode(pf.u_g1, w);
    ctx.encode_vec(pf.z1, w);
    ctx.encode_vec(pf.z3, w);
}

PoacProof poac_decode_body(const RingCtx& ctx, ByteReader& r) {
    const ParamSet& ps = ctx.params();
    PoacProof pf;
    pf.u0 = ctx.decode_vec(r, ps.kappa);
    pf.u_y2 = ctx.decode_vec(r, ps.proj_rows / ps.d);
    pf.u_g = ctx.decode(r);
    pf.u_bin = ctx.decode_vec(r, ps.beta_bits);
    pf.z2.resize(ps.proj_rows);
    for (auto& x : pf.z2) x = r.i64v();
    pf.h = ctx.decode(r);
    pf.w1 = ctx.decode_vec(r, ps.kappa);
    pf.w2 = ctx.decode_vec(r, ps.kappa);
    pf.v = ctx.decode(r);
    pf.u_g1 = ctx.decode(r);
    pf.z1 = ctx.decode_vec(r, ps.width() + ps.beta_bits);
    pf.z3 = ctx.decode_vec(r, ps.width());
    return pf;
}

VerifyResult poac_checks(const RingCtx& ctx, const PublicParams& pp, const PoacStatement& stmt,
                         const PoacProof& pf, const ProjMatrix& bigr,
                         const std::vector<u128>& d1, const std::vector<u128>& dq,
                         const std::vector<u128>& dr, const RingElem& c) {
    const ParamSet& ps = ctx.params();
    const u32 beta = ps.beta_bits;
    const u64 nbd = static_cast<u64>(ps.width() + beta) * ps.d;
    const u64 nd = static_cast<u64>(ps.width()) * ps.d;

    if (!l2_within(ctx, pf.z1, ps.poac.s1, nbd)) return VerifyResult::fail("poac:a1");
    if (!l2_within(ctx, pf.z3, ps.poac.s3, nd)) return VerifyResult::fail("poac:a3");
    {
        // ||z2|| <= 1.64 s2 sqrt(P): 625 ||z2||^2 <= 1681 P s2^2
        U256 sum{0, 0};
        for (i64 x : pf.z2) {
            const u128 ax = abs_i128(x);
            sum = add256(sum, mul_wide(ax, ax));
        }
        const U256 lhs = mul256_u64(sum, 625);
        const U256 rhs = mul_wide(static_cast<u128>(1681) * ps.proj_rows, ps.poac.s2);
        if (cmp256(lhs, rhs) > 0) return VerifyResult::fail("poac:b");
    }
    if (pf.h.c[0] != 0) return VerifyResult::fail("poac:c");

    const auto z1h = ctx.to_ntt(pf.z1);
    const auto z3h = ctx.to_ntt(pf.z3);
    {
        const RingVec lhs1 = ctx.matvec_ntt(pp.poac.a_a, z1h);
        const RingVec lhs2 = ctx.matvec_ntt(pp.tx.A, z3h);
        for (u32 i = 0; i < ps.kappa; ++i) {
            if (!(lhs1[i] == ctx.add(pf.w1[i], ctx.mul(c, pf.u0[i]))))
                return VerifyResult::fail("poac:d1");
            if (!(lhs2[i] == ctx.add(pf.w2[i], ctx.mul(c, stmt.com->c0[i]))))
                return VerifyResult::fail("poac:d2");
        }
    }

    // masked openings
    RingVec z_bin(beta);
    for (u32 a = 0; a < beta; ++a)
        z_bin[a] = ctx.sub(ctx.mul(c, pf.u_bin[a]), ctx.row_dot_ntt(pp.poac.b_bin[a], z1h));
    RingVec z_y2 = ctx.matvec_ntt(pp.poac.b_y2, z1h);
    for (size_t b = 0; b < z_y2.size(); ++b) z_y2[b] = ctx.sub(ctx.mul(c, pf.u_y2[b]), z_y2[b]);
    const RingElem z_g = ctx.sub(ctx.mul(c, pf.u_g), ctx.row_dot_ntt(pp.poac.b_g, z1h));
    const RingElem z_v = ctx.sub(ctx.mul(c, stmt.com->c3), ctx.row_dot_ntt(pp.tx.B, z3h));
    const RingElem fq = ctx.sub(ctx.mul(c, pf.u_g1), ctx.row_dot_ntt(pp.poac.b_g1, z1h));

    const RingVec rprime = combine_rows_sigma(ctx, bigr, d1);
    const RingVec e1 = combine_units_sigma(ctx, d1, ps.proj_rows);
    RingVec w_alpha;
    RingElem u_comb;
    reconstruction_combos(ctx, dr, w_alpha, u_comb);
    RingElem mone = ctx.zero();
    for (u32 i = 0; i < ctx.d(); ++i) mone.c[i] = ps.q - 1;  // the all-(-1) polynomial
    const RingElem smone = ctx.sigma_neg1(mone);

    RingElem rhs = dot_blocks(ctx, rprime, z_bin);
    ctx.add_inplace(rhs, dot_blocks(ctx, e1, z_y2));
    // reconstruction and z_g carry an explicit challenge factor
    ctx.add_inplace(rhs, dot_blocks(ctx, w_alpha, z_bin));
    ctx.sub_inplace(rhs, ctx.mul(u_comb, z_v));
    ctx.add_inplace(rhs, z_g);
    rhs = ctx.mul(c, rhs);
    for (u32 a = 0; a < beta; ++a) {
        RingElem quad = ctx.mul(ctx.sigma_neg1(z_bin[a]), z_bin[a]);
        ctx.add_inplace(quad, ctx.mul(c, ctx.mul(smone, z_bin[a])));
        ctx.add_inplace(rhs, ctx.scalar_mul(dq[a], quad));
    }
    RingElem corr = ctx.add(pf.h, dot_blocks(ctx, e1, pack_ints(ctx, pf.z2)));
    ctx.sub_inplace(rhs, ctx.mul(ctx.mul(c, c), corr));
    ctx.sub_inplace(rhs, fq);
    if (!(rhs == pf.v)) return VerifyResult::fail("poac:e");
    return VerifyResult::pass();
}

Bytes prove_poac(const RingCtx& ctx, const PublicParams& pp, const PoacStatement& stmt,
                 const RingVec& r, const RingElem& value, Rng& rng, const ProveOptions& opt) {
    const ParamSet& ps = ctx.params();
    const u32 beta = ps.beta_bits;
    const u32 nb = ps.width() + beta;
    const size_t nbd = static_cast<size_t>(nb) * ps.d;
    const size_t nd = static_cast<size_t>(ps.width()) * ps.d;
    const GaussianSampler g1 = GaussianSampler::from_sigma_sq(ps.poac.s1);
    const GaussianSampler g2 = GaussianSampler::from_sigma_sq(ps.poac.s2);
    const GaussianSampler g3 = GaussianSampler::from_sigma_sq(ps.poac.s3);

    const RingVec v_bin = binary_decompose(ctx, value);
    std::vector<i128> lflat;
    lflat.reserve(static_cast<size_t>(beta) * ps.d);
    for (const auto& e : v_bin)
        for (u32 i = 0; i < ps.d; ++i) lflat.push_back(static_cast<i128>(e.c[i]));
    RingElem mone = ctx.zero();
    for (u32 i = 0; i < ctx.d(); ++i) mone.c[i] = ps.q - 1;  // the all-(-1) polynomial
    const RingElem smone = ctx.sigma_neg1(mone);

    for (u32 attempt = 0; attempt < opt.max_attempts; ++attempt) {
        FsOracle fs("poac");
        absorb_statement(ctx, fs, stmt);

        PoacProof pf;
        const RingVec s = sample_chi_vec(rng, ctx, nb);
        const RingElem g = sample_uniform_zero_prefix(rng, ctx, 1);
        RingVec y1 = pack_ints(ctx, g1.sample_vec(rng, nbd));
        const std::vector<i64> y2 = g2.sample_vec(rng, ps.proj_rows);
        RingVec y3 = pack_ints(ctx, g3.sample_vec(rng, nd));

        const auto sh = ctx.to_ntt(s);
        const RingVec y2pack = pack_ints(ctx, y2);
        pf.u0 = ctx.matvec_ntt(pp.poac.a_a, sh);
        pf.u_y2 = ctx.matvec_ntt(pp.poac.b_y2, sh);
        for (size_t b = 0; b < pf.u_y2.size(); ++b) ctx.add_inplace(pf.u_y2[b], y2pack[b]);
        pf.u_g = ctx.add(ctx.row_dot_ntt(pp.poac.b_g, sh), g);
        pf.u_bin.resize(beta);
        for (u32 a = 0; a < beta; ++a)
            pf.u_bin[a] = ctx.add(ctx.row_dot_ntt(pp.poac.b_bin[a], sh), v_bin[a]);

        absorb_first(ctx, fs, pf);
        const auto rseed = fs.seed("R");
        const ProjMatrix bigr = expand_proj_matrix(rseed, "poac/R", ps.proj_rows,
                                                   beta * ps.d);

        const std::vector<i128> proj = proj_mul(bigr, lflat);
        std::vector<i128> z2c(ps.proj_rows);
        pf.z2.resize(ps.proj_rows);
        for (u32 i = 0; i < ps.proj_rows; ++i) {
            z2c[i] = y2[i] + proj[i];
            pf.z2[i] = static_cast<i64>(z2c[i]);
        }
        if (!opt.skip_rejection && !rej_accept(rng, z2c, proj, ps.poac.s2)) continue;

        fs.absorb_ints(pf.z2);
        const std::vector<u128> d1 = fs.scalars(ctx, ps.proj_rows, "d1");
        const std::vector<u128> dq = fs.scalars(ctx, beta, "dq");
        const std::vector<u128> dr = fs.scalars(ctx, ps.d, "dr");

        const RingVec rprime = combine_rows_sigma(ctx, bigr, d1);
        const RingVec e1 = combine_units_sigma(ctx, d1, ps.proj_rows);
        RingVec w_alpha;
        RingElem u_comb;
        reconstruction_combos(ctx, dr, w_alpha, u_comb);

        // x: projection well-formedness + binarity + reconstruction
        RingElem x = dot_blocks(ctx, rprime, v_bin);
        ctx.add_inplace(x, dot_blocks(ctx, e1, ctx.vsub(y2pack, pack_ints(ctx, pf.z2))));
        for (u32 a = 0; a < beta; ++a) {
            RingElem t = ctx.mul(ctx.sigma_neg1(v_bin[a]), v_bin[a]);
            ctx.add_inplace(t, ctx.mul(smone, v_bin[a]));
            ctx.add_inplace(x, ctx.scalar_mul(dq[a], t));
        }
        ctx.add_inplace(x, dot_blocks(ctx, w_alpha, v_bin));
        ctx.sub_inplace(x, ctx.mul(u_comb, value));
        pf.h = ctx.add(g, x);

        const auto y1h = ctx.to_ntt(y1);
        const auto y3h = ctx.to_ntt(y3);
        pf.w1 = ctx.matvec_ntt(pp.poac.a_a, y1h);
        pf.w2 = ctx.matvec_ntt(pp.tx.A, y3h);

        RingVec y_bin(beta);
        for (u32 a = 0; a < beta; ++a)
            y_bin[a] = ctx.neg(ctx.row_dot_ntt(pp.poac.b_bin[a], y1h));
        RingVec y_y2 = ctx.matvec_ntt(pp.poac.b_y2, y1h);
        for (auto& e : y_y2) e = ctx.neg(e);
        const RingElem y_v = ctx.neg(ctx.row_dot_ntt(pp.tx.B, y3h));
        const RingElem y_g = ctx.neg(ctx.row_dot_ntt(pp.poac.b_g, y1h));
        const RingElem bg1y1 = ctx.row_dot_ntt(pp.poac.b_g1, y1h);

        RingElem g1p = dot_blocks(ctx, rprime, y_bin);
        ctx.add_inplace(g1p, dot_blocks(ctx, e1, y_y2));
        for (u32 a = 0; a < beta; ++a) {
            RingElem t = ctx.mul(ctx.sigma_neg1(v_bin[a]), y_bin[a]);
            ctx.add_inplace(t, ctx.mul(ctx.sigma_neg1(y_bin[a]), v_bin[a]));
            ctx.add_inplace(t, ctx.mul(smone, y_bin[a]));
            ctx.add_inplace(g1p, ctx.scalar_mul(dq[a], t));
        }
        ctx.add_inplace(g1p, dot_blocks(ctx, w_alpha, y_bin));
        ctx.sub_inplace(g1p, ctx.mul(u_comb, y_v));
        ctx.add_inplace(g1p, y_g);
        pf.u_g1 = ctx.add(ctx.row_dot_ntt(pp.poac.b_g1, sh), g1p);

        pf.v = bg1y1;
        for (u32 a = 0; a < beta; ++a)
            ctx.add_inplace(pf.v,
                            ctx.scalar_mul(dq[a], ctx.mul(ctx.sigma_neg1(y_bin[a]), y_bin[a])));

        absorb_mid(ctx, fs, pf);
        const RingElem c = fs.challenge(ctx, /*symmetric=*/true);

        const RingVec cs = ctx.vscale(c, s);
        const RingVec cr = ctx.vscale(c, r);
        pf.z1 = ctx.vadd(y1, cs);
        pf.z3 = ctx.vadd(y3, cr);
        if (!opt.skip_rejection) {
            if (!rej_accept(rng, ctx.centered(pf.z1), ctx.centered(cs), ps.poac.s1)) continue;
            if (!rej_accept(rng, ctx.centered(pf.z3), ctx.centered(cr), ps.poac.s3)) continue;
        }

        ByteWriter w;
        write_proof_header(w, ProofKind::PoAc, opt);
        poac_encode_body(ctx, pf, w);
        return w.take();
    }
    throw ProveError("poac: rejection-sampling attempt cap exceeded");
}

VerifyResult verify_poac(const RingCtx& ctx, const PublicParams& pp, const PoacStatement& stmt,
                         const Bytes& proof) {
    const ParamSet& ps = ctx.params();
    PoacProof pf;
    try {
        ByteReader r(proof);
        read_proof_header(r, ProofKind::PoAc);
        pf = poac_decode_body(ctx, r);
        r.expect_done();
    } catch (const ParseError& e) {
        return VerifyResult::fail(std::string("poac:parse:") + e.what());
    }
    FsOracle fs("poac");
    absorb_statement(ctx, fs, stmt);
    absorb_first(ctx, fs, pf);
    const auto rseed = fs.seed("R");
    const ProjMatrix bigr =
        expand_proj_matrix(rseed, "poac/R", ps.proj_rows, ps.beta_bits * ps.d);
    fs.absorb_ints(pf.z2);
    const std::vector<u128> d1 = fs.scalars(ctx, ps.proj_rows, "d1");
    const std::vector<u128> dq = fs.scalars(ctx, ps.beta_bits, "dq");
    const std::vector<u128> dr = fs.scalars(ctx, ps.d, "dr");
    absorb_mid(ctx, fs, pf);
    const RingElem c = fs.challenge(ctx, /*symmetric=*/true);
    return poac_checks(ctx, pp, stmt, pf, bigr, d1, dq, dr, c);
}

}  // namespace pqledger
