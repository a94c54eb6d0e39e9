#include "pqledger/zkp.hpp"

namespace pqledger {

// Equivalence proof: the prover opens an Ajtai commitment to the secret key
// vector m = s1|e1|s2|e2, shows that the decryption difference
// l = C~ m - u~ built from two commitments has small projection, and ties
// everything together through a vanishing constant coefficient and a linear
// system over [A^T Id 0 0; 0 0 A^T Id]. The key well-formedness proof is the
// same flow with the decryption difference replaced by m itself.

namespace {

struct Shape {
    u32 n, kw, prow;
    u64 proj_cols;  // columns of the Bin1 challenge matrix
};

Shape shape(const ParamSet& ps, bool keywf) {
    Shape s;
    s.n = ps.width();
    s.kw = ps.key_width();
    s.prow = ps.proj_rows / ps.d;
    s.proj_cols = keywf ? static_cast<u64>(s.kw) * ps.d : 2ull * ps.d;
    return s;
}

RingVec key_message(const SecretKey& sk) {
    RingVec m;
    m.reserve(sk.s1.size() + sk.e1.size() + sk.s2.size() + sk.e2.size());
    for (const auto& e : sk.s1) m.push_back(e);
    for (const auto& e : sk.e1) m.push_back(e);
    for (const auto& e : sk.s2) m.push_back(e);
    for (const auto& e : sk.e2) m.push_back(e);
    return m;
}

// l = C~ m - u~ : rows (comdiff0^T s_j - comdiff_j) for j = 1, 2.
RingVec decryption_difference(const RingCtx& ctx, const Commitment& com,
                              const Commitment& comp, const RingVec& m) {
    const ParamSet& ps = ctx.params();
    RingVec diff0(ps.kappa);
    for (u32 i = 0; i < ps.kappa; ++i) diff0[i] = ctx.sub(com.c0[i], comp.c0[i]);
    const auto d0h = ctx.to_ntt(diff0);
    RingVec s1(m.begin(), m.begin() + ps.kappa);
    RingVec s2(m.begin() + ps.kappa + ps.width(), m.begin() + 2 * ps.kappa + ps.width());
    RingVec l(2);
    l[0] = ctx.sub(ctx.row_dot_ntt(ctx.to_ntt(s1), d0h), ctx.sub(com.c1, comp.c1));
    l[1] = ctx.sub(ctx.row_dot_ntt(ctx.to_ntt(s2), d0h), ctx.sub(com.c2, comp.c2));
    return l;
}

RingElem dot_blocks(const RingCtx& ctx, const RingVec& a, const RingVec& b) {
    RingElem acc = ctx.zero();
    for (size_t i = 0; i < a.size(); ++i) ctx.add_inplace(acc, ctx.mul(a[i], b[i]));
    return acc;
}

// [A^T Id 0 0; 0 0 A^T Id] x for x = (a|b|c|d): rows (A^T a + b, A^T c + d).
RingVec atilde_apply(const RingCtx& ctx, const NttMat& A, const RingVec& x) {
    const ParamSet& ps = ctx.params();
    const u32 n = ps.width();
    RingVec out;
    out.reserve(2 * n);
    for (int half = 0; half < 2; ++half) {
        const size_t base = static_cast<size_t>(half) * (ps.kappa + n);
        RingVec s(x.begin() + base, x.begin() + base + ps.kappa);
        const auto sh = ctx.to_ntt(s);
        for (u32 i = 0; i < n; ++i) {
            NttVec acc{std::vector<u128>(ctx.d(), 0)};
            for (u32 k = 0; k < ps.kappa; ++k) ctx.nmul_acc(A.at(k, i), sh[k], acc);
            out.push_back(ctx.add(ctx.intt(acc), x[base + ps.kappa + i]));
        }
    }
    return out;
}

// R'^T C~ applied to x: R'[0] (comdiff0 . x_s1) + R'[1] (comdiff0 . x_s2).
RingElem rprime_ctilde_dot(const RingCtx& ctx, const RingVec& rprime,
                           const std::vector<NttVec>& diff0h, const RingVec& x) {
    const ParamSet& ps = ctx.params();
    const u32 n = ps.width();
    RingVec xs1(x.begin(), x.begin() + ps.kappa);
    RingVec xs2(x.begin() + ps.kappa + n, x.begin() + 2 * ps.kappa + n);
    const RingElem t1 = ctx.row_dot(diff0h, xs1);
    const RingElem t2 = ctx.row_dot(diff0h, xs2);
    return ctx.add(ctx.mul(rprime[0], t1), ctx.mul(rprime[1], t2));
}

struct PoeCore {
    bool keywf;
    const ParticipantKey* pk;
    const Commitment* com;   // null for key well-formedness
    const Commitment* comp;  // null for key well-formedness
};

void core_absorb_statement(const RingCtx& ctx, FsOracle& fs, const PoeCore& core,
                           const Bytes& context) {
    fs.absorb(context);
    fs.absorb_vec(ctx, core.pk->pk1);
    fs.absorb_vec(ctx, core.pk->pk2);
    if (!core.keywf) {
        ByteWriter w;
        encode_commitment(ctx, *core.com, w);
        encode_commitment(ctx, *core.comp, w);
        fs.absorb(w.bytes());
    }
}

VerifyResult core_checks(const RingCtx& ctx, const PublicParams& pp, const PoeCore& core,
                         const PoeProof& pf, const ProjMatrix& bigr,
                         const std::vector<u128>& d1, const RingElem& c, const char* tag) {
    const ParamSet& ps = ctx.params();
    const Shape sh = shape(ps, core.keywf);
    const SigmaSq& sg = core.keywf ? ps.pokw : ps.poe;
    auto fail = [&](const char* check) { return VerifyResult::fail(std::string(tag) + check); };

    if (!l2_within(ctx, pf.z1, sg.s1, static_cast<u64>(sh.kw) * ps.d)) return fail(":a");
    if (!l2_within(ctx, pf.z2, sg.s2, static_cast<u64>(sh.n) * ps.d)) return fail(":b");
    const u128 inf_bound_sq = static_cast<u128>(2) * ps.proj_k() * sg.s3;
    for (i64 x : pf.z3) {
        const u128 ax = abs_i128(x);
        if (ax * ax > inf_bound_sq) return fail(":c");
    }
    if (pf.h.c[0] != 0) return fail(":d");

    const auto z1h = ctx.to_ntt(pf.z1);
    const auto z2h = ctx.to_ntt(pf.z2);
    {
        const RingVec lhs =
            ctx.vadd(ctx.matvec_ntt(pp.poe.a3, z1h), ctx.matvec_ntt(pp.poe.a4, z2h));
        for (u32 i = 0; i < ps.kappa; ++i)
            if (!(lhs[i] == ctx.add(pf.w[i], ctx.mul(c, pf.f[i])))) return fail(":e");
    }

    // block rows: A~ z1 - c [pk1; pk2] = v[0 .. 2n)
    const RingVec at = atilde_apply(ctx, pp.tx.A, pf.z1);
    for (u32 i = 0; i < sh.n; ++i) {
        if (!(ctx.sub(at[i], ctx.mul(c, core.pk->pk1[i])) == pf.v[i])) return fail(":f-key1");
        if (!(ctx.sub(at[sh.n + i], ctx.mul(c, core.pk->pk2[i])) == pf.v[sh.n + i]))
            return fail(":f-key2");
    }

    // last row
    const RingVec rprime = combine_rows_sigma(ctx, bigr, d1);
    const RingVec e1 = combine_units_sigma(ctx, d1, ps.proj_rows);
    RingVec u1b = ctx.matvec_ntt(pp.poe.be_p, z2h);
    for (size_t b = 0; b < u1b.size(); ++b) u1b[b] = ctx.sub(ctx.mul(c, pf.u1[b]), u1b[b]);
    const RingElem u2b = ctx.sub(ctx.mul(c, pf.u2), ctx.row_dot_ntt(pp.poe.be_pp, z2h));

    RingElem lhs;
    RingElem corr = ctx.add(pf.h, dot_blocks(ctx, e1, pack_ints(ctx, pf.z3)));
    if (core.keywf) {
        lhs = dot_blocks(ctx, rprime, pf.z1);
    } else {
        RingVec diff0(ps.kappa);
        for (u32 i = 0; i < ps.kappa; ++i)
            diff0[i] = ctx.sub(core.com->c0[i], core.comp->c0[i]);
        const auto d0h = ctx.to_ntt(diff0);
        lhs = rprime_ctilde_dot(ctx, rprime, d0h, pf.z1);
        const RingElem ut1 = ctx.sub(core.com->c1, core.comp->c1);
        const RingElem ut2 = ctx.sub(core.com->c2, core.comp->c2);
        ctx.add_inplace(corr, ctx.add(ctx.mul(rprime[0], ut1), ctx.mul(rprime[1], ut2)));
    }
    ctx.add_inplace(lhs, dot_blocks(ctx, e1, u1b));
    ctx.add_inplace(lhs, u2b);
    ctx.sub_inplace(lhs, ctx.mul(c, corr));
    if (!(lhs == pf.v[2 * sh.n])) return fail(":f-quad");
    return VerifyResult::pass();
}

// Phases 1-2: masks, f/u1/u2, projection response z3. Returns false when the
// z3 rejection fires.
bool core_phase_commit(const RingCtx& ctx, const PublicParams& pp, const PoeCore& core,
                       const SecretKey& sk, FsOracle& fs, Rng& rng, bool skip_rej,
                       PoeProverState& st) {
    const ParamSet& ps = ctx.params();
    const Shape sh = shape(ps, core.keywf);
    const SigmaSq& sg = core.keywf ? ps.pokw : ps.poe;

    st.m = key_message(sk);
    st.s = sample_chi_vec(rng, ctx, sh.n);
    st.g = sample_uniform_zero_prefix(rng, ctx, 1);

    const auto mh = ctx.to_ntt(st.m);
    const auto shh = ctx.to_ntt(st.s);
    st.pf.f = ctx.vadd(ctx.matvec_ntt(pp.poe.a3, mh), ctx.matvec_ntt(pp.poe.a4, shh));

    const GaussianSampler g1 = GaussianSampler::from_sigma_sq(sg.s1);
    const GaussianSampler g2 = GaussianSampler::from_sigma_sq(sg.s2);
    const GaussianSampler g3 = GaussianSampler::from_sigma_sq(sg.s3);
    st.y1 = pack_ints(ctx, g1.sample_vec(rng, static_cast<size_t>(sh.kw) * ps.d));
    st.y2 = pack_ints(ctx, g2.sample_vec(rng, static_cast<size_t>(sh.n) * ps.d));
    st.y3 = g3.sample_vec(rng, ps.proj_rows);

    const RingVec y3pack = pack_ints(ctx, st.y3);
    st.pf.u1 = ctx.matvec_ntt(pp.poe.be_p, shh);
    for (u32 b = 0; b < sh.prow; ++b) ctx.add_inplace(st.pf.u1[b], y3pack[b]);
    st.pf.u2 = ctx.add(ctx.row_dot_ntt(pp.poe.be_pp, shh), st.g);

    fs.absorb_vec(ctx, st.pf.f);
    fs.absorb_vec(ctx, st.pf.u1);
    fs.absorb_elem(ctx, st.pf.u2);
    const auto rseed = fs.seed("R");
    st.bigr = expand_proj_matrix(rseed, core.keywf ? "pokw/R" : "poe/R", ps.proj_rows,
                                 static_cast<u32>(sh.proj_cols));

    st.l = core.keywf ? st.m : decryption_difference(ctx, *core.com, *core.comp, st.m);
    const std::vector<i128> lflat = ctx.centered(st.l);
    const std::vector<i128> proj = proj_mul(st.bigr, lflat);
    std::vector<i128> z3c(ps.proj_rows);
    st.pf.z3.resize(ps.proj_rows);
    for (u32 i = 0; i < ps.proj_rows; ++i) {
        z3c[i] = st.y3[i] + proj[i];
        st.pf.z3[i] = static_cast<i64>(z3c[i]);
    }
    if (!skip_rej && !rej_accept(rng, z3c, proj, sg.s3)) return false;
    fs.absorb_ints(st.pf.z3);
    return true;
}

// Phase 3: h, w and the linear-system vector v.
void core_phase_quad(const RingCtx& ctx, const PublicParams& pp, const PoeCore& core,
                     PoeProverState& st, const ProjMatrix& bigr, const std::vector<u128>& d1) {
    const ParamSet& ps = ctx.params();

    const RingVec rprime = combine_rows_sigma(ctx, bigr, d1);
    const RingVec e1 = combine_units_sigma(ctx, d1, ps.proj_rows);

    RingElem x;
    RingElem vlast;
    const auto y2h = ctx.to_ntt(st.y2);
    const RingVec bep_y2 = ctx.matvec_ntt(pp.poe.be_p, y2h);
    const RingElem bepp_y2 = ctx.row_dot_ntt(pp.poe.be_pp, y2h);
    if (core.keywf) {
        x = dot_blocks(ctx, rprime, st.m);
        vlast = dot_blocks(ctx, rprime, st.y1);
    } else {
        // R'.l already contains the -R'.u~ part: l = C~ m - u~
        x = dot_blocks(ctx, rprime, st.l);
        RingVec diff0(ps.kappa);
        for (u32 i = 0; i < ps.kappa; ++i)
            diff0[i] = ctx.sub(core.com->c0[i], core.comp->c0[i]);
        vlast = rprime_ctilde_dot(ctx, rprime, ctx.to_ntt(diff0), st.y1);
    }
    ctx.add_inplace(
        x, dot_blocks(ctx, e1, ctx.vsub(pack_ints(ctx, st.y3), pack_ints(ctx, st.pf.z3))));
    st.pf.h = ctx.add(st.g, x);

    const auto y1h = ctx.to_ntt(st.y1);
    st.pf.w = ctx.vadd(ctx.matvec_ntt(pp.poe.a3, y1h), ctx.matvec_ntt(pp.poe.a4, y2h));

    st.pf.v = atilde_apply(ctx, pp.tx.A, st.y1);
    ctx.sub_inplace(vlast, dot_blocks(ctx, e1, bep_y2));
    ctx.sub_inplace(vlast, bepp_y2);
    st.pf.v.push_back(vlast);
}

bool core_phase_respond(const RingCtx& ctx, const PoeCore& core, PoeProverState& st,
                        const RingElem& c, Rng& rng, bool skip_rej) {
    const ParamSet& ps = ctx.params();
    const SigmaSq& sg = core.keywf ? ps.pokw : ps.poe;
    const RingVec cm = ctx.vscale(c, st.m);
    const RingVec cs = ctx.vscale(c, st.s);
    st.pf.z1 = ctx.vadd(st.y1, cm);
    st.pf.z2 = ctx.vadd(st.y2, cs);
    if (!skip_rej) {
        if (!rej_accept(rng, ctx.centered(st.pf.z1), ctx.centered(cm), sg.s1)) return false;
        if (!rej_accept(rng, ctx.centered(st.pf.z2), ctx.centered(cs), sg.s2)) return false;
    }
    return true;
}

Bytes core_prove(const RingCtx& ctx, const PublicParams& pp, const PoeCore& core,
                 const Bytes& context, const SecretKey& sk, Rng& rng,
                 const ProveOptions& opt) {
    const ParamSet& ps = ctx.params();
    const char* domain = core.keywf ? "pokw" : "poe";
    for (u32 attempt = 0; attempt < opt.max_attempts; ++attempt) {
        FsOracle fs(domain);
        core_absorb_statement(ctx, fs, core, context);
        PoeProverState st;
        if (!core_phase_commit(ctx, pp, core, sk, fs, rng, opt.skip_rejection, st)) continue;
        const std::vector<u128> d1 = fs.scalars(ctx, ps.proj_rows, "d1");
        core_phase_quad(ctx, pp, core, st, st.bigr, d1);
        fs.absorb_elem(ctx, st.pf.h);
        fs.absorb_vec(ctx, st.pf.w);
        fs.absorb_vec(ctx, st.pf.v);
        const RingElem c = fs.challenge(ctx);
        if (!core_phase_respond(ctx, core, st, c, rng, opt.skip_rejection)) continue;
        ByteWriter w;
        write_proof_header(w, core.keywf ? ProofKind::PoKW : ProofKind::PoE, opt);
        poe_encode_body(ctx, st.pf, w);
        return w.take();
    }
    throw ProveError(std::string(domain) + ": rejection-sampling attempt cap exceeded");
}

VerifyResult core_verify(const RingCtx& ctx, const PublicParams& pp, const PoeCore& core,
                         const Bytes& context, const Bytes& proof, const char* tag) {
    const ParamSet& ps = ctx.params();
    const Shape sh = shape(ps, core.keywf);
    PoeProof pf;
    try {
        ByteReader r(proof);
        read_proof_header(r, core.keywf ? ProofKind::PoKW : ProofKind::PoE);
        pf = poe_decode_body(ctx, r);
        r.expect_done();
    } catch (const ParseError& e) {
        return VerifyResult::fail(std::string(tag) + ":parse:" + e.what());
    }
    FsOracle fs(core.keywf ? "pokw" : "poe");
    core_absorb_statement(ctx, fs, core, context);
    fs.absorb_vec(ctx, pf.f);
    fs.absorb_vec(ctx, pf.u1);
    fs.absorb_elem(ctx, pf.u2);
    const auto rseed = fs.seed("R");
    const ProjMatrix bigr = expand_proj_matrix(rseed, core.keywf ? "pokw/R" : "poe/R",
                                               ps.proj_rows, static_cast<u32>(sh.proj_cols));
    fs.absorb_ints(pf.z3);
    const std::vector<u128> d1 = fs.scalars(ctx, ps.proj_rows, "d1");
    fs.absorb_elem(ctx, pf.h);
    fs.absorb_vec(ctx, pf.w);
    fs.absorb_vec(ctx, pf.v);
    const RingElem c = fs.challenge(ctx);
    return core_checks(ctx, pp, core, pf, bigr, d1, c, tag);
}

}  // namespace

void poe_encode_body(const RingCtx& ctx, const PoeProof& pf, ByteWriter& w) {
    ctx.encode_vec(pf.f, w);
    ctx.encode_vec(pf.u1, w);
    ctx.encode(pf.u2, w);
    for (i64 x : pf.z3) w.i64v(x);
    ctx.encode(pf.h, w);
    ctx.encode_vec(pf.w, w);
    ctx.encode_vec(pf.v, w);
    ctx.encode_vec(pf.z1, w);
    ctx.encode_vec(pf.z2, w);
}

PoeProof poe_decode_body(const RingCtx& ctx, ByteReader& r) {
    const ParamSet& ps = ctx.params();
    PoeProof pf;
    pf.f = ctx.decode_vec(r, ps.kappa);
    pf.u1 = ctx.decode_vec(r, ps.proj_rows / ps.d);
    pf.u2 = ctx.decode(r);
    pf.z3.resize(ps.proj_rows);
    for (auto& x : pf.z3) x = r.i64v();
    pf.h = ctx.decode(r);
    pf.w = ctx.decode_vec(r, ps.kappa);
    pf.v = ctx.decode_vec(r, 2 * ps.width() + 1);
    pf.z1 = ctx.decode_vec(r, ps.key_width());
    pf.z2 = ctx.decode_vec(r, ps.width());
    return pf;
}

void poe_absorb_statement(const RingCtx& ctx, FsOracle& fs, const PoeStatement& stmt) {
    const PoeCore core{false, stmt.pk, &stmt.com, stmt.comp};
    core_absorb_statement(ctx, fs, core, stmt.context);
}

void poe_absorb_prefix(const RingCtx& ctx, FsOracle& fs, const PoeProof& pf) {
    fs.absorb_vec(ctx, pf.f);
    fs.absorb_vec(ctx, pf.u1);
    fs.absorb_elem(ctx, pf.u2);
}

void poe_absorb_mid(const RingCtx& ctx, FsOracle& fs, const PoeProof& pf) {
    fs.absorb_elem(ctx, pf.h);
    fs.absorb_vec(ctx, pf.w);
    fs.absorb_vec(ctx, pf.v);
}

VerifyResult poe_checks(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                        const PoeProof& pf, const ProjMatrix& bigr,
                        const std::vector<u128>& d1, const RingElem& c) {
    const PoeCore core{false, stmt.pk, &stmt.com, stmt.comp};
    return core_checks(ctx, pp, core, pf, bigr, d1, c, "poe");
}

bool poe_phase_commit(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                      const SecretKey& sk, FsOracle& fs, Rng& rng, bool skip_rej,
                      PoeProverState& st) {
    const PoeCore core{false, stmt.pk, &stmt.com, stmt.comp};
    return core_phase_commit(ctx, pp, core, sk, fs, rng, skip_rej, st);
}

void poe_phase_quad(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                    PoeProverState& st, const ProjMatrix& bigr, const std::vector<u128>& d1) {
    const PoeCore core{false, stmt.pk, &stmt.com, stmt.comp};
    core_phase_quad(ctx, pp, core, st, bigr, d1);
}

bool poe_phase_respond(const RingCtx& ctx, const PublicParams& pp, PoeProverState& st,
                       const RingElem& c, Rng& rng, bool skip_rej) {
    (void)pp;
    const PoeCore core{false, nullptr, nullptr, nullptr};
    return core_phase_respond(ctx, core, st, c, rng, skip_rej);
}

void poe_simulate_prefix(const RingCtx& ctx, const PublicParams& pp, PoeProof& pf, Rng& rng) {
    const ParamSet& ps = ctx.params();
    (void)pp;
    pf.f.clear();
    for (u32 i = 0; i < ps.kappa; ++i) pf.f.push_back(sample_uniform_poly(rng, ctx));
    pf.u1.clear();
    for (u32 i = 0; i < ps.proj_rows / ps.d; ++i) pf.u1.push_back(sample_uniform_poly(rng, ctx));
    pf.u2 = sample_uniform_poly(rng, ctx);
    const GaussianSampler g3 = GaussianSampler::from_sigma_sq(ps.poe.s3);
    pf.z3 = g3.sample_vec(rng, ps.proj_rows);
}

void poe_simulate_finish(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                         PoeProof& pf, const ProjMatrix& bigr, const std::vector<u128>& d1,
                         const RingElem& c, Rng& rng) {
    const ParamSet& ps = ctx.params();
    const Shape sh = shape(ps, false);
    const GaussianSampler g1 = GaussianSampler::from_sigma_sq(ps.poe.s1);
    const GaussianSampler g2 = GaussianSampler::from_sigma_sq(ps.poe.s2);
    pf.z1 = pack_ints(ctx, g1.sample_vec(rng, static_cast<size_t>(sh.kw) * ps.d));
    pf.z2 = pack_ints(ctx, g2.sample_vec(rng, static_cast<size_t>(sh.n) * ps.d));
    pf.h = sample_uniform_zero_prefix(rng, ctx, 1);

    const auto z1h = ctx.to_ntt(pf.z1);
    const auto z2h = ctx.to_ntt(pf.z2);
    // w from check (e)
    const RingVec lhs = ctx.vadd(ctx.matvec_ntt(pp.poe.a3, z1h), ctx.matvec_ntt(pp.poe.a4, z2h));
    pf.w.clear();
    for (u32 i = 0; i < ps.kappa; ++i) pf.w.push_back(ctx.sub(lhs[i], ctx.mul(c, pf.f[i])));

    // v from check (f)
    const RingVec rprime = combine_rows_sigma(ctx, bigr, d1);
    const RingVec e1 = combine_units_sigma(ctx, d1, ps.proj_rows);
    pf.v = atilde_apply(ctx, pp.tx.A, pf.z1);
    for (u32 i = 0; i < sh.n; ++i) {
        pf.v[i] = ctx.sub(pf.v[i], ctx.mul(c, stmt.pk->pk1[i]));
        pf.v[sh.n + i] = ctx.sub(pf.v[sh.n + i], ctx.mul(c, stmt.pk->pk2[i]));
    }
    RingVec diff0(ps.kappa);
    for (u32 i = 0; i < ps.kappa; ++i) diff0[i] = ctx.sub(stmt.com.c0[i], stmt.comp->c0[i]);
    RingElem vlast = rprime_ctilde_dot(ctx, rprime, ctx.to_ntt(diff0), pf.z1);
    RingVec u1b = ctx.matvec_ntt(pp.poe.be_p, z2h);
    for (size_t b = 0; b < u1b.size(); ++b) u1b[b] = ctx.sub(ctx.mul(c, pf.u1[b]), u1b[b]);
    ctx.add_inplace(vlast, dot_blocks(ctx, e1, u1b));
    ctx.add_inplace(vlast, ctx.sub(ctx.mul(c, pf.u2), ctx.row_dot_ntt(pp.poe.be_pp, z2h)));
    RingElem corr = ctx.add(pf.h, dot_blocks(ctx, e1, pack_ints(ctx, pf.z3)));
    const RingElem ut1 = ctx.sub(stmt.com.c1, stmt.comp->c1);
    const RingElem ut2 = ctx.sub(stmt.com.c2, stmt.comp->c2);
    ctx.add_inplace(corr, ctx.add(ctx.mul(rprime[0], ut1), ctx.mul(rprime[1], ut2)));
    ctx.sub_inplace(vlast, ctx.mul(c, corr));
    pf.v.push_back(vlast);
}

Bytes prove_poe(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                const SecretKey& sk, Rng& rng, const ProveOptions& opt) {
    const PoeCore core{false, stmt.pk, &stmt.com, stmt.comp};
    return core_prove(ctx, pp, core, stmt.context, sk, rng, opt);
}

VerifyResult verify_poe(const RingCtx& ctx, const PublicParams& pp, const PoeStatement& stmt,
                        const Bytes& proof) {
    const PoeCore core{false, stmt.pk, &stmt.com, stmt.comp};
    return core_verify(ctx, pp, core, stmt.context, proof, "poe");
}

Bytes prove_pokw(const RingCtx& ctx, const PublicParams& pp, const PokwStatement& stmt,
                 const SecretKey& sk, Rng& rng, const ProveOptions& opt) {
    const PoeCore core{true, stmt.pk, nullptr, nullptr};
    return core_prove(ctx, pp, core, stmt.context, sk, rng, opt);
}

VerifyResult verify_pokw(const RingCtx& ctx, const PublicParams& pp, const PokwStatement& stmt,
                         const Bytes& proof) {
    const PoeCore core{true, stmt.pk, nullptr, nullptr};
    return core_verify(ctx, pp, core, stmt.context, proof, "pokw");
}

}  // namespace pqledger
