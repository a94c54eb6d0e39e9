#include "pqledger/commit.hpp"

namespace pqledger {

namespace {

NttMat expand_uniform_mat(Rng& rng, const RingCtx& ctx, u32 rows, u32 cols) {
    NttMat m;
    m.rows = rows;
    m.cols = cols;
    m.e.reserve(static_cast<size_t>(rows) * cols);
    for (u32 i = 0; i < rows * cols; ++i) m.e.push_back(ctx.ntt(sample_uniform_poly(rng, ctx)));
    return m;
}

std::vector<NttVec> expand_uniform_row(Rng& rng, const RingCtx& ctx, u32 cols) {
    std::vector<NttVec> r;
    r.reserve(cols);
    for (u32 i = 0; i < cols; ++i) r.push_back(ctx.ntt(sample_uniform_poly(rng, ctx)));
    return r;
}

}  // namespace

PublicParams expand_public_params(const RingCtx& ctx, const std::array<u8, 32>& seed) {
    const ParamSet& ps = ctx.params();
    const u32 n = ps.width();
    const u32 kw = ps.key_width();
    const u32 prows = ps.proj_rows / ps.d;

    PublicParams pp;
    pp.ps = ps;
    pp.seed = seed;

    Rng base(seed, "pp/" + ps.name);
    {
        Rng r = base.fork("tx");
        pp.tx.A = expand_uniform_mat(r, ctx, ps.kappa, n);
        pp.tx.B = expand_uniform_row(r, ctx, n);
    }
    {
        Rng r = base.fork("poc");
        pp.poc.a1 = expand_uniform_mat(r, ctx, ps.kappa, n);
        pp.poc.a2 = expand_uniform_mat(r, ctx, ps.kappa, n);
        pp.poc.b1 = expand_uniform_row(r, ctx, n);
        pp.poc.bc_p = expand_uniform_mat(r, ctx, prows, n);
        pp.poc.bc_pp = expand_uniform_row(r, ctx, n);
    }
    {
        Rng r = base.fork("poe");
        pp.poe.a3 = expand_uniform_mat(r, ctx, ps.kappa, kw);
        pp.poe.a4 = expand_uniform_mat(r, ctx, ps.kappa, n);
        pp.poe.be_p = expand_uniform_mat(r, ctx, prows, n);
        pp.poe.be_pp = expand_uniform_row(r, ctx, n);
    }
    {
        Rng r = base.fork("poa");
        pp.poa.a_bin = expand_uniform_row(r, ctx, n);
        pp.poa.a_bin_p = expand_uniform_row(r, ctx, n);
        pp.poa.a_g = expand_uniform_row(r, ctx, n);
    }
    {
        Rng r = base.fork("poac");
        const u32 nb = n + ps.beta_bits;
        pp.poac.a_a = expand_uniform_mat(r, ctx, ps.kappa, nb);
        pp.poac.b_bin.resize(ps.beta_bits);
        for (u32 a = 0; a < ps.beta_bits; ++a) pp.poac.b_bin[a] = expand_uniform_row(r, ctx, nb);
        pp.poac.b_y2 = expand_uniform_mat(r, ctx, prows, nb);
        pp.poac.b_g = expand_uniform_row(r, ctx, nb);
        pp.poac.b_g1 = expand_uniform_row(r, ctx, nb);
    }
    return pp;
}

KeyPair keygen(const RingCtx& ctx, const TxKeys& tx, Rng& rng) {
    const ParamSet& ps = ctx.params();
    const u32 n = ps.width();
    KeyPair kp;
    kp.sk.s1 = sample_chi_vec(rng, ctx, ps.kappa);
    kp.sk.e1 = sample_chi_vec(rng, ctx, n);
    kp.sk.s2 = sample_chi_vec(rng, ctx, ps.kappa);
    kp.sk.e2 = sample_chi_vec(rng, ctx, n);

    // pk_j = Aᵀ s_j + e_j
    auto mk_pk = [&](const RingVec& s, const RingVec& e) {
        const auto sh = ctx.to_ntt(s);
        RingVec pk;
        pk.reserve(n);
        for (u32 i = 0; i < n; ++i) {
            NttVec acc{std::vector<u128>(ctx.d(), 0)};
            for (u32 k = 0; k < ps.kappa; ++k) ctx.nmul_acc(tx.A.at(k, i), sh[k], acc);
            pk.push_back(ctx.add(ctx.intt(acc), e[i]));
        }
        return pk;
    };
    kp.pk.pk1 = mk_pk(kp.sk.s1, kp.sk.e1);
    kp.pk.pk2 = mk_pk(kp.sk.s2, kp.sk.e2);
    kp.pk.pk1_ntt = ctx.to_ntt(kp.pk.pk1);
    kp.pk.pk2_ntt = ctx.to_ntt(kp.pk.pk2);
    return kp;
}

Commitment commit_tx(const RingCtx& ctx, const TxKeys& tx, const ParticipantKey& pk,
                     const RingElem& v, const RingVec& r) {
    if (r.size() != ctx.params().width()) throw std::invalid_argument("randomness width");
    Commitment c;
    const auto rh = ctx.to_ntt(r);
    c.c0 = ctx.matvec_ntt(tx.A, rh);
    c.c1 = ctx.add(ctx.row_dot_ntt(pk.pk1_ntt, rh), v);
    c.c2 = ctx.add(ctx.row_dot_ntt(pk.pk2_ntt, rh), ctx.scalar_mul(ctx.params().sqrt_q, v));
    c.c3 = ctx.add(ctx.row_dot_ntt(tx.B, rh), v);
    return c;
}

RingVec commit_bdlop(const RingCtx& ctx, const NttMat& a,
                     const std::vector<std::vector<NttVec>>& b_rows, const RingVec& msgs,
                     const RingVec& r) {
    const auto rh = ctx.to_ntt(r);
    RingVec rows = ctx.matvec_ntt(a, rh);
    for (size_t i = 0; i < b_rows.size(); ++i)
        rows.push_back(ctx.add(ctx.row_dot_ntt(b_rows[i], rh), msgs[i]));
    return rows;
}

RingVec commit_abdlop(const RingCtx& ctx, const NttMat& a1, const NttMat& a2,
                      const std::vector<std::vector<NttVec>>& b_rows, const RingVec& r,
                      const RingVec& s, const RingVec& msgs) {
    const auto rh = ctx.to_ntt(r);
    const auto sh = ctx.to_ntt(s);
    const RingVec t1 = ctx.matvec_ntt(a1, rh);
    const RingVec t2 = ctx.matvec_ntt(a2, sh);
    RingVec rows = ctx.vadd(t1, t2);
    for (size_t i = 0; i < b_rows.size(); ++i)
        rows.push_back(ctx.add(ctx.row_dot_ntt(b_rows[i], sh), msgs[i]));
    return rows;
}

Commitment sum_commitments(const RingCtx& ctx, const std::vector<const Commitment*>& coms) {
    if (coms.empty()) throw std::invalid_argument("empty commitment list");
    Commitment acc = *coms[0];
    for (size_t i = 1; i < coms.size(); ++i) add_commitment(ctx, acc, *coms[i]);
    return acc;
}

void add_commitment(const RingCtx& ctx, Commitment& acc, const Commitment& c) {
    for (size_t i = 0; i < acc.c0.size(); ++i) ctx.add_inplace(acc.c0[i], c.c0[i]);
    ctx.add_inplace(acc.c1, c.c1);
    ctx.add_inplace(acc.c2, c.c2);
    ctx.add_inplace(acc.c3, c.c3);
}

void encode_commitment(const RingCtx& ctx, const Commitment& c, ByteWriter& w) {
    w.u32v(static_cast<u32>(c.c0.size()));
    for (const auto& e : c.c0) ctx.encode(e, w);
    ctx.encode(c.c1, w);
    ctx.encode(c.c2, w);
    ctx.encode(c.c3, w);
}

Commitment decode_commitment(const RingCtx& ctx, ByteReader& r) {
    Commitment c;
    const u32 k = r.u32v();
    if (k != ctx.params().kappa) throw ParseError("commitment row count");
    c.c0 = ctx.decode_vec(r, k);
    c.c1 = ctx.decode(r);
    c.c2 = ctx.decode(r);
    c.c3 = ctx.decode(r);
    return c;
}

namespace {

bool norm_le_scaled(const RingCtx& ctx, const RingVec& v, u128 sigma_sq, u64 scale_dim) {
    // ||v||^2 <= 4 * sigma^2 * 2 * dim  (the weak-opening bound 2 s sqrt(2 dim d), squared)
    const U256 lhs = ctx.norm_l2_sq(v);
    const U256 rhs = mul_wide(4 * sigma_sq * 2, scale_dim);
    return cmp256(lhs, rhs) <= 0;
}

}  // namespace

WeakOpeningResult check_weak_opening_bdlop(const RingCtx& ctx, const NttMat& a,
                                           const std::vector<std::vector<NttVec>>& b_rows,
                                           const RingVec& com0, const RingVec& com_msgs,
                                           const RingElem& cbar, const RingVec& r_star,
                                           const RingVec& m_star, u128 sigma_sq) {
    if (ctx.norm_l1(cbar) > 2 * ctx.params().omega) return {false, "challenge l1 bound"};
    if (!ctx.is_invertible(cbar)) return {false, "challenge invertibility"};
    const RingVec cr = ctx.vscale(cbar, r_star);
    if (!norm_le_scaled(ctx, cr, sigma_sq, static_cast<u64>(r_star.size()) * ctx.d()))
        return {false, "randomness norm"};
    const RingVec ar = ctx.matvec(a, r_star);
    for (size_t i = 0; i < ar.size(); ++i)
        if (!(ar[i] == com0[i])) return {false, "matrix row"};
    for (size_t i = 0; i < b_rows.size(); ++i) {
        const RingElem lhs = ctx.add(ctx.row_dot(b_rows[i], r_star), m_star[i]);
        if (!(lhs == com_msgs[i])) return {false, "message row"};
    }
    return {true, ""};
}

WeakOpeningResult check_weak_opening_abdlop(const RingCtx& ctx, const NttMat& a1,
                                            const NttMat& a2,
                                            const std::vector<std::vector<NttVec>>& b_rows,
                                            const RingVec& com0, const RingVec& com_msgs,
                                            const RingElem& cbar, const RingVec& r_star,
                                            const RingVec& s_star, const RingVec& m_star,
                                            u128 sigma1_sq, u128 sigma2_sq) {
    if (ctx.norm_l1(cbar) > 2 * ctx.params().omega) return {false, "challenge l1 bound"};
    if (!ctx.is_invertible(cbar)) return {false, "challenge invertibility"};
    if (!norm_le_scaled(ctx, ctx.vscale(cbar, r_star), sigma1_sq,
                        static_cast<u64>(r_star.size()) * ctx.d()))
        return {false, "randomness norm"};
    if (!norm_le_scaled(ctx, ctx.vscale(cbar, s_star), sigma2_sq,
                        static_cast<u64>(s_star.size()) * ctx.d()))
        return {false, "binder norm"};
    const RingVec lhs = ctx.vadd(ctx.matvec(a1, r_star), ctx.matvec(a2, s_star));
    for (size_t i = 0; i < lhs.size(); ++i)
        if (!(lhs[i] == com0[i])) return {false, "matrix row"};
    for (size_t i = 0; i < b_rows.size(); ++i) {
        const RingElem row = ctx.add(ctx.row_dot(b_rows[i], s_star), m_star[i]);
        if (!(row == com_msgs[i])) return {false, "message row"};
    }
    return {true, ""};
}

ExtractStatus extract(const RingCtx& ctx, const Commitment& com, const SecretKey& sk,
                      RingElem& v_out) {
    const ParamSet& ps = ctx.params();
    const u128 sq = ps.sqrt_q;
    // worst-case |e^T r| over a column of col_budget+1 ternary commitments
    const u128 noise_budget =
        static_cast<u128>(ps.width()) * ps.d * (static_cast<u128>(ps.col_budget) + 1);

    // x1 = com1 - s1ᵀ com0,  x2 = com2 - s2ᵀ com0
    const auto c0h = ctx.to_ntt(com.c0);
    const RingElem x1 = ctx.sub(com.c1, ctx.row_dot_ntt(ctx.to_ntt(sk.s1), c0h));
    const RingElem x2 = ctx.sub(com.c2, ctx.row_dot_ntt(ctx.to_ntt(sk.s2), c0h));

    // w = sqrt(q) x1 - x2 (mod q, centered); k = w mod± sqrt(q) recovers -e2ᵀr
    const RingElem w = ctx.sub(ctx.scalar_mul(sq, x1), x2);
    RingElem k = ctx.zero();
    for (u32 i = 0; i < ctx.d(); ++i) {
        const i128 wc = ctx.zq().center(w.c[i]);
        const i128 ki = mod_pm(wc, sq);
        if (abs_i128(ki) > noise_budget) return ExtractStatus::noise_budget;
        // (w - k) / sqrt(q) is the e1ᵀr candidate and must stay in budget too
        const i128 quot = (wc - ki) / static_cast<i128>(sq);
        if (abs_i128(quot) > noise_budget) return ExtractStatus::quotient_budget;
        k.c[i] = ctx.zq().from_centered(ki);
    }
    // v = (x2 + k) / sqrt(q) in Z_q
    const u128 inv_sq = ctx.zq().inv(sq);
    v_out = ctx.scalar_mul(inv_sq, ctx.add(x2, k));
    return ExtractStatus::ok;
}

const char* extract_status_name(ExtractStatus s) {
    switch (s) {
        case ExtractStatus::ok: return "ok";
        case ExtractStatus::noise_budget: return "noise budget exceeded";
        case ExtractStatus::quotient_budget: return "non-exact division";
    }
    return "?";
}

}  // namespace pqledger
