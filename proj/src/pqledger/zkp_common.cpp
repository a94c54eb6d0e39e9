#include "pqledger/zkp.hpp"

namespace pqledger {

const char* proof_kind_name(ProofKind k) {
    switch (k) {
        case ProofKind::PoB: return "PoB";
        case ProofKind::PoC: return "PoC";
        case ProofKind::PoE: return "PoE";
        case ProofKind::PoKW: return "PoKW";
        case ProofKind::PoA: return "PoA";
        case ProofKind::PoAc: return "PoAc";
        case ProofKind::PoE2: return "PoE2";
        case ProofKind::Or: return "Or";
    }
    return "?";
}

FsOracle::FsOracle(const std::string& domain) {
    st_.absorb_label("pqledger/fs/v1");
    st_.absorb_label(domain);
}

void FsOracle::absorb(const Bytes& b) {
    st_.absorb_u64(b.size());
    st_.absorb(b.data(), b.size());
}

void FsOracle::absorb_raw(const void* p, size_t n) {
    st_.absorb_u64(n);
    st_.absorb(p, n);
}

void FsOracle::absorb_elem(const RingCtx& ctx, const RingElem& e) {
    ByteWriter w;
    ctx.encode(e, w);
    absorb(w.bytes());
}

void FsOracle::absorb_vec(const RingCtx& ctx, const RingVec& v) {
    ByteWriter w;
    w.u32v(static_cast<u32>(v.size()));
    ctx.encode_vec(v, w);
    absorb(w.bytes());
}

void FsOracle::absorb_ints(const std::vector<i64>& v) {
    ByteWriter w;
    w.u32v(static_cast<u32>(v.size()));
    for (i64 x : v) w.i64v(x);
    absorb(w.bytes());
}

std::array<u8, 32> FsOracle::seed(const std::string& label) {
    st_.absorb_label(label);
    Shake256 copy = st_;
    std::array<u8, 32> out{};
    copy.squeeze(out.data(), out.size());
    return out;
}

RingElem FsOracle::challenge(const RingCtx& ctx, bool symmetric) {
    const int idx = challenge_calls_++;
    const auto s = seed(symmetric ? "challenge-sym" : "challenge");
    if (challenge_override) {
        if (auto c = challenge_override(idx)) return *c;
    }
    return expand_challenge(ctx, s, "c", symmetric);
}

std::vector<u128> FsOracle::scalars(const RingCtx& ctx, size_t n, const std::string& label) {
    const auto s = seed(label);
    Rng rng(s, "fs/scalars/" + label);
    return sample_uniform_scalars(rng, ctx.zq(), n);
}

RingElem expand_challenge(const RingCtx& ctx, const std::array<u8, 32>& seed,
                          const std::string& label, bool symmetric) {
    Rng rng(seed, "fs/challenge/" + label);
    return symmetric ? sample_challenge_sym(rng, ctx) : sample_challenge(rng, ctx);
}

RingVec pack_ints(const RingCtx& ctx, const std::vector<i64>& v) {
    const u32 d = ctx.d();
    if (v.size() % d != 0) throw std::invalid_argument("pack size");
    RingVec out;
    out.reserve(v.size() / d);
    for (size_t b = 0; b < v.size() / d; ++b) {
        RingElem e = ctx.zero();
        for (u32 i = 0; i < d; ++i) e.c[i] = ctx.zq().from_i64(v[b * d + i]);
        out.push_back(std::move(e));
    }
    return out;
}

RingVec combine_rows_sigma(const RingCtx& ctx, const ProjMatrix& m,
                           const std::vector<u128>& d1) {
    // sigma_{-1} maps coefficient o of the row polynomial to position 0 when
    // o = 0 and to position d-o with a sign flip otherwise; entries being
    // ternary reduces the combination to signed additions of d1_j.
    const u32 d = ctx.d();
    const u32 blocks = m.cols / d;
    RingVec out(blocks, ctx.zero());
    const Zq& zq = ctx.zq();
    for (u32 j = 0; j < m.rows; ++j) {
        const u128 w = d1[j];
        const u128 nw = zq.neg(w);
        const signed char* row = &m.e[static_cast<size_t>(j) * m.cols];
        for (u32 b = 0; b < blocks; ++b) {
            RingElem& acc = out[b];
            const signed char* blk = row + static_cast<size_t>(b) * d;
            for (u32 o = 0; o < d; ++o) {
                const int e = blk[o];
                if (e == 0) continue;
                const u32 pos = o == 0 ? 0 : d - o;
                const bool plus = (e == 1) == (o == 0);  // sign of e * sigma_{-1} flip
                acc.c[pos] = zq.add(acc.c[pos], plus ? w : nw);
            }
        }
    }
    return out;
}

RingVec combine_units_sigma(const RingCtx& ctx, const std::vector<u128>& d1, u32 count) {
    const u32 d = ctx.d();
    const u32 blocks = count / d;
    RingVec out(blocks, ctx.zero());
    const Zq& zq = ctx.zq();
    for (u32 j = 0; j < count; ++j) {
        const u32 b = j / d, o = j % d;
        const u32 pos = o == 0 ? 0 : d - o;
        const u128 add = o == 0 ? d1[j] : zq.neg(d1[j]);
        out[b].c[pos] = zq.add(out[b].c[pos], add);
    }
    return out;
}

bool l2_within(const RingCtx& ctx, const RingVec& z, u128 sigma_sq, u64 dim_coeffs) {
    const U256 lhs = ctx.norm_l2_sq(z);
    const U256 rhs = mul_wide(sigma_sq, static_cast<u128>(2) * dim_coeffs);
    return cmp256(lhs, rhs) <= 0;
}

void write_proof_header(ByteWriter& w, ProofKind kind, const ProveOptions& opt) {
    w.u8v(static_cast<u8>(kind));
    w.u8v(1);  // version
    w.u8v(opt.record_seed ? 1 : 0);
    if (opt.record_seed) w.raw(opt.record_seed->data(), opt.record_seed->size());
}

ProofHeader read_proof_header(ByteReader& r, ProofKind expect) {
    ProofHeader h{};
    h.kind = static_cast<ProofKind>(r.u8v());
    if (h.kind != expect) throw ParseError("proof kind mismatch");
    h.version = r.u8v();
    if (h.version != 1) throw ParseError("unknown proof version");
    const u8 flags = r.u8v();
    if (flags & ~static_cast<u8>(1)) throw ParseError("unknown header flags");
    if (flags & 1) {
        std::array<u8, 32> s{};
        const u8* p = r.take(32);
        std::copy(p, p + 32, s.begin());
        h.seed = s;
    }
    return h;
}

}  // namespace pqledger
