#include "pqledger/ring.hpp"

#include <numeric>
#include <stdexcept>

namespace pqledger {

RingCtx::RingCtx(const ParamSet& ps) : ps_(ps), zq_(ps.q), d_(ps.d), l_(ps.l), m_(ps.d / ps.l) {
    levels_ = 0;
    while ((1u << levels_) < l_) ++levels_;
    coeff_bytes_ = (zq_.bits() + 7) / 8;
    inv2_ = zq_.inv(2);
    inv_l_ = zq_.inv(l_);

    // zeta = g^((q-1)/2l) for the smallest quadratic non-residue g; since
    // (q-1)/2l is odd for q = 2l+1 (mod 4l), zeta^l = g^((q-1)/2) = -1.
    const u128 exp = (zq_.q() - 1) / (static_cast<u128>(2) * l_);
    u128 g = 2;
    while (zq_.pow(g, (zq_.q() - 1) / 2) != zq_.q() - 1) ++g;
    zeta_ = zq_.pow(g, exp);

    butterfly_tables();

    slot_gamma_.resize(l_);
    for (u32 j = 0; j < l_; ++j)
        slot_gamma_[j] = zq_.pow(zeta_, (2 * j + 1) % (2 * l_));
}

void RingCtx::butterfly_tables() {
    // Exponent bookkeeping for the splitting tree of X^d - zeta^l.
    stage_w_.resize(levels_);
    stage_inv2w_.resize(levels_);
    std::vector<u32> exps{l_};  // exponents (mod 2l) of the current segments
    for (unsigned s = 0; s < levels_; ++s) {
        const size_t segs = exps.size();
        stage_w_[s].resize(segs);
        stage_inv2w_[s].resize(segs);
        std::vector<u32> next(2 * segs);
        for (size_t i = 0; i < segs; ++i) {
            const u32 e = exps[i];
            const u32 h = e / 2;
            const u128 w = zq_.pow(zeta_, h);
            stage_w_[s][i] = w;
            stage_inv2w_[s][i] = zq_.inv(zq_.mul(2, w));
            next[2 * i] = h;
            next[2 * i + 1] = (h + l_) % (2 * l_);
        }
        // Segment order after this stage interleaves as [seg*2] layout:
        // segment i splits in place into (i_lo, i_hi) halves, so the child
        // order is exactly `next` flattened pairwise.
        exps = std::move(next);
    }
    leaf_pos_.assign(l_, 0);
    for (u32 pos = 0; pos < l_; ++pos) {
        const u32 e = exps[pos];  // odd exponent
        leaf_pos_[((e - 1) / 2) % l_] = pos;
    }
}

RingElem RingCtx::one() const {
    RingElem r = zero();
    r.c[0] = 1;
    return r;
}

RingElem RingCtx::from_value(u128 v) const {
    RingElem r = zero();
    r.c[0] = zq_.reduce_u128(v);
    return r;
}

RingElem RingCtx::from_centered(const std::vector<i128>& v) const {
    RingElem r = zero();
    for (u32 i = 0; i < d_ && i < v.size(); ++i) r.c[i] = zq_.from_centered(v[i]);
    return r;
}

RingElem RingCtx::monomial(u32 k, bool negative) const {
    RingElem r = zero();
    r.c[k % d_] = negative ? zq_.q() - 1 : 1;
    if ((k / d_) % 2 == 1) r.c[k % d_] = zq_.neg(r.c[k % d_]);  // X^d = -1
    return r;
}

RingElem RingCtx::add(const RingElem& a, const RingElem& b) const {
    RingElem r = a;
    add_inplace(r, b);
    return r;
}

RingElem RingCtx::sub(const RingElem& a, const RingElem& b) const {
    RingElem r = a;
    sub_inplace(r, b);
    return r;
}

void RingCtx::add_inplace(RingElem& a, const RingElem& b) const {
    for (u32 i = 0; i < d_; ++i) a.c[i] = zq_.add(a.c[i], b.c[i]);
}

void RingCtx::sub_inplace(RingElem& a, const RingElem& b) const {
    for (u32 i = 0; i < d_; ++i) a.c[i] = zq_.sub(a.c[i], b.c[i]);
}

RingElem RingCtx::neg(const RingElem& a) const {
    RingElem r = zero();
    for (u32 i = 0; i < d_; ++i) r.c[i] = zq_.neg(a.c[i]);
    return r;
}

RingElem RingCtx::scalar_mul(u128 s, const RingElem& a) const {
    RingElem r = zero();
    s = zq_.reduce_u128(s);
    for (u32 i = 0; i < d_; ++i) r.c[i] = zq_.mul(s, a.c[i]);
    return r;
}

NttVec RingCtx::ntt(const RingElem& a) const {
    std::vector<u128> w = a.c;
    u32 seglen = d_;
    for (unsigned s = 0; s < levels_; ++s) {
        const u32 half = seglen / 2;
        const size_t segs = stage_w_[s].size();
        for (size_t seg = 0; seg < segs; ++seg) {
            const u128 tw = stage_w_[s][seg];
            const size_t base = seg * seglen;
            for (u32 i = 0; i < half; ++i) {
                const u128 u = w[base + i];
                const u128 v = zq_.mul(tw, w[base + half + i]);
                w[base + i] = zq_.add(u, v);
                w[base + half + i] = zq_.sub(u, v);
            }
        }
        seglen = half;
    }
    NttVec out{std::vector<u128>(d_)};
    for (u32 j = 0; j < l_; ++j) {
        const u32 pos = leaf_pos_[j];
        for (u32 t = 0; t < m_; ++t) out.c[j * m_ + t] = w[pos * m_ + t];
    }
    return out;
}

RingElem RingCtx::intt(const NttVec& v) const {
    std::vector<u128> w(d_);
    for (u32 j = 0; j < l_; ++j) {
        const u32 pos = leaf_pos_[j];
        for (u32 t = 0; t < m_; ++t) w[pos * m_ + t] = v.c[j * m_ + t];
    }
    u32 seglen = 2 * m_;
    for (unsigned s = levels_; s-- > 0;) {
        const u32 half = seglen / 2;
        const size_t segs = stage_w_[s].size();
        for (size_t seg = 0; seg < segs; ++seg) {
            const u128 i2w = stage_inv2w_[s][seg];
            const size_t base = seg * seglen;
            for (u32 i = 0; i < half; ++i) {
                const u128 x = w[base + i];
                const u128 y = w[base + half + i];
                w[base + i] = zq_.mul(inv2_, zq_.add(x, y));
                w[base + half + i] = zq_.mul(i2w, zq_.sub(x, y));
            }
        }
        seglen *= 2;
    }
    return RingElem{std::move(w)};
}

NttVec RingCtx::nmul(const NttVec& a, const NttVec& b) const {
    NttVec out{std::vector<u128>(d_, 0)};
    nmul_acc(a, b, out);
    return out;
}

void RingCtx::nmul_acc(const NttVec& a, const NttVec& b, NttVec& acc) const {
    if (m_ == 1) {
        for (u32 j = 0; j < l_; ++j) acc.c[j] = zq_.add(acc.c[j], zq_.mul(a.c[j], b.c[j]));
        return;
    }
    if (m_ == 2) {
        for (u32 j = 0; j < l_; ++j) {
            const u128 a0 = a.c[2 * j], a1 = a.c[2 * j + 1];
            const u128 b0 = b.c[2 * j], b1 = b.c[2 * j + 1];
            const u128 g = slot_gamma_[j];
            const u128 c0 = zq_.add(zq_.mul(a0, b0), zq_.mul(g, zq_.mul(a1, b1)));
            const u128 c1 = zq_.add(zq_.mul(a0, b1), zq_.mul(a1, b0));
            acc.c[2 * j] = zq_.add(acc.c[2 * j], c0);
            acc.c[2 * j + 1] = zq_.add(acc.c[2 * j + 1], c1);
        }
        return;
    }
    // general slot degree: schoolbook with X^m = gamma folding
    std::vector<u128> tmp(2 * m_);
    for (u32 j = 0; j < l_; ++j) {
        std::fill(tmp.begin(), tmp.end(), 0);
        for (u32 s = 0; s < m_; ++s) {
            if (a.c[j * m_ + s] == 0) continue;
            for (u32 t = 0; t < m_; ++t)
                tmp[s + t] = zq_.add(tmp[s + t], zq_.mul(a.c[j * m_ + s], b.c[j * m_ + t]));
        }
        for (u32 t = 0; t < m_; ++t)
            acc.c[j * m_ + t] =
                zq_.add(acc.c[j * m_ + t], zq_.add(tmp[t], zq_.mul(slot_gamma_[j], tmp[t + m_])));
    }
}

NttVec RingCtx::nadd(const NttVec& a, const NttVec& b) const {
    NttVec r{std::vector<u128>(d_)};
    for (u32 i = 0; i < d_; ++i) r.c[i] = zq_.add(a.c[i], b.c[i]);
    return r;
}

NttVec RingCtx::nsub(const NttVec& a, const NttVec& b) const {
    NttVec r{std::vector<u128>(d_)};
    for (u32 i = 0; i < d_; ++i) r.c[i] = zq_.sub(a.c[i], b.c[i]);
    return r;
}

NttVec RingCtx::nscale(u128 s, const NttVec& a) const {
    NttVec r{std::vector<u128>(d_)};
    s = zq_.reduce_u128(s);
    for (u32 i = 0; i < d_; ++i) r.c[i] = zq_.mul(s, a.c[i]);
    return r;
}

RingElem RingCtx::mul(const RingElem& a, const RingElem& b) const {
    return intt(nmul(ntt(a), ntt(b)));
}

RingElem RingCtx::mul_schoolbook(const RingElem& a, const RingElem& b) const {
    RingElem r = zero();
    for (u32 i = 0; i < d_; ++i) {
        if (a.c[i] == 0) continue;
        for (u32 j = 0; j < d_; ++j) {
            if (b.c[j] == 0) continue;
            const u128 p = zq_.mul(a.c[i], b.c[j]);
            const u32 k = i + j;
            if (k < d_)
                r.c[k] = zq_.add(r.c[k], p);
            else
                r.c[k - d_] = zq_.sub(r.c[k - d_], p);  // negacyclic wrap
        }
    }
    return r;
}

RingElem RingCtx::automorphism(const RingElem& a, u64 i) const {
    const u64 two_d = 2ull * d_;
    i %= two_d;
    if (i % 2 == 0 || std::gcd(i, two_d) != 1)
        throw std::invalid_argument("automorphism index must be an odd unit mod 2d");
    RingElem r = zero();
    for (u32 j = 0; j < d_; ++j) {
        const u64 t = (i * j) % two_d;
        if (t < d_)
            r.c[t] = a.c[j];
        else
            r.c[t - d_] = zq_.neg(a.c[j]);
    }
    return r;
}

u128 RingCtx::const_coeff_inner(const RingVec& x, const RingVec& y) const {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    u128 acc = 0;
    for (size_t k = 0; k < x.size(); ++k) {
        const RingElem p = mul(sigma_neg1(x[k]), y[k]);
        acc = zq_.add(acc, p.c[0]);
    }
    return acc;
}

std::vector<u128> RingCtx::ntt_average(const RingElem& a) const {
    const NttVec v = ntt(a);
    std::vector<u128> s(m_, 0);
    for (u32 j = 0; j < l_; ++j)
        for (u32 t = 0; t < m_; ++t) s[t] = zq_.add(s[t], v.c[j * m_ + t]);
    for (auto& x : s) x = zq_.mul(inv_l_, x);
    return s;
}

bool RingCtx::is_invertible(const RingElem& a) const {
    const NttVec v = ntt(a);
    for (u32 j = 0; j < l_; ++j) {
        bool nonzero = false;
        for (u32 t = 0; t < m_; ++t) nonzero = nonzero || v.c[j * m_ + t] != 0;
        if (!nonzero) return false;
    }
    return true;
}

bool RingCtx::inverse(const RingElem& a, RingElem& out) const {
    NttVec v = ntt(a);
    NttVec r{std::vector<u128>(d_, 0)};
    for (u32 j = 0; j < l_; ++j) {
        const u128* s = &v.c[j * m_];
        if (m_ == 1) {
            if (s[0] == 0) return false;
            r.c[j] = zq_.inv(s[0]);
            continue;
        }
        if (m_ == 2) {
            // (a0 + a1 X)^-1 = (a0 - a1 X) / (a0^2 - gamma a1^2) in the slot field
            const u128 det = zq_.sub(zq_.mul(s[0], s[0]), zq_.mul(slot_gamma_[j], zq_.mul(s[1], s[1])));
            if (det == 0) return false;
            const u128 idet = zq_.inv(det);
            r.c[2 * j] = zq_.mul(s[0], idet);
            r.c[2 * j + 1] = zq_.neg(zq_.mul(s[1], idet));
            continue;
        }
        return false;  // larger slot degrees are not used by any parameter set
    }
    out = intt(r);
    return true;
}

std::vector<i128> RingCtx::centered(const RingElem& a) const {
    std::vector<i128> v(d_);
    for (u32 i = 0; i < d_; ++i) v[i] = zq_.center(a.c[i]);
    return v;
}

std::vector<i128> RingCtx::centered(const RingVec& a) const {
    std::vector<i128> v;
    v.reserve(a.size() * d_);
    for (const auto& e : a)
        for (u32 i = 0; i < d_; ++i) v.push_back(zq_.center(e.c[i]));
    return v;
}

u128 RingCtx::norm_inf(const RingElem& a) const {
    u128 m = 0;
    for (u32 i = 0; i < d_; ++i) m = std::max(m, abs_i128(zq_.center(a.c[i])));
    return m;
}

u128 RingCtx::norm_inf(const RingVec& a) const {
    u128 m = 0;
    for (const auto& e : a) m = std::max(m, norm_inf(e));
    return m;
}

u128 RingCtx::norm_l1(const RingElem& a) const {
    u128 s = 0;
    for (u32 i = 0; i < d_; ++i) s += abs_i128(zq_.center(a.c[i]));
    return s;
}

U256 RingCtx::norm_l2_sq(const RingElem& a) const {
    U256 s{0, 0};
    for (u32 i = 0; i < d_; ++i) {
        const u128 v = abs_i128(zq_.center(a.c[i]));
        s = add256(s, mul_wide(v, v));
    }
    return s;
}

U256 RingCtx::norm_l2_sq(const RingVec& a) const {
    U256 s{0, 0};
    for (const auto& e : a) s = add256(s, norm_l2_sq(e));
    return s;
}

void RingCtx::encode(const RingElem& a, ByteWriter& w) const {
    for (u32 i = 0; i < d_; ++i) {
        u128 v = a.c[i];
        for (size_t b = 0; b < coeff_bytes_; ++b) {
            w.u8v(static_cast<u8>(v));
            v >>= 8;
        }
    }
}

RingElem RingCtx::decode(ByteReader& r) const {
    RingElem a = zero();
    for (u32 i = 0; i < d_; ++i) {
        const u8* p = r.take(coeff_bytes_);
        u128 v = 0;
        for (size_t b = coeff_bytes_; b-- > 0;) v = (v << 8) | p[b];
        if (v >= zq_.q()) throw ParseError("coefficient out of range");
        a.c[i] = v;
    }
    return a;
}

void RingCtx::encode_vec(const RingVec& a, ByteWriter& w) const {
    for (const auto& e : a) encode(e, w);
}

RingVec RingCtx::decode_vec(ByteReader& r, size_t n) const {
    RingVec v;
    v.reserve(n);
    for (size_t i = 0; i < n; ++i) v.push_back(decode(r));
    return v;
}

RingVec RingCtx::vadd(const RingVec& a, const RingVec& b) const {
    RingVec r = a;
    for (size_t i = 0; i < r.size(); ++i) add_inplace(r[i], b[i]);
    return r;
}

RingVec RingCtx::vsub(const RingVec& a, const RingVec& b) const {
    RingVec r = a;
    for (size_t i = 0; i < r.size(); ++i) sub_inplace(r[i], b[i]);
    return r;
}

RingVec RingCtx::vscale(const RingElem& s, const RingVec& a) const {
    const NttVec sh = ntt(s);
    RingVec r;
    r.reserve(a.size());
    for (const auto& e : a) r.push_back(intt(nmul(sh, ntt(e))));
    return r;
}

std::vector<NttVec> RingCtx::to_ntt(const RingVec& v) const {
    std::vector<NttVec> h;
    h.reserve(v.size());
    for (const auto& e : v) h.push_back(ntt(e));
    return h;
}

RingVec RingCtx::matvec(const NttMat& m, const RingVec& x) const {
    return matvec_ntt(m, to_ntt(x));
}

RingVec RingCtx::matvec_ntt(const NttMat& m, const std::vector<NttVec>& xh) const {
    RingVec out;
    out.reserve(m.rows);
    for (u32 r = 0; r < m.rows; ++r) {
        NttVec acc{std::vector<u128>(d_, 0)};
        for (u32 c = 0; c < m.cols; ++c) nmul_acc(m.at(r, c), xh[c], acc);
        out.push_back(intt(acc));
    }
    return out;
}

RingElem RingCtx::row_dot(const std::vector<NttVec>& row, const RingVec& x) const {
    return row_dot_ntt(row, to_ntt(x));
}

RingElem RingCtx::row_dot_ntt(const std::vector<NttVec>& row,
                              const std::vector<NttVec>& xh) const {
    NttVec acc{std::vector<u128>(d_, 0)};
    for (size_t i = 0; i < row.size(); ++i) nmul_acc(row[i], xh[i], acc);
    return intt(acc);
}

NttMat RingCtx::rows_to_ntt(const std::vector<RingVec>& rows) const {
    NttMat m;
    m.rows = static_cast<u32>(rows.size());
    m.cols = rows.empty() ? 0 : static_cast<u32>(rows[0].size());
    m.e.reserve(static_cast<size_t>(m.rows) * m.cols);
    for (const auto& row : rows)
        for (const auto& e : row) m.e.push_back(ntt(e));
    return m;
}

}  // namespace pqledger
