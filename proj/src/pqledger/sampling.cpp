#include "pqledger/sampling.hpp"

#include "pqledger/fpexp.hpp"

#include <cmath>
#include <stdexcept>

namespace pqledger {

Rng::Rng(const u8* seed, size_t seed_len, const std::string& label) {
    xof_.absorb_label("pqledger/rng");
    xof_.absorb_u64(seed_len);
    xof_.absorb(seed, seed_len);
    xof_.absorb_label(label);
}

u8 Rng::byte() {
    u8 b;
    xof_.squeeze(&b, 1);
    return b;
}

u64 Rng::next_u64() { return xof_.squeeze_u64(); }

u128 Rng::next_u128() {
    const u64 lo = next_u64();
    const u64 hi = next_u64();
    return (static_cast<u128>(hi) << 64) | lo;
}

u32 Rng::bits(unsigned nbits) {
    if (bitcnt_ < nbits) {
        bitbuf_ |= static_cast<u32>(byte()) << bitcnt_;
        bitcnt_ += 8;
    }
    const u32 r = bitbuf_ & ((1u << nbits) - 1);
    bitbuf_ >>= nbits;
    bitcnt_ -= nbits;
    return r;
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Rng Rng::fork(const std::string& label) {
    u8 seed[32];
    fill(seed, sizeof seed);
    return Rng(seed, sizeof seed, label);
}

std::vector<int> sample_chi(Rng& rng, size_t count) {
    std::vector<int> out(count);
    for (auto& v : out) {
        const u32 t = rng.bits(4);  // 0..4 -> +1, 5..9 -> -1, 10..15 -> 0
        v = t < 5 ? 1 : (t < 10 ? -1 : 0);
    }
    return out;
}

RingElem sample_chi_poly(Rng& rng, const RingCtx& ctx) {
    RingElem r = ctx.zero();
    const auto v = sample_chi(rng, ctx.d());
    for (u32 i = 0; i < ctx.d(); ++i) r.c[i] = ctx.zq().from_i64(v[i]);
    return r;
}

RingVec sample_chi_vec(Rng& rng, const RingCtx& ctx, size_t k) {
    RingVec out;
    out.reserve(k);
    for (size_t i = 0; i < k; ++i) out.push_back(sample_chi_poly(rng, ctx));
    return out;
}

u128 sample_uniform_zq(Rng& rng, const Zq& zq) {
    const unsigned bits = zq.bits();
    const unsigned bytes = (bits + 7) / 8;
    const unsigned topshift = 8 * bytes - bits;
    while (true) {
        u128 v = 0;
        for (unsigned i = 0; i < bytes; ++i) v = (v << 8) | rng.byte();
        v >>= topshift;
        if (v < zq.q()) return v;
    }
}

std::vector<u128> sample_uniform_scalars(Rng& rng, const Zq& zq, size_t n) {
    std::vector<u128> out(n);
    for (auto& v : out) v = sample_uniform_zq(rng, zq);
    return out;
}

RingElem sample_uniform_poly(Rng& rng, const RingCtx& ctx) {
    RingElem r = ctx.zero();
    for (u32 i = 0; i < ctx.d(); ++i) r.c[i] = sample_uniform_zq(rng, ctx.zq());
    return r;
}

RingElem sample_uniform_zero_prefix(Rng& rng, const RingCtx& ctx, u32 zero_prefix) {
    RingElem r = ctx.zero();
    for (u32 i = zero_prefix; i < ctx.d(); ++i) r.c[i] = sample_uniform_zq(rng, ctx.zq());
    return r;
}

namespace {

int ternary_challenge_coeff(Rng& rng) {
    // two fair bits: 00,01 -> 0; 10 -> +1; 11 -> -1
    const u32 t = rng.bits(2);
    if (t < 2) return 0;
    return t == 2 ? 1 : -1;
}

}  // namespace

RingElem sample_challenge(Rng& rng, const RingCtx& ctx) {
    const u32 omega = ctx.params().omega;
    while (true) {
        RingElem c = ctx.zero();
        u32 l1 = 0;
        for (u32 i = 0; i < ctx.d(); ++i) {
            const int v = ternary_challenge_coeff(rng);
            l1 += static_cast<u32>(v != 0);
            c.c[i] = ctx.zq().from_i64(v);
        }
        if (l1 <= omega) return c;
    }
}

RingElem sample_challenge_sym(Rng& rng, const RingCtx& ctx) {
    // sigma_{-1}(c) = c means c_k = -c_{d-k} for k >= 1 (forcing c_{d/2} = 0);
    // the free half determines the rest.
    const u32 d = ctx.d();
    const u32 omega = ctx.params().omega;
    while (true) {
        RingElem c = ctx.zero();
        u32 l1 = 0;
        const int v0 = ternary_challenge_coeff(rng);
        l1 += static_cast<u32>(v0 != 0);
        c.c[0] = ctx.zq().from_i64(v0);
        for (u32 k = 1; k < d / 2; ++k) {
            const int v = ternary_challenge_coeff(rng);
            l1 += 2 * static_cast<u32>(v != 0);
            c.c[k] = ctx.zq().from_i64(v);
            c.c[d - k] = ctx.zq().from_i64(-v);
        }
        if (l1 <= omega) return c;
    }
}

GaussianSampler::GaussianSampler(double sigma) : sigma_(sigma) {
    if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
    use_cdt_ = sigma <= kCdtLimit;
    if (!use_cdt_) {
        cut_ = 0;
        return;
    }
    cut_ = static_cast<i64>(std::ceil(13.5 * sigma)) + 1;
    const long double s2 = 2.0L * static_cast<long double>(sigma) * sigma;
    long double total = 0;
    std::vector<long double> p(static_cast<size_t>(2 * cut_ + 1));
    for (i64 k = -cut_; k <= cut_; ++k) {
        p[static_cast<size_t>(k + cut_)] = std::exp(-static_cast<long double>(k) * k / s2);
        total += p[static_cast<size_t>(k + cut_)];
    }
    cdt_.resize(p.size());
    long double acc = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        acc += p[i] / total;
        long double scaled = acc * 18446744073709551615.0L;  // 2^64 - 1
        if (scaled > 18446744073709551615.0L) scaled = 18446744073709551615.0L;
        cdt_[i] = static_cast<u64>(scaled);
    }
    cdt_.back() = ~static_cast<u64>(0);
}

i64 GaussianSampler::sample(Rng& rng) const {
    if (use_cdt_) {
        const u64 u = rng.next_u64();
        size_t lo = 0, hi = cdt_.size() - 1;
        while (lo < hi) {
            const size_t mid = (lo + hi) / 2;
            if (cdt_[mid] >= u)
                hi = mid;
            else
                lo = mid + 1;
        }
        return static_cast<i64>(lo) - cut_;
    }
    // rounded continuous Gaussian (Box-Muller); statistically indistinguishable
    // from the discrete law for sigma above the table threshold
    while (true) {
        const long double u1 =
            (static_cast<long double>(rng.next_u64()) + 1.0L) * 0x1.0p-64L;  // (0,1]
        const long double u2 = static_cast<long double>(rng.next_u64()) * 0x1.0p-64L;
        const long double r = std::sqrt(-2.0L * std::log(u1));
        const long double z = sigma_ * r * std::cos(2.0L * 3.14159265358979323846264338328L * u2);
        const long double lim = 13.5L * sigma_;
        if (z > lim || z < -lim) continue;
        return static_cast<i64>(std::llroundl(z));
    }
}

std::vector<i64> GaussianSampler::sample_vec(Rng& rng, size_t n) const {
    std::vector<i64> out(n);
    for (auto& v : out) v = sample(rng);
    return out;
}

ProjMatrix sample_proj_matrix(Rng& rng, u32 rows, u32 cols) {
    ProjMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.e.resize(static_cast<size_t>(rows) * cols);
    for (auto& v : m.e) {
        const u32 t = rng.bits(2);
        v = static_cast<signed char>((t & 1) - ((t >> 1) & 1));  // a - b
    }
    return m;
}

ProjMatrix expand_proj_matrix(const std::array<u8, 32>& seed, const std::string& label,
                              u32 rows, u32 cols) {
    Rng rng(seed, label);
    return sample_proj_matrix(rng, rows, cols);
}

std::vector<i128> proj_mul(const ProjMatrix& m, const std::vector<i128>& w) {
    if (w.size() != m.cols) throw std::invalid_argument("projection size mismatch");
    std::vector<i128> out(m.rows, 0);
    for (u32 r = 0; r < m.rows; ++r) {
        i128 acc = 0;
        const signed char* row = &m.e[static_cast<size_t>(r) * m.cols];
        for (u32 c = 0; c < m.cols; ++c) {
            const int e = row[c];
            if (e == 1)
                acc += w[c];
            else if (e == -1)
                acc -= w[c];
        }
        out[r] = acc;
    }
    return out;
}

bool rej_accept_with_u(const std::vector<i128>& z, const std::vector<i128>& v, u128 sigma_sq,
                       u128 u) {
    if (z.size() != v.size()) throw std::invalid_argument("rejection size mismatch");
    i128 dot = 0, vsq = 0;
    for (size_t i = 0; i < z.size(); ++i) {
        dot += z[i] * v[i];
        vsq += v[i] * v[i];
    }
    // accept iff u < (1/3) exp((vsq - 2 dot) / (2 sigma^2))
    return rej_decision(vsq - 2 * dot, 2 * sigma_sq, u);
}

bool rej_accept(Rng& rng, const std::vector<i128>& z, const std::vector<i128>& v,
                u128 sigma_sq) {
    return rej_accept_with_u(z, v, sigma_sq, rng.next_u128());
}

}  // namespace pqledger
