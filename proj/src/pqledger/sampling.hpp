#pragma once

#include "pqledger/ring.hpp"
#include "pqledger/shake.hpp"

#include <array>
#include <cmath>

namespace pqledger {

// Deterministic random stream (SHAKE256 expansion of a seed and a label).
// One instance per logical sampler; never shared across threads.
class Rng {
public:
    Rng(const u8* seed, size_t seed_len, const std::string& label);
    Rng(const std::array<u8, 32>& seed, const std::string& label)
        : Rng(seed.data(), seed.size(), label) {}

    void fill(u8* out, size_t n) { xof_.squeeze(out, n); }
    u8 byte();
    u64 next_u64();
    u128 next_u128();
    u32 bits(unsigned nbits);  // nbits <= 8, buffered
    double uniform01();        // 53-bit uniform in [0,1)

    Rng fork(const std::string& label);

private:
    Shake256 xof_;
    u32 bitbuf_ = 0;
    unsigned bitcnt_ = 0;
};

// chi on {-1,0,1}: P(+-1) = 5/16, P(0) = 6/16.
std::vector<int> sample_chi(Rng& rng, size_t count);
RingElem sample_chi_poly(Rng& rng, const RingCtx& ctx);
RingVec sample_chi_vec(Rng& rng, const RingCtx& ctx, size_t k);

u128 sample_uniform_zq(Rng& rng, const Zq& zq);
std::vector<u128> sample_uniform_scalars(Rng& rng, const Zq& zq, size_t n);
RingElem sample_uniform_poly(Rng& rng, const RingCtx& ctx);
// Uniform with the first `zero_prefix` coefficients forced to zero.
RingElem sample_uniform_zero_prefix(Rng& rng, const RingCtx& ctx, u32 zero_prefix);

// Ternary challenge, coefficients i.i.d. with P(0)=1/2, P(+-1)=1/4,
// resampled until ||c||_1 <= omega. The symmetric variant additionally
// enforces sigma_{-1}(c) = c by mirroring half of the coefficients.
RingElem sample_challenge(Rng& rng, const RingCtx& ctx);
RingElem sample_challenge_sym(Rng& rng, const RingCtx& ctx);

// Discrete Gaussian, centered at zero. Exact CDT below the table threshold,
// rounded continuous Gaussian above it; both deterministic given the stream.
class GaussianSampler {
public:
    explicit GaussianSampler(double sigma);
    static GaussianSampler from_sigma_sq(u128 sigma_sq) {
        return GaussianSampler(std::sqrt(static_cast<double>(sigma_sq)));
    }

    double sigma() const { return sigma_; }
    i64 sample(Rng& rng) const;
    std::vector<i64> sample_vec(Rng& rng, size_t n) const;

    static constexpr double kCdtLimit = 64.0;

private:
    double sigma_;
    bool use_cdt_;
    i64 cut_;
    std::vector<u64> cdt_;  // cumulative over [-cut, cut]
};

// Bin_1 projection matrix: entries a-b for independent fair bits.
struct ProjMatrix {
    u32 rows = 0, cols = 0;
    std::vector<signed char> e;
    int at(u32 r, u32 c) const { return e[static_cast<size_t>(r) * cols + c]; }
};

ProjMatrix sample_proj_matrix(Rng& rng, u32 rows, u32 cols);
ProjMatrix expand_proj_matrix(const std::array<u8, 32>& seed, const std::string& label,
                              u32 rows, u32 cols);

std::vector<i128> proj_mul(const ProjMatrix& m, const std::vector<i128>& w);

// Rejection sampling (Rej_0): accept z = y + v with probability
// min(1, (1/M) exp((-2<z,v> + |v|^2) / (2 sigma^2))), M = 3.
bool rej_accept(Rng& rng, const std::vector<i128>& z, const std::vector<i128>& v,
                u128 sigma_sq);
// Same decision with the uniform draw supplied by the caller (test hook).
bool rej_accept_with_u(const std::vector<i128>& z, const std::vector<i128>& v, u128 sigma_sq,
                       u128 u);

}  // namespace pqledger
