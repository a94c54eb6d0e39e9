#include <doctest.h>

#include "pqledger/ring.hpp"
#include "pqledger/sampling.hpp"

using namespace pqledger;

namespace {

struct Fixture {
    const ParamSet& ps = desk_params();
    RingCtx ctx{ps};
    Rng rng{std::array<u8, 32>{3}, "ring-tests"};
    RingElem random() { return sample_uniform_poly(rng, ctx); }
};

}  // namespace

TEST_CASE("ntt roundtrip is exact") {
    Fixture f;
    for (int i = 0; i < 50; ++i) {
        const RingElem p = f.random();
        CHECK(f.ctx.intt(f.ctx.ntt(p)) == p);
    }
    // also at production scale
    RingCtx big(paper_params());
    Rng rng(std::array<u8, 32>{4}, "ring-paper");
    for (int i = 0; i < 5; ++i) {
        const RingElem p = sample_uniform_poly(rng, big);
        CHECK(big.intt(big.ntt(p)) == p);
    }
}

TEST_CASE("constant polynomials have constant slots") {
    Fixture f;
    const RingElem c = f.ctx.from_value(1234567);
    const NttVec v = f.ctx.ntt(c);
    for (u32 j = 0; j < f.ctx.l(); ++j) {
        CHECK(v.c[j * f.ctx.m()] == 1234567);
        for (u32 t = 1; t < f.ctx.m(); ++t) CHECK(v.c[j * f.ctx.m() + t] == 0);
    }
}

TEST_CASE("ntt multiplication equals schoolbook convolution") {
    Fixture f;
    for (int i = 0; i < 30; ++i) {
        const RingElem a = f.random(), b = f.random();
        CHECK(f.ctx.mul(a, b) == f.ctx.mul_schoolbook(a, b));
        CHECK(f.ctx.nmul(f.ctx.ntt(a), f.ctx.ntt(b)) == f.ctx.ntt(f.ctx.mul_schoolbook(a, b)));
    }
}

TEST_CASE("multiplicative identities") {
    Fixture f;
    const RingElem a = f.random();
    CHECK(f.ctx.mul(a, f.ctx.one()) == a);
    // X^{d/2} * X^{d/2} = X^d = -1
    const RingElem half = f.ctx.monomial(f.ctx.d() / 2);
    const RingElem m1 = f.ctx.mul(half, half);
    CHECK(m1 == f.ctx.from_value(f.ps.q - 1));
}

TEST_CASE("automorphisms") {
    Fixture f;
    const RingElem p = f.random();
    CHECK(f.ctx.automorphism(p, 1) == p);
    // sigma_{-1}(X) = X^{2d-1} = -X^{d-1}
    const RingElem x = f.ctx.monomial(1);
    const RingElem sx = f.ctx.sigma_neg1(x);
    CHECK(sx == f.ctx.monomial(f.ctx.d() - 1, true));
    CHECK(f.ctx.sigma_neg1(f.ctx.sigma_neg1(p)) == p);
    // ring homomorphism on random pairs, random odd index
    for (u64 i : {3ULL, 5ULL, 127ULL, 2ULL * 64 - 1}) {
        const RingElem a = f.random(), b = f.random();
        CHECK(f.ctx.automorphism(f.ctx.mul(a, b), i) ==
              f.ctx.mul(f.ctx.automorphism(a, i), f.ctx.automorphism(b, i)));
        CHECK(f.ctx.automorphism(f.ctx.add(a, b), i) ==
              f.ctx.add(f.ctx.automorphism(a, i), f.ctx.automorphism(b, i)));
    }
    CHECK_THROWS_AS((void)f.ctx.automorphism(p, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)f.ctx.automorphism(p, 64), std::invalid_argument);
}

TEST_CASE("constant coefficient of sigma_{-1}(x)^T y equals the inner product") {
    Fixture f;
    const u32 n = 4;
    // unit vectors
    RingVec e1(n, f.ctx.zero());
    e1[0] = f.ctx.one();
    CHECK(f.ctx.const_coeff_inner(e1, e1) == 1);
    RingVec zero(n, f.ctx.zero());
    RingVec y;
    for (u32 i = 0; i < n; ++i) y.push_back(f.random());
    CHECK(f.ctx.const_coeff_inner(zero, y) == 0);
    for (int t = 0; t < 20; ++t) {
        RingVec x;
        for (u32 i = 0; i < n; ++i) x.push_back(f.random());
        // direct coefficient-wise oracle
        u128 want = 0;
        for (u32 i = 0; i < n; ++i)
            for (u32 j = 0; j < f.ctx.d(); ++j)
                want = f.ctx.zq().add(want, f.ctx.zq().mul(x[i].c[j], y[i].c[j]));
        CHECK(f.ctx.const_coeff_inner(x, y) == want);
    }
    RingVec shorter(n - 1, f.ctx.zero());
    CHECK_THROWS_AS((void)f.ctx.const_coeff_inner(shorter, y), std::invalid_argument);
}

TEST_CASE("slot average equals the low-degree truncation") {
    Fixture f;
    {
        RingElem p = f.ctx.zero();
        p.c[0] = 1;  // p_0..p_{m-1} = (1, 0, ...)
        const auto avg = f.ctx.ntt_average(p);
        CHECK(avg[0] == 1);
        for (u32 t = 1; t < f.ctx.m(); ++t) CHECK(avg[t] == 0);
    }
    for (int t = 0; t < 20; ++t) {
        const RingElem p = f.random();
        const auto avg = f.ctx.ntt_average(p);
        for (u32 i = 0; i < f.ctx.m(); ++i) CHECK(avg[i] == p.c[i]);
    }
    const auto z = f.ctx.ntt_average(f.ctx.zero());
    for (u32 i = 0; i < f.ctx.m(); ++i) CHECK(z[i] == 0);
}

TEST_CASE("invertibility via nonzero slots") {
    Fixture f;
    CHECK(f.ctx.is_invertible(f.ctx.one()));
    // X^{d/l} - zeta has a zero slot (j = 0)
    RingElem p = f.ctx.monomial(f.ctx.m());
    p.c[0] = f.ctx.zq().neg(f.ctx.zeta());
    CHECK(!f.ctx.is_invertible(p));
    for (int t = 0; t < 20; ++t) {
        const RingElem a = f.random();
        if (!f.ctx.is_invertible(a)) continue;
        RingElem inv;
        REQUIRE(f.ctx.inverse(a, inv));
        CHECK(f.ctx.mul(a, inv) == f.ctx.one());
    }
}

TEST_CASE("norms on centered representatives") {
    Fixture f;
    CHECK(f.ctx.norm_inf(f.ctx.zero()) == 0);
    CHECK(f.ctx.norm_l1(f.ctx.zero()) == 0);
    CHECK(f.ctx.norm_l2_sq(f.ctx.zero()).lo == 0);
    const RingElem qm1 = f.ctx.from_value(f.ps.q - 1);
    CHECK(f.ctx.norm_inf(qm1) == 1);  // centered representative is -1
    for (int t = 0; t < 20; ++t) {
        const RingElem w = f.random();
        U256 want{0, 0};
        for (u32 i = 0; i < f.ctx.d(); ++i) {
            const u128 c = abs_i128(f.ctx.zq().center(w.c[i]));
            want = add256(want, mul_wide(c, c));
        }
        CHECK(cmp256(f.ctx.norm_l2_sq(w), want) == 0);
    }
    // ||c a||_inf <= ||c||_1 ||a||_inf on ternary c
    Rng rng(std::array<u8, 32>{5}, "norm");
    for (int t = 0; t < 20; ++t) {
        const RingElem c = sample_challenge(rng, f.ctx);
        const RingElem a = f.random();
        CHECK(f.ctx.norm_inf(f.ctx.mul(c, a)) <= f.ctx.norm_l1(c) * f.ctx.norm_inf(a));
    }
    // triangle inequality for l2 (squared compare on (|a|+|b|)^2)
    for (int t = 0; t < 10; ++t) {
        const RingElem a = f.random(), b = f.random();
        const double na = std::sqrt(static_cast<double>(f.ctx.norm_l2_sq(a).lo));
        const double nb = std::sqrt(static_cast<double>(f.ctx.norm_l2_sq(b).lo));
        const double ns = std::sqrt(static_cast<double>(f.ctx.norm_l2_sq(f.ctx.add(a, b)).lo));
        CHECK(ns <= na + nb + 1e-3);
    }
}

TEST_CASE("the defining factorization holds") {
    // X^d + 1 = prod_j (X^{d/l} - zeta^{2j+1}) mod q, expanded coefficient-wise
    Fixture f;
    const Zq& zq = f.ctx.zq();
    std::vector<u128> poly{1};  // constant 1
    for (u32 j = 0; j < f.ctx.l(); ++j) {
        // multiply by X^m - gamma_j
        std::vector<u128> next(poly.size() + f.ctx.m(), 0);
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + f.ctx.m()] = zq.add(next[i + f.ctx.m()], poly[i]);
            next[i] = zq.sub(next[i], zq.mul(f.ctx.slot_gamma(j), poly[i]));
        }
        poly = std::move(next);
    }
    REQUIRE(poly.size() == f.ctx.d() + 1);
    CHECK(poly[0] == 1);
    CHECK(poly[f.ctx.d()] == 1);
    for (u32 i = 1; i < f.ctx.d(); ++i) CHECK(poly[i] == 0);
}

TEST_CASE("canonical encoding") {
    Fixture f;
    const RingElem a = f.random();
    ByteWriter w;
    f.ctx.encode(a, w);
    CHECK(w.bytes().size() == f.ctx.coeff_bytes() * f.ctx.d());
    ByteReader r(w.bytes());
    CHECK(f.ctx.decode(r) == a);
    // out-of-range coefficient rejected
    ByteWriter bad;
    for (u32 i = 0; i < f.ctx.d(); ++i)
        for (size_t b = 0; b < f.ctx.coeff_bytes(); ++b) bad.u8v(0xff);
    ByteReader rb(bad.bytes());
    CHECK_THROWS_AS((void)f.ctx.decode(rb), ParseError);
}
