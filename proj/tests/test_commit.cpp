#include <doctest.h>

#include "pqledger/commit.hpp"

using namespace pqledger;

namespace {

struct Fixture {
    const ParamSet& ps = desk_params();
    RingCtx ctx{ps};
    PublicParams pp;
    Rng rng{std::array<u8, 32>{30}, "commit-tests"};
    Fixture() { pp = expand_public_params(ctx, std::array<u8, 32>{31}); }
};

}  // namespace

TEST_CASE("keygen structure") {
    Fixture f;
    KeyPair kp = keygen(f.ctx, f.pp.tx, f.rng);
    CHECK(f.ctx.norm_inf(kp.sk.s1) <= 1);
    CHECK(f.ctx.norm_inf(kp.sk.e1) <= 1);
    CHECK(f.ctx.norm_inf(kp.sk.s2) <= 1);
    CHECK(f.ctx.norm_inf(kp.sk.e2) <= 1);
    // pk1 - A^T s1 = e1
    const auto s1h = f.ctx.to_ntt(kp.sk.s1);
    for (u32 i = 0; i < f.ps.width(); ++i) {
        NttVec acc{std::vector<u128>(f.ctx.d(), 0)};
        for (u32 k = 0; k < f.ps.kappa; ++k) f.ctx.nmul_acc(f.pp.tx.A.at(k, i), s1h[k], acc);
        CHECK(f.ctx.sub(kp.pk.pk1[i], f.ctx.intt(acc)) == kp.sk.e1[i]);
    }
    // determinism
    Rng r1(std::array<u8, 32>{32}, "kg");
    Rng r2(std::array<u8, 32>{32}, "kg");
    const KeyPair a = keygen(f.ctx, f.pp.tx, r1);
    const KeyPair b = keygen(f.ctx, f.pp.tx, r2);
    CHECK(a.pk.pk1 == b.pk.pk1);
    CHECK(a.sk.s2 == b.sk.s2);
}

TEST_CASE("transaction commitment structure and homomorphism") {
    Fixture f;
    KeyPair kp = keygen(f.ctx, f.pp.tx, f.rng);
    const RingVec r = sample_chi_vec(f.rng, f.ctx, f.ps.width());
    SUBCASE("zero value leaves only the key rows") {
        const Commitment c = commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.zero(), r);
        CHECK(c.c1 == f.ctx.row_dot(kp.pk.pk1_ntt, r));
    }
    SUBCASE("row-wise sums open to the value sum") {
        const RingElem v1 = f.ctx.from_value(1000);
        const RingElem v2 = f.ctx.from_value(2345);
        const RingVec r2 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
        const Commitment c1 = commit_tx(f.ctx, f.pp.tx, kp.pk, v1, r);
        const Commitment c2 = commit_tx(f.ctx, f.pp.tx, kp.pk, v2, r2);
        Commitment sum = c1;
        add_commitment(f.ctx, sum, c2);
        const Commitment direct =
            commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.add(v1, v2), f.ctx.vadd(r, r2));
        CHECK(sum.c0 == direct.c0);
        CHECK(sum.c1 == direct.c1);
        CHECK(sum.c2 == direct.c2);
        CHECK(sum.c3 == direct.c3);
    }
    SUBCASE("wire format roundtrip") {
        const Commitment c = commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.from_value(7), r);
        ByteWriter w;
        encode_commitment(f.ctx, c, w);
        ByteReader rd(w.bytes());
        const Commitment back = decode_commitment(f.ctx, rd);
        CHECK(back.c0 == c.c0);
        CHECK(back.c3 == c.c3);
    }
}

TEST_CASE("extraction") {
    Fixture f;
    KeyPair kp = keygen(f.ctx, f.pp.tx, f.rng);
    SUBCASE("zero value") {
        const RingVec r = sample_chi_vec(f.rng, f.ctx, f.ps.width());
        const Commitment c = commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.zero(), r);
        RingElem out;
        REQUIRE(extract(f.ctx, c, kp.sk, out) == ExtractStatus::ok);
        CHECK(out == f.ctx.zero());
    }
    SUBCASE("random 32-bit values round-trip exactly") {
        for (int t = 0; t < 100; ++t) {
            const u64 v = f.rng.next_u64() & 0xffffffffULL;
            const RingVec r = sample_chi_vec(f.rng, f.ctx, f.ps.width());
            const Commitment c = commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.from_value(v), r);
            RingElem out;
            REQUIRE(extract(f.ctx, c, kp.sk, out) == ExtractStatus::ok);
            CHECK(out == f.ctx.from_value(v));
        }
    }
    SUBCASE("gross row inconsistency is reported") {
        // a mismatch well beyond the noise budget between the sqrt(q)-scaled
        // rows; the extractor's recovered noise blows the column budget
        const RingVec r = sample_chi_vec(f.rng, f.ctx, f.ps.width());
        Commitment c = commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.from_value(9), r);
        const u128 shift = f.ps.sqrt_q / 3;  // far above any honest e^T r
        c.c2 = f.ctx.add(c.c2, f.ctx.from_value(shift));
        RingElem out;
        CHECK(extract(f.ctx, c, kp.sk, out) != ExtractStatus::ok);
    }
    SUBCASE("column sums extract the running balance") {
        Commitment acc;
        i64 total = 0;
        for (int t = 0; t < 40; ++t) {
            const i64 v = static_cast<i64>(f.rng.bits(8)) - 100;
            const RingVec r = sample_chi_vec(f.rng, f.ctx, f.ps.width());
            const Commitment c =
                commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.from_value(f.ctx.zq().from_i64(v)), r);
            if (t == 0)
                acc = c;
            else
                add_commitment(f.ctx, acc, c);
            total += v;
        }
        RingElem out;
        REQUIRE(extract(f.ctx, acc, kp.sk, out) == ExtractStatus::ok);
        CHECK(out == f.ctx.from_value(f.ctx.zq().from_i64(total)));
    }
}

TEST_CASE("amplified difference separates unequal values") {
    // decryption rows for v != v' have infinity norm at least sqrt(q)/4
    Fixture f;
    KeyPair kp = keygen(f.ctx, f.pp.tx, f.rng);
    const u128 bound = f.ps.sqrt_q / 4;
    for (int t = 0; t < 50; ++t) {
        u64 v1 = f.rng.next_u64() & 0x7fffffffULL;
        u64 v2 = f.rng.next_u64() & 0x7fffffffULL;
        if (t % 3 == 0) v2 = v1 + 1 + f.rng.bits(6);  // small differences too
        if (v1 == v2) ++v2;
        const RingVec r1 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
        const RingVec r2 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
        const Commitment c1 = commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.from_value(v1), r1);
        const Commitment c2 = commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.from_value(v2), r2);
        // rows (e_j^T (r1-r2) + delta_j) computed through the key equations
        RingVec d0(f.ps.kappa);
        for (u32 i = 0; i < f.ps.kappa; ++i) d0[i] = f.ctx.sub(c1.c0[i], c2.c0[i]);
        const auto d0h = f.ctx.to_ntt(d0);
        const RingElem row1 =
            f.ctx.sub(f.ctx.row_dot_ntt(f.ctx.to_ntt(kp.sk.s1), d0h), f.ctx.sub(c1.c1, c2.c1));
        const RingElem row2 =
            f.ctx.sub(f.ctx.row_dot_ntt(f.ctx.to_ntt(kp.sk.s2), d0h), f.ctx.sub(c1.c2, c2.c2));
        const u128 norm = std::max(f.ctx.norm_inf(row1), f.ctx.norm_inf(row2));
        CHECK(norm >= bound);
    }
}

TEST_CASE("bdlop and abdlop commitments") {
    Fixture f;
    const u32 n = f.ps.width();
    std::vector<std::vector<NttVec>> b_rows{f.pp.poc.b1, f.pp.poc.bc_pp};
    const RingVec r = sample_chi_vec(f.rng, f.ctx, n);
    SUBCASE("zero messages leave the key rows") {
        RingVec msgs{f.ctx.zero(), f.ctx.zero()};
        const RingVec rows = commit_bdlop(f.ctx, f.pp.poc.a1, b_rows, msgs, r);
        REQUIRE(rows.size() == f.ps.kappa + 2);
        CHECK(rows[f.ps.kappa] == f.ctx.row_dot(f.pp.poc.b1, r));
    }
    SUBCASE("linear in the messages") {
        RingVec m1{sample_uniform_poly(f.rng, f.ctx), sample_uniform_poly(f.rng, f.ctx)};
        RingVec m2{sample_uniform_poly(f.rng, f.ctx), sample_uniform_poly(f.rng, f.ctx)};
        const RingVec rows1 = commit_bdlop(f.ctx, f.pp.poc.a1, b_rows, m1, r);
        const RingVec rows2 = commit_bdlop(f.ctx, f.pp.poc.a1, b_rows, m2, r);
        const RingVec rows12 =
            commit_bdlop(f.ctx, f.pp.poc.a1, b_rows,
                         RingVec{f.ctx.add(m1[0], m2[0]), f.ctx.add(m1[1], m2[1])},
                         f.ctx.vadd(r, r));
        for (size_t i = 0; i < rows1.size(); ++i)
            CHECK(f.ctx.add(rows1[i], rows2[i]) == rows12[i]);
    }
    SUBCASE("abdlop splits the binder") {
        const RingVec s = sample_chi_vec(f.rng, f.ctx, n);
        RingVec msgs{sample_uniform_poly(f.rng, f.ctx)};
        std::vector<std::vector<NttVec>> rows1{f.pp.poc.b1};
        const RingVec rows = commit_abdlop(f.ctx, f.pp.poc.a1, f.pp.poc.a2, rows1, r, s, msgs);
        REQUIRE(rows.size() == f.ps.kappa + 1);
        CHECK(rows[f.ps.kappa] == f.ctx.add(f.ctx.row_dot(f.pp.poc.b1, s), msgs[0]));
    }
}

TEST_CASE("weak opening bullets") {
    Fixture f;
    const u32 n = f.ps.width();
    KeyPair kp = keygen(f.ctx, f.pp.tx, f.rng);
    const RingElem v = f.ctx.from_value(555);
    const RingVec r = sample_chi_vec(f.rng, f.ctx, n);
    const Commitment com = commit_tx(f.ctx, f.pp.tx, kp.pk, v, r);
    std::vector<std::vector<NttVec>> b_rows{kp.pk.pk1_ntt, kp.pk.pk2_ntt, f.pp.tx.B};
    const RingVec com_msgs{com.c1, com.c2, com.c3};
    const RingVec m_star{v, f.ctx.scalar_mul(f.ps.sqrt_q, v), v};
    const RingElem one = f.ctx.one();

    SUBCASE("honest opening with cbar = 1") {
        const auto res = check_weak_opening_bdlop(f.ctx, f.pp.tx.A, b_rows, com.c0, com_msgs,
                                                  one, r, m_star, f.ps.poc.s1);
        CHECK(res.ok);
    }
    SUBCASE("perturbed message fails the reconstruction bullet") {
        RingVec bad = m_star;
        bad[2] = f.ctx.add(bad[2], f.ctx.one());
        const auto res = check_weak_opening_bdlop(f.ctx, f.pp.tx.A, b_rows, com.c0, com_msgs,
                                                  one, r, bad, f.ps.poc.s1);
        CHECK(!res.ok);
        CHECK(res.failed == "message row");
    }
    SUBCASE("scaled randomness fails the norm bullet") {
        const RingVec big = f.ctx.vscale(f.ctx.from_value(f.ps.q / 2), r);
        const auto res = check_weak_opening_bdlop(f.ctx, f.pp.tx.A, b_rows, com.c0, com_msgs,
                                                  one, big, m_star, f.ps.poc.s1);
        CHECK(!res.ok);
        CHECK(res.failed == "randomness norm");
    }
    SUBCASE("abdlop variant accepts an honest opening") {
        const RingVec s = sample_chi_vec(f.rng, f.ctx, n);
        RingVec msgs{v};
        std::vector<std::vector<NttVec>> rows1{f.pp.poc.b1};
        const RingVec rows = commit_abdlop(f.ctx, f.pp.poc.a1, f.pp.poc.a2, rows1, r, s, msgs);
        const RingVec com0(rows.begin(), rows.begin() + f.ps.kappa);
        const RingVec cmsg(rows.begin() + f.ps.kappa, rows.end());
        const auto res =
            check_weak_opening_abdlop(f.ctx, f.pp.poc.a1, f.pp.poc.a2, rows1, com0, cmsg, one,
                                      r, s, msgs, f.ps.poc.s1, f.ps.poc.s2);
        CHECK(res.ok);
    }
}

TEST_CASE("commitment sums") {
    Fixture f;
    KeyPair kp = keygen(f.ctx, f.pp.tx, f.rng);
    const RingVec r1 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
    const RingVec r2 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
    const Commitment c1 = commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.from_value(77), r1);
    const Commitment c2 =
        commit_tx(f.ctx, f.pp.tx, kp.pk, f.ctx.from_value(f.ps.q - 77), r2);
    const Commitment single = sum_commitments(f.ctx, {&c1});
    CHECK(single.c1 == c1.c1);
    const Commitment sum = sum_commitments(f.ctx, {&c1, &c2});
    RingElem out;
    REQUIRE(extract(f.ctx, sum, kp.sk, out) == ExtractStatus::ok);
    CHECK(out == f.ctx.zero());  // v and -v cancel
}
