#include <doctest.h>

#include "pqledger/zkp.hpp"

#include <cmath>

using namespace pqledger;

namespace {

struct Fixture {
    const ParamSet& ps = desk_params();
    RingCtx ctx{ps};
    PublicParams pp;
    Rng rng{std::array<u8, 32>{40}, "zkp-tests"};
    KeyPair kp;
    RingElem v;
    RingVec r, rp;
    Commitment com, comp;

    Fixture() {
        pp = expand_public_params(ctx, std::array<u8, 32>{41});
        kp = keygen(ctx, pp.tx, rng);
        v = ctx.from_value(42);
        r = sample_chi_vec(rng, ctx, ps.width());
        rp = sample_chi_vec(rng, ctx, ps.width());
        com = commit_tx(ctx, pp.tx, kp.pk, v, r);
        comp = commit_tx(ctx, pp.tx, kp.pk, v, rp);
    }

    PobStatement pob_stmt(const Commitment& sum, u32 n) {
        PobStatement st;
        st.context = Bytes{1};
        st.sum_com0 = sum.c0;
        st.sum_com3 = sum.c3;
        st.n_parties = n;
        return st;
    }
    Poe2Statement poe2_stmt(const Commitment& a, const Commitment& b) {
        Poe2Statement st;
        st.context = Bytes{2};
        st.pk = &kp.pk;
        st.com = &a;
        st.comp = &b;
        return st;
    }
    PocStatement poc_stmt(const Commitment& c) {
        PocStatement st;
        st.context = Bytes{3};
        st.pk = &kp.pk;
        st.com = &c;
        return st;
    }
    PoeStatement poe_stmt(Commitment a, const Commitment& b) {
        PoeStatement st;
        st.context = Bytes{4};
        st.pk = &kp.pk;
        st.com = std::move(a);
        st.comp = &b;
        return st;
    }
    PoaStatement poa_stmt(const Commitment& c) {
        PoaStatement st;
        st.context = Bytes{5};
        st.pk = &kp.pk;
        st.com1p = &c.c1;
        return st;
    }
};

// flips one byte past the header and expects rejection
template <typename VerifyFn>
void check_flip_rejected(const Bytes& proof, VerifyFn&& verify) {
    Bytes bad = proof;
    const size_t pos = 3 + bad.size() / 2;
    bad[pos % bad.size()] ^= 0x40;
    CHECK(!verify(bad).ok);
}

}  // namespace

TEST_CASE("pob completeness, soundness and extraction") {
    Fixture f;
    const RingElem vneg = f.ctx.from_value(f.ps.q - 42);
    const RingVec r2 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
    const Commitment com2 = commit_tx(f.ctx, f.pp.tx, f.kp.pk, vneg, r2);
    Commitment sum = f.com;
    add_commitment(f.ctx, sum, com2);
    const RingVec rsum = f.ctx.vadd(f.r, r2);

    SUBCASE("honest balanced pair verifies") {
        PobStatement st = f.pob_stmt(sum, 2);
        const Bytes pf = prove_pob(f.ctx, f.pp, st, rsum, f.rng);
        CHECK(verify_pob(f.ctx, f.pp, st, pf).ok);
        check_flip_rejected(pf, [&](const Bytes& b) { return verify_pob(f.ctx, f.pp, st, b); });
    }
    SUBCASE("value bumped by one fails the value row") {
        const Commitment com3 = commit_tx(f.ctx, f.pp.tx, f.kp.pk, f.ctx.from_value(43), f.r);
        Commitment badsum = com3;
        add_commitment(f.ctx, badsum, com2);
        PobStatement st = f.pob_stmt(badsum, 2);
        const Bytes pf = prove_pob(f.ctx, f.pp, st, rsum, f.rng);
        const auto res = verify_pob(f.ctx, f.pp, st, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "pob:value");
    }
    SUBCASE("inflated response fails the norm check") {
        PobStatement st = f.pob_stmt(sum, 2);
        const Bytes pf = prove_pob(f.ctx, f.pp, st, rsum, f.rng);
        ByteReader rd(pf);
        read_proof_header(rd, ProofKind::PoB);
        PobProof p = pob_deserialize(f.ctx, pf);
        p.z[0].c[0] = (f.ps.q - 1) / 2;
        ProveOptions opt;
        const Bytes bad = pob_serialize(f.ctx, p, opt);
        const auto res = verify_pob(f.ctx, f.pp, st, bad);
        CHECK(!res.ok);
        CHECK(res.failed == "pob:norm");
    }
    SUBCASE("tampered statement matrix row") {
        Commitment badsum = sum;
        badsum.c0[0] = f.ctx.add(badsum.c0[0], f.ctx.one());
        PobStatement st = f.pob_stmt(badsum, 2);
        const Bytes pf = prove_pob(f.ctx, f.pp, st, rsum, f.rng);
        const auto res = verify_pob(f.ctx, f.pp, st, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "pob:matrix");
    }
    SUBCASE("truncated proof is a parse failure") {
        PobStatement st = f.pob_stmt(sum, 2);
        Bytes pf = prove_pob(f.ctx, f.pp, st, rsum, f.rng);
        pf.resize(pf.size() - 7);
        CHECK(!verify_pob(f.ctx, f.pp, st, pf).ok);
    }
}

TEST_CASE("pob special soundness harness") {
    // two accepting transcripts with a shared first message extract v* = 0
    Fixture f;
    const RingElem vneg = f.ctx.from_value(f.ps.q - 42);
    const RingVec r2 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
    const Commitment com2 = commit_tx(f.ctx, f.pp.tx, f.kp.pk, vneg, r2);
    Commitment sum = f.com;
    add_commitment(f.ctx, sum, com2);
    const RingVec rsum = f.ctx.vadd(f.r, r2);
    PobStatement st = f.pob_stmt(sum, 2);

    const GaussianSampler gs = GaussianSampler::from_sigma_sq(f.ps.pob_sigma_sq(2));
    const RingVec y =
        pack_ints(f.ctx, gs.sample_vec(f.rng, static_cast<size_t>(f.ps.width()) * f.ps.d));
    PobProof t1, t2;
    t1.w = f.ctx.matvec(f.pp.tx.A, y);
    t1.u = f.ctx.row_dot(f.pp.tx.B, y);
    t2.w = t1.w;
    t2.u = t1.u;
    const RingElem c1 = sample_challenge(f.rng, f.ctx);
    RingElem c2 = sample_challenge(f.rng, f.ctx);
    while (c2 == c1) c2 = sample_challenge(f.rng, f.ctx);
    t1.z = f.ctx.vadd(y, f.ctx.vscale(c1, rsum));
    t2.z = f.ctx.vadd(y, f.ctx.vscale(c2, rsum));
    REQUIRE(pob_checks(f.ctx, f.pp, st, t1, c1).ok);
    REQUIRE(pob_checks(f.ctx, f.pp, st, t2, c2).ok);

    const RingElem cbar = f.ctx.sub(c1, c2);
    REQUIRE(f.ctx.is_invertible(cbar));
    RingElem cinv;
    REQUIRE(f.ctx.inverse(cbar, cinv));
    const RingVec zbar = f.ctx.vsub(t1.z, t2.z);
    const RingVec rstar = f.ctx.vscale(cinv, zbar);
    const RingElem vstar =
        f.ctx.sub(st.sum_com3, f.ctx.mul(cinv, f.ctx.row_dot(f.pp.tx.B, zbar)));
    CHECK(vstar == f.ctx.zero());

    // the extracted opening satisfies the weak-opening bullets
    std::vector<std::vector<NttVec>> b_rows{f.pp.tx.B};
    const auto wk = check_weak_opening_bdlop(f.ctx, f.pp.tx.A, b_rows, st.sum_com0,
                                             RingVec{st.sum_com3}, cbar, rstar,
                                             RingVec{vstar}, f.ps.pob_sigma_sq(2));
    CHECK(wk.ok);
}

TEST_CASE("poe2 completeness and tampering") {
    Fixture f;
    SUBCASE("same message, fresh randomness") {
        Poe2Statement st = f.poe2_stmt(f.com, f.comp);
        const Bytes pf = prove_poe2(f.ctx, f.pp, st, f.r, f.rp, f.rng);
        CHECK(verify_poe2(f.ctx, f.pp, st, pf).ok);
        check_flip_rejected(pf, [&](const Bytes& b) { return verify_poe2(f.ctx, f.pp, st, b); });
    }
    SUBCASE("different message fails the cross check") {
        const Commitment other =
            commit_tx(f.ctx, f.pp.tx, f.kp.pk, f.ctx.from_value(43), f.rp);
        Poe2Statement st = f.poe2_stmt(f.com, other);
        const Bytes pf = prove_poe2(f.ctx, f.pp, st, f.r, f.rp, f.rng);
        const auto res = verify_poe2(f.ctx, f.pp, st, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poe2:cross");
    }
    SUBCASE("inflated response fails the norm check") {
        Poe2Statement st = f.poe2_stmt(f.com, f.comp);
        const Bytes pf = prove_poe2(f.ctx, f.pp, st, f.r, f.rp, f.rng);
        ByteReader rd(pf);
        read_proof_header(rd, ProofKind::PoE2);
        Poe2Proof p = poe2_decode_body(f.ctx, rd);
        p.z[0].c[0] = (f.ps.q - 1) / 2;
        ByteWriter w;
        write_proof_header(w, ProofKind::PoE2, {});
        poe2_encode_body(f.ctx, p, w);
        const auto res = verify_poe2(f.ctx, f.pp, st, w.take());
        CHECK(!res.ok);
        CHECK(res.failed == "poe2:norm");
    }
    SUBCASE("tampered first commitment row") {
        Commitment bad = f.comp;
        bad.c0[0] = f.ctx.add(bad.c0[0], f.ctx.one());
        Poe2Statement st = f.poe2_stmt(f.com, bad);
        const Bytes pf = prove_poe2(f.ctx, f.pp, st, f.r, f.rp, f.rng);
        const auto res = verify_poe2(f.ctx, f.pp, st, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poe2:matrix-prime");
    }
    SUBCASE("wrong key") {
        Poe2Statement st = f.poe2_stmt(f.com, f.comp);
        const Bytes pf = prove_poe2(f.ctx, f.pp, st, f.r, f.rp, f.rng);
        KeyPair other = keygen(f.ctx, f.pp.tx, f.rng);
        st.pk = &other.pk;
        CHECK(!verify_poe2(f.ctx, f.pp, st, pf).ok);
    }
}

TEST_CASE("poc completeness and tampering") {
    Fixture f;
    SUBCASE("honest run passes all six checks") {
        PocStatement st = f.poc_stmt(f.com);
        const Bytes pf = prove_poc(f.ctx, f.pp, st, f.r, f.v, f.rng);
        CHECK(verify_poc(f.ctx, f.pp, st, pf).ok);
        check_flip_rejected(pf, [&](const Bytes& b) { return verify_poc(f.ctx, f.pp, st, b); });
    }
    SUBCASE("inconsistent sqrt(q) slot fails the value system") {
        Commitment bad = f.com;
        bad.c2 = f.ctx.add(bad.c2, f.ctx.one());  // (v, sqrt(q) v + 1, v)
        PocStatement st = f.poc_stmt(bad);
        const Bytes pf = prove_poc(f.ctx, f.pp, st, f.r, f.v, f.rng);
        const auto res = verify_poc(f.ctx, f.pp, st, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poc:f2");
    }
    SUBCASE("wrong value row") {
        Commitment bad = f.com;
        bad.c1 = f.ctx.add(bad.c1, f.ctx.one());
        PocStatement st = f.poc_stmt(bad);
        const Bytes pf = prove_poc(f.ctx, f.pp, st, f.r, f.v, f.rng);
        const auto res = verify_poc(f.ctx, f.pp, st, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poc:f1");
    }
    SUBCASE("inflated z1 fails the first norm check") {
        PocStatement st = f.poc_stmt(f.com);
        const Bytes pf = prove_poc(f.ctx, f.pp, st, f.r, f.v, f.rng);
        ByteReader rd(pf);
        read_proof_header(rd, ProofKind::PoC);
        PocProof p = poc_decode_body(f.ctx, rd);
        p.z1[0].c[0] = (f.ps.q - 1) / 2;
        ByteWriter w;
        write_proof_header(w, ProofKind::PoC, {});
        poc_encode_body(f.ctx, p, w);
        const auto res = verify_poc(f.ctx, f.pp, st, w.take());
        CHECK(!res.ok);
        CHECK(res.failed == "poc:a");
    }
    SUBCASE("inflated z3 fails the projection bound") {
        PocStatement st = f.poc_stmt(f.com);
        const Bytes pf = prove_poc(f.ctx, f.pp, st, f.r, f.v, f.rng);
        ByteReader rd(pf);
        read_proof_header(rd, ProofKind::PoC);
        PocProof p = poc_decode_body(f.ctx, rd);
        p.z3[0] = static_cast<i64>(1) << 40;
        ByteWriter w;
        write_proof_header(w, ProofKind::PoC, {});
        poc_encode_body(f.ctx, p, w);
        const auto res = verify_poc(f.ctx, f.pp, st, w.take());
        CHECK(!res.ok);
        // the tamper sits before the d1 derivation, so the cascade is caught
        // at the projection bound
        CHECK(res.failed == "poc:c");
    }
    SUBCASE("value with nonzero low coefficients is rejected in standard mode") {
        RingElem vbad = f.ctx.from_value(42);
        vbad.c[1] = 3;
        const Commitment cb = commit_tx(f.ctx, f.pp.tx, f.kp.pk, vbad, f.r);
        PocStatement st = f.poc_stmt(cb);
        const Bytes pf = prove_poc(f.ctx, f.pp, st, f.r, vbad, f.rng);
        const auto res = verify_poc(f.ctx, f.pp, st, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poc:d");  // constant coefficient of h picks it up
        // compact mode lifts the constraint
        st.constrain_value_coeffs = false;
        const Bytes pf2 = prove_poc(f.ctx, f.pp, st, f.r, vbad, f.rng);
        CHECK(verify_poc(f.ctx, f.pp, st, pf2).ok);
    }
}

TEST_CASE("poe completeness and tampering") {
    Fixture f;
    SUBCASE("equal values verify") {
        PoeStatement st = f.poe_stmt(f.com, f.comp);
        const Bytes pf = prove_poe(f.ctx, f.pp, st, f.kp.sk, f.rng);
        CHECK(verify_poe(f.ctx, f.pp, st, pf).ok);
        check_flip_rejected(pf, [&](const Bytes& b) { return verify_poe(f.ctx, f.pp, st, b); });
    }
    SUBCASE("value bumped by one blows the projection") {
        const Commitment other =
            commit_tx(f.ctx, f.pp.tx, f.kp.pk, f.ctx.from_value(43), f.rp);
        PoeStatement st = f.poe_stmt(f.com, other);
        ProveOptions opt;
        opt.skip_rejection = true;  // honest sampler would never accept this mask
        const Bytes pf = prove_poe(f.ctx, f.pp, st, f.kp.sk, f.rng, opt);
        const auto res = verify_poe(f.ctx, f.pp, st, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poe:c");
    }
    SUBCASE("wrong secret key fails") {
        KeyPair other = keygen(f.ctx, f.pp.tx, f.rng);
        PoeStatement st = f.poe_stmt(f.com, f.comp);
        ProveOptions opt;
        opt.skip_rejection = true;
        const Bytes pf = prove_poe(f.ctx, f.pp, st, other.sk, f.rng, opt);
        CHECK(!verify_poe(f.ctx, f.pp, st, pf).ok);
    }
    SUBCASE("inflated z1 fails the opening norm") {
        PoeStatement st = f.poe_stmt(f.com, f.comp);
        const Bytes pf = prove_poe(f.ctx, f.pp, st, f.kp.sk, f.rng);
        ByteReader rd(pf);
        read_proof_header(rd, ProofKind::PoE);
        PoeProof p = poe_decode_body(f.ctx, rd);
        p.z1[0].c[0] = (f.ps.q - 1) / 2;
        ByteWriter w;
        write_proof_header(w, ProofKind::PoE, {});
        poe_encode_body(f.ctx, p, w);
        const auto res = verify_poe(f.ctx, f.pp, st, w.take());
        CHECK(!res.ok);
        CHECK(res.failed == "poe:a");
    }
    SUBCASE("column sums work as the first commitment") {
        Commitment sum = f.com;
        add_commitment(f.ctx, sum, f.comp);
        const RingVec r3 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
        const Commitment total =
            commit_tx(f.ctx, f.pp.tx, f.kp.pk, f.ctx.from_value(84), r3);
        PoeStatement st = f.poe_stmt(sum, total);
        const Bytes pf = prove_poe(f.ctx, f.pp, st, f.kp.sk, f.rng);
        CHECK(verify_poe(f.ctx, f.pp, st, pf).ok);
    }
}

TEST_CASE("pokw completeness and tampering") {
    Fixture f;
    PokwStatement st;
    st.context = Bytes{6};
    st.pk = &f.kp.pk;
    SUBCASE("honest keypair verifies") {
        const Bytes pf = prove_pokw(f.ctx, f.pp, st, f.kp.sk, f.rng);
        CHECK(verify_pokw(f.ctx, f.pp, st, pf).ok);
        check_flip_rejected(pf,
                            [&](const Bytes& b) { return verify_pokw(f.ctx, f.pp, st, b); });
    }
    SUBCASE("uniform error vector fails the projection bound") {
        KeyPair bad = f.kp;
        for (auto& e : bad.sk.e1) e = sample_uniform_poly(f.rng, f.ctx);
        // recompute pk1 so the linear rows still match
        const auto s1h = f.ctx.to_ntt(bad.sk.s1);
        for (u32 i = 0; i < f.ps.width(); ++i) {
            NttVec acc{std::vector<u128>(f.ctx.d(), 0)};
            for (u32 k = 0; k < f.ps.kappa; ++k) f.ctx.nmul_acc(f.pp.tx.A.at(k, i), s1h[k], acc);
            bad.pk.pk1[i] = f.ctx.add(f.ctx.intt(acc), bad.sk.e1[i]);
        }
        bad.pk.pk1_ntt = f.ctx.to_ntt(bad.pk.pk1);
        PokwStatement stb;
        stb.context = Bytes{6};
        stb.pk = &bad.pk;
        ProveOptions opt;
        opt.skip_rejection = true;
        const Bytes pf = prove_pokw(f.ctx, f.pp, stb, bad.sk, f.rng, opt);
        const auto res = verify_pokw(f.ctx, f.pp, stb, pf);
        CHECK(!res.ok);
        // the oversized key vector blows both the opening norm (checked
        // first) and the projection bound
        CHECK((res.failed == "pokw:a" || res.failed == "pokw:c"));
    }
    SUBCASE("perturbed public key fails a linear check") {
        const Bytes pf = prove_pokw(f.ctx, f.pp, st, f.kp.sk, f.rng);
        KeyPair bad = f.kp;
        bad.pk.pk2[0] = f.ctx.add(bad.pk.pk2[0], f.ctx.one());
        bad.pk.pk2_ntt = f.ctx.to_ntt(bad.pk.pk2);
        PokwStatement stb;
        stb.context = Bytes{6};
        stb.pk = &bad.pk;
        CHECK(!verify_pokw(f.ctx, f.pp, stb, pf).ok);
    }
}

TEST_CASE("poa completeness and tampering") {
    Fixture f;
    PoaStatement st = f.poa_stmt(f.comp);
    SUBCASE("value 42 verifies") {
        const Bytes pf = prove_poa(f.ctx, f.pp, st, f.rp, f.v, 42, f.rng);
        CHECK(verify_poa(f.ctx, f.pp, st, pf).ok);
        check_flip_rejected(pf, [&](const Bytes& b) { return verify_poa(f.ctx, f.pp, st, b); });
    }
    SUBCASE("range edges") {
        for (u64 val : {static_cast<u64>(0),
                        (static_cast<u64>(1) << f.ps.value_bits) - 1}) {
            const RingElem vr = f.ctx.from_value(val);
            const RingVec r = sample_chi_vec(f.rng, f.ctx, f.ps.width());
            const Commitment c = commit_tx(f.ctx, f.pp.tx, f.kp.pk, vr, r);
            PoaStatement ste = f.poa_stmt(c);
            const Bytes pf = prove_poa(f.ctx, f.pp, ste, r, vr, val, f.rng);
            CHECK(verify_poa(f.ctx, f.pp, ste, pf).ok);
        }
    }
    SUBCASE("non-binary slot fails the product check") {
        // v_bin with one NTT slot equal to 2
        NttVec slots{std::vector<u128>(f.ctx.d(), 0)};
        u64 val = 0;
        for (u32 i = 0; i < f.ps.value_bits; ++i) {
            const u64 bit = (42 >> i) & 1;
            slots.c[static_cast<size_t>(i) * f.ctx.m()] = bit;
            val |= bit << i;
        }
        slots.c[3 * f.ctx.m()] = 2;  // tampered slot
        const RingElem vbin = f.ctx.intt(slots);
        const Bytes pf = prove_poa_with_vbin(f.ctx, f.pp, st, f.rp, f.v, vbin, f.rng);
        const auto res = verify_poa(f.ctx, f.pp, st, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poa:c");
    }
    SUBCASE("negative balance with truncated bits fails the slot-zero check") {
        const RingElem vneg = f.ctx.from_value(f.ps.q - 5);  // -5
        const RingVec r = sample_chi_vec(f.rng, f.ctx, f.ps.width());
        const Commitment c = commit_tx(f.ctx, f.pp.tx, f.kp.pk, vneg, r);
        PoaStatement stn = f.poa_stmt(c);
        const u64 bits = static_cast<u64>(-5) & ((static_cast<u64>(1) << f.ps.value_bits) - 1);
        const Bytes pf = prove_poa(f.ctx, f.pp, stn, r, vneg, bits, f.rng);
        const auto res = verify_poa(f.ctx, f.pp, stn, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poa:e");
    }
    SUBCASE("inflated response fails the norm bound") {
        const Bytes pf = prove_poa(f.ctx, f.pp, st, f.rp, f.v, 42, f.rng);
        ByteReader rd(pf);
        read_proof_header(rd, ProofKind::PoA);
        PoaProof p = poa_decode_body(f.ctx, rd);
        p.z[0].c[0] = (f.ps.q - 1) / 2;
        ByteWriter w;
        write_proof_header(w, ProofKind::PoA, {});
        poa_encode_body(f.ctx, p, w);
        const auto res = verify_poa(f.ctx, f.pp, st, w.take());
        CHECK(!res.ok);
        CHECK(res.failed == "poa:a");
    }
    SUBCASE("tampered statement value row fails the linear check") {
        Commitment bad = f.comp;
        bad.c1 = f.ctx.add(bad.c1, f.ctx.one());
        PoaStatement stb = f.poa_stmt(bad);
        const Bytes pf = prove_poa(f.ctx, f.pp, stb, f.rp, f.v, 42, f.rng);
        const auto res = verify_poa(f.ctx, f.pp, stb, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poa:d");
    }
}

TEST_CASE("compact range proof") {
    Fixture f;
    RingElem vc = f.ctx.zero();
    for (u32 i = 0; i < f.ctx.d(); ++i) vc.c[i] = i % (1u << f.ps.beta_bits);
    const RingVec rc = sample_chi_vec(f.rng, f.ctx, f.ps.width());
    const Commitment comc = commit_tx(f.ctx, f.pp.tx, f.kp.pk, vc, rc);
    PoacStatement st;
    st.context = Bytes{7};
    st.com = &comc;

    SUBCASE("all-zero coefficients verify") {
        const RingVec r0 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
        const Commitment c0 = commit_tx(f.ctx, f.pp.tx, f.kp.pk, f.ctx.zero(), r0);
        PoacStatement st0;
        st0.context = Bytes{7};
        st0.com = &c0;
        const Bytes pf = prove_poac(f.ctx, f.pp, st0, r0, f.ctx.zero(), f.rng);
        CHECK(verify_poac(f.ctx, f.pp, st0, pf).ok);
    }
    SUBCASE("random in-range coefficients verify") {
        for (int t = 0; t < 5; ++t) {
            RingElem v = f.ctx.zero();
            for (u32 i = 0; i < f.ctx.d(); ++i) v.c[i] = f.rng.bits(f.ps.beta_bits);
            const RingVec r = sample_chi_vec(f.rng, f.ctx, f.ps.width());
            const Commitment c = commit_tx(f.ctx, f.pp.tx, f.kp.pk, v, r);
            PoacStatement s2;
            s2.context = Bytes{7};
            s2.com = &c;
            const Bytes pf = prove_poac(f.ctx, f.pp, s2, r, v, f.rng);
            CHECK(verify_poac(f.ctx, f.pp, s2, pf).ok);
        }
    }
    SUBCASE("a negative coefficient is rejected") {
        RingElem v = vc;
        v.c[5] = f.ps.q - 1;  // -1
        const RingVec r = sample_chi_vec(f.rng, f.ctx, f.ps.width());
        const Commitment c = commit_tx(f.ctx, f.pp.tx, f.kp.pk, v, r);
        PoacStatement s2;
        s2.context = Bytes{7};
        s2.com = &c;
        // the prover can only commit a clamped bit pattern for -1
        RingElem clamped = v;
        clamped.c[5] = (1u << f.ps.beta_bits) - 1;
        const Bytes pf = prove_poac(f.ctx, f.pp, s2, r, clamped, f.rng);
        const auto res = verify_poac(f.ctx, f.pp, s2, pf);
        CHECK(!res.ok);
        CHECK(res.failed == "poac:e");
    }
    SUBCASE("inflated responses fail the norm checks") {
        const Bytes pf = prove_poac(f.ctx, f.pp, st, rc, vc, f.rng);
        ByteReader rd(pf);
        read_proof_header(rd, ProofKind::PoAc);
        PoacProof p = poac_decode_body(f.ctx, rd);
        p.z1[0].c[0] = (f.ps.q - 1) / 2;
        ByteWriter w;
        write_proof_header(w, ProofKind::PoAc, {});
        poac_encode_body(f.ctx, p, w);
        const auto res = verify_poac(f.ctx, f.pp, st, w.take());
        CHECK(!res.ok);
        CHECK(res.failed == "poac:a1");
    }
    SUBCASE("byte flip") {
        const Bytes pf = prove_poac(f.ctx, f.pp, st, rc, vc, f.rng);
        check_flip_rejected(pf,
                            [&](const Bytes& b) { return verify_poac(f.ctx, f.pp, st, b); });
    }
}

TEST_CASE("or composition") {
    Fixture f;
    OrStatement st;
    st.poe.context = Bytes{8};
    st.poe.pk = &f.kp.pk;
    st.poe.com = f.com;
    st.poe.comp = &f.comp;
    st.poe2.context = Bytes{9};
    st.poe2.pk = &f.kp.pk;
    st.poe2.com = &f.com;
    st.poe2.comp = &f.comp;

    SUBCASE("real equivalence branch") {
        OrWitness w;
        w.use_poe = true;
        w.sk = &f.kp.sk;
        const Bytes pf = prove_or(f.ctx, f.pp, st, w, f.rng);
        CHECK(verify_or(f.ctx, f.pp, st, pf).ok);
        check_flip_rejected(pf, [&](const Bytes& b) { return verify_or(f.ctx, f.pp, st, b); });
    }
    SUBCASE("real recommitment branch") {
        OrWitness w;
        w.use_poe = false;
        w.r = &f.r;
        w.rp = &f.rp;
        const Bytes pf = prove_or(f.ctx, f.pp, st, w, f.rng);
        CHECK(verify_or(f.ctx, f.pp, st, pf).ok);
    }
    SUBCASE("branch transcripts are indistinguishable by shape") {
        OrWitness w1, w2;
        w1.use_poe = true;
        w1.sk = &f.kp.sk;
        w2.use_poe = false;
        w2.r = &f.r;
        w2.rp = &f.rp;
        const Bytes p1 = prove_or(f.ctx, f.pp, st, w1, f.rng);
        const Bytes p2 = prove_or(f.ctx, f.pp, st, w2, f.rng);
        CHECK(p1.size() == p2.size());
        CHECK(p1[0] == p2[0]);  // same kind byte
    }
    SUBCASE("simulating both branches fails the seed binding") {
        // adversary without any witness: simulate both branches under
        // self-chosen challenges and hope the seeds happen to split the hash
        int rejected = 0;
        const int attempts = 25;
        for (int t = 0; t < attempts; ++t) {
            std::array<u8, 32> s1{}, s2{};
            f.rng.fill(s1.data(), 32);
            f.rng.fill(s2.data(), 32);
            PoeProof poe_pf;
            poe_simulate_prefix(f.ctx, f.pp, poe_pf, f.rng);
            FsOracle fs("or");
            poe_absorb_statement(f.ctx, fs, st.poe);
            poe2_absorb_statement(f.ctx, fs, st.poe2);
            poe_absorb_prefix(f.ctx, fs, poe_pf);
            const auto rseed = fs.seed("R");
            const ProjMatrix bigr =
                expand_proj_matrix(rseed, "poe/R", f.ps.proj_rows, 2 * f.ps.d);
            fs.absorb_ints(poe_pf.z3);
            const auto d1 = fs.scalars(f.ctx, f.ps.proj_rows, "d1");
            const RingElem c1 = expand_challenge(f.ctx, s1, "or/poe");
            poe_simulate_finish(f.ctx, f.pp, st.poe, poe_pf, bigr, d1, c1, f.rng);
            const RingElem c2 = expand_challenge(f.ctx, s2, "or/poe2");
            const Poe2Proof poe2_pf = simulate_poe2(f.ctx, f.pp, st.poe2, c2, f.rng);
            ByteWriter w;
            write_proof_header(w, ProofKind::Or, {});
            w.raw(s1.data(), 32);
            poe_encode_body(f.ctx, poe_pf, w);
            poe2_encode_body(f.ctx, poe2_pf, w);
            rejected += !verify_or(f.ctx, f.pp, st, w.take()).ok;
        }
        CHECK(rejected == attempts);
    }
}

TEST_CASE("hvzk simulators match honest transcript marginals") {
    Fixture f;
    const RingElem vneg = f.ctx.from_value(f.ps.q - 42);
    const RingVec r2 = sample_chi_vec(f.rng, f.ctx, f.ps.width());
    const Commitment com2 = commit_tx(f.ctx, f.pp.tx, f.kp.pk, vneg, r2);
    Commitment sum = f.com;
    add_commitment(f.ctx, sum, com2);
    const RingVec rsum = f.ctx.vadd(f.r, r2);
    PobStatement st;
    st.context = Bytes{1};
    st.sum_com0 = sum.c0;
    st.sum_com3 = sum.c3;
    st.n_parties = 2;

    // simulated transcripts pass verification
    for (int t = 0; t < 10; ++t) {
        const RingElem c = sample_challenge(f.rng, f.ctx);
        const PobProof sim = simulate_pob(f.ctx, f.pp, st, c, f.rng);
        CHECK(pob_checks(f.ctx, f.pp, st, sim, c).ok);
        Poe2Statement st2 = f.poe2_stmt(f.com, f.comp);
        const Poe2Proof sim2 = simulate_poe2(f.ctx, f.pp, st2, c, f.rng);
        CHECK(poe2_checks(f.ctx, f.pp, st2, sim2, c).ok);
    }

    // binned TV distance between honest accepted z-marginals and simulated
    const double sigma = std::sqrt(static_cast<double>(f.ps.pob_sigma_sq(2)));
    auto hist_of = [&](bool simulated) {
        std::vector<double> h(21, 0);
        size_t count = 0;
        for (int t = 0; t < 60; ++t) {
            PobProof pf;
            if (simulated) {
                const RingElem c = sample_challenge(f.rng, f.ctx);
                pf = simulate_pob(f.ctx, f.pp, st, c, f.rng);
            } else {
                pf = pob_deserialize(f.ctx, prove_pob(f.ctx, f.pp, st, rsum, f.rng));
            }
            for (const auto& e : pf.z)
                for (u32 i = 0; i < f.ctx.d(); ++i) {
                    const double x = static_cast<double>(f.ctx.zq().center(e.c[i]));
                    int b = static_cast<int>(std::floor(x / (sigma / 3))) + 10;
                    b = std::max(0, std::min(20, b));
                    h[static_cast<size_t>(b)] += 1;
                    ++count;
                }
        }
        for (auto& x : h) x /= static_cast<double>(count);
        return h;
    };
    const auto honest = hist_of(false);
    const auto sim = hist_of(true);
    double tv = 0;
    for (size_t i = 0; i < honest.size(); ++i) tv += std::abs(honest[i] - sim[i]);
    CHECK(tv / 2 < 0.02);
}

TEST_CASE("fiat-shamir binding") {
    Fixture f;
    // same statement, two seeds: different bytes, both verify
    PocStatement st = f.poc_stmt(f.com);
    Rng r1(std::array<u8, 32>{50}, "fs1");
    Rng r2(std::array<u8, 32>{51}, "fs2");
    const Bytes p1 = prove_poc(f.ctx, f.pp, st, f.r, f.v, r1);
    const Bytes p2 = prove_poc(f.ctx, f.pp, st, f.r, f.v, r2);
    CHECK(p1 != p2);
    CHECK(verify_poc(f.ctx, f.pp, st, p1).ok);
    CHECK(verify_poc(f.ctx, f.pp, st, p2).ok);
    // avalanche: absorbing different bytes moves the challenge
    FsOracle a("t"), b("t");
    a.absorb(Bytes{1, 2, 3});
    b.absorb(Bytes{1, 2, 4});
    CHECK(!(a.challenge(f.ctx) == b.challenge(f.ctx)));
    // the recorded-seed envelope survives verification
    std::array<u8, 32> seed{9};
    ProveOptions opt;
    opt.record_seed = &seed;
    const Bytes p3 = prove_poc(f.ctx, f.pp, st, f.r, f.v, r1, opt);
    CHECK(verify_poc(f.ctx, f.pp, st, p3).ok);
    ByteReader rd(p3);
    const ProofHeader h = read_proof_header(rd, ProofKind::PoC);
    REQUIRE(h.seed);
    CHECK((*h.seed)[0] == 9);
}
