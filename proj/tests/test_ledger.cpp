#include <doctest.h>

#include "pqledger/ledger.hpp"

#include <cstdio>
#include <filesystem>

using namespace pqledger;

namespace {

std::map<u32, const SecretKey*> key_map(const std::vector<SecretKey>& sks,
                                        std::initializer_list<u32> idx) {
    std::map<u32, const SecretKey*> m;
    for (u32 i : idx) m[i] = &sks[i];
    return m;
}

}  // namespace

TEST_CASE("setup commits the genesis row and registers verifiable keys") {
    auto res = ledger_setup(desk_params(), 2, 1, {10, 0}, std::array<u8, 32>{60});
    Ledger& lg = res.ledger;
    CHECK(lg.rows.size() == 1);
    CHECK(lg.rows[0].genesis);
    CHECK(verify_ledger(lg).ok);
    CHECK(check_balance(lg, res.secret_keys[0], 0, 0).value == 10);
    CHECK(check_balance(lg, res.secret_keys[1], 1, 0).value == 0);

    SUBCASE("negative genesis is rejected") {
        CHECK_THROWS_AS(ledger_setup(desk_params(), 2, 1, {10, -1}, std::array<u8, 32>{60}),
                        std::invalid_argument);
    }
    SUBCASE("setup is deterministic in the seed") {
        auto res2 = ledger_setup(desk_params(), 2, 1, {10, 0}, std::array<u8, 32>{60});
        ByteWriter w1, w2;
        lg.ctx->encode_vec(lg.participants[0].pk.pk1, w1);
        res2.ledger.ctx->encode_vec(res2.ledger.participants[0].pk.pk1, w2);
        CHECK(w1.bytes() == w2.bytes());
        CHECK(serialize_tx(*lg.ctx, lg.rows[0]) ==
              serialize_tx(*res2.ledger.ctx, res2.ledger.rows[0]));
    }
}

TEST_CASE("a transfer moves balance and conserves the total") {
    auto res = ledger_setup(desk_params(), 2, 1, {10, 0}, std::array<u8, 32>{61});
    Ledger& lg = res.ledger;
    Rng rng(std::array<u8, 32>{62}, "tx");
    const TxRecord tx = create_tx(lg, {-5, 5}, key_map(res.secret_keys, {0}), rng);
    const auto ar = append_tx(lg, tx);
    REQUIRE(ar.ok);
    CHECK(ar.index == 1);
    CHECK(check_balance(lg, res.secret_keys[0], 0, 0).value == 5);
    CHECK(check_balance(lg, res.secret_keys[1], 1, 0).value == 5);
}

TEST_CASE("decoy cells carry full proofs and stay at zero") {
    auto res = ledger_setup(desk_params(), 4, 1, {7, 0, 0, 0}, std::array<u8, 32>{63});
    Ledger& lg = res.ledger;
    Rng rng(std::array<u8, 32>{64}, "tx");
    const TxRecord tx = create_tx(lg, {-3, 0, 3, 0}, key_map(res.secret_keys, {0}), rng);
    CHECK(tx.cells.size() == 4);
    for (const auto& c : tx.cells) {
        CHECK(!c.poc.empty());
        CHECK(!c.poa.empty());
        CHECK(!c.oreq.empty());
        CHECK(c.oreq[0] == static_cast<u8>(ProofKind::Or));  // kind byte identical everywhere
    }
    REQUIRE(append_tx(lg, tx).ok);
    CHECK(check_balance(lg, res.secret_keys[1], 1, 0).value == 0);
    CHECK(check_balance(lg, res.secret_keys[2], 2, 0).value == 3);
}

TEST_CASE("invalid value lists") {
    auto res = ledger_setup(desk_params(), 2, 1, {10, 0}, std::array<u8, 32>{65});
    Ledger& lg = res.ledger;
    Rng rng(std::array<u8, 32>{66}, "tx");
    SUBCASE("unbalanced list is rejected by the advisory check") {
        CHECK_THROWS_AS(create_tx(lg, {-5, 6}, key_map(res.secret_keys, {0}), rng),
                        std::invalid_argument);
    }
    SUBCASE("forced unbalanced list fails verification at the balance proof") {
        TxOptions opt;
        opt.force = true;
        const TxRecord tx = create_tx(lg, {-5, 6}, key_map(res.secret_keys, {0}), rng, opt);
        const auto r = verify_tx(lg, tx);
        CHECK(!r.ok);
        CHECK(r.failed.substr(0, 4) == "pob:");
        CHECK(!append_tx(lg, tx).ok);
        CHECK(lg.rows.size() == 1);  // nothing appended
    }
    SUBCASE("forced overspend fails verification at the range proof") {
        TxOptions opt;
        opt.force = true;
        const TxRecord tx = create_tx(lg, {-11, 11}, key_map(res.secret_keys, {0}), rng, opt);
        const auto r = verify_tx(lg, tx);
        CHECK(!r.ok);
        CHECK(r.failed.substr(0, 4) == "poa:");
    }
    SUBCASE("missing spender key") {
        CHECK_THROWS_AS(create_tx(lg, {-5, 5}, {}, rng), std::invalid_argument);
    }
}

TEST_CASE("verification is bound to the pre-append state") {
    auto res = ledger_setup(desk_params(), 2, 1, {10, 0}, std::array<u8, 32>{67});
    Ledger& lg = res.ledger;
    Rng rng(std::array<u8, 32>{68}, "tx");
    const TxRecord tx = create_tx(lg, {-5, 5}, key_map(res.secret_keys, {0}), rng);
    REQUIRE(append_tx(lg, tx).ok);
    // replaying the identical bytes fails: the column sums moved
    CHECK(!verify_tx(lg, tx).ok);
    // but the stored row still verifies against its snapshot
    CHECK(verify_tx(lg, lg.rows[1], 1).ok);
    CHECK(verify_ledger(lg).ok);
}

TEST_CASE("multi-asset rows") {
    auto res = ledger_setup(desk_params(), 2, 2, {10, 0, 4, 0}, std::array<u8, 32>{69});
    Ledger& lg = res.ledger;
    Rng rng(std::array<u8, 32>{70}, "tx");
    const TxRecord tx =
        create_tx(lg, {-2, 2, -1, 1}, key_map(res.secret_keys, {0}), rng);
    CHECK(tx.cells.size() == 4);
    CHECK(tx.pob.size() == 2);
    REQUIRE(append_tx(lg, tx).ok);
    CHECK(check_balance(lg, res.secret_keys[0], 0, 0).value == 8);
    CHECK(check_balance(lg, res.secret_keys[0], 0, 1).value == 3);
    CHECK(check_balance(lg, res.secret_keys[1], 1, 1).value == 1);
}

TEST_CASE("persistence roundtrip") {
    namespace fs = std::filesystem;
    const std::string path = (fs::temp_directory_path() / "pqledger_test.bin").string();
    auto res = ledger_setup(desk_params(), 2, 1, {10, 0}, std::array<u8, 32>{71});
    Ledger& lg = res.ledger;
    Rng rng(std::array<u8, 32>{72}, "tx");
    REQUIRE(append_tx(lg, create_tx(lg, {-5, 5}, key_map(res.secret_keys, {0}), rng)).ok);
    save_ledger(lg, path);
    const Ledger loaded = load_ledger(path);
    CHECK(loaded.rows.size() == 2);
    CHECK(verify_ledger(loaded).ok);
    CHECK(check_balance(loaded, res.secret_keys[1], 1, 0).value == 5);
    CHECK(fs::exists(path + ".idx"));

    const std::string kpath = (fs::temp_directory_path() / "pqledger_test.key").string();
    save_secret_key(*lg.ctx, res.secret_keys[0], kpath);
    const SecretKey back = load_secret_key(*lg.ctx, kpath);
    CHECK(back.s1 == res.secret_keys[0].s1);
    CHECK(back.e2 == res.secret_keys[0].e2);
    fs::remove(path);
    fs::remove(path + ".idx");
    fs::remove(kpath);
}

TEST_CASE("compact mode collapses assets into coefficients") {
    const ParamSet& ps = desk_params();
    // four assets in one ring element, beta-bit values
    // asset-major genesis: a0 = (9,0), a1 = (3,0), a2 = (5,7), a3 = (1,1)
    auto res = ledger_setup(ps, 2, 4, {9, 0, 3, 0, 5, 7, 1, 1}, std::array<u8, 32>{73}, true);
    Ledger& lg = res.ledger;
    CHECK(lg.compact);
    CHECK(lg.cells_per_row() == 2);
    CHECK(check_balance(lg, res.secret_keys[0], 0, 0).value == 9);
    CHECK(check_balance(lg, res.secret_keys[0], 0, 2).value == 5);
    CHECK(check_balance(lg, res.secret_keys[1], 1, 2).value == 7);

    Rng rng(std::array<u8, 32>{74}, "tx");
    // spend asset 0 and asset 2 from party 0 to party 1
    const TxRecord tx =
        create_tx(lg, {-4, 4, 0, 0, -1, 1, 0, 0}, key_map(res.secret_keys, {0}), rng);
    CHECK(tx.cells.size() == 2);
    CHECK(tx.pob.size() == 1);
    REQUIRE(append_tx(lg, tx).ok);
    CHECK(check_balance(lg, res.secret_keys[0], 0, 0).value == 5);
    CHECK(check_balance(lg, res.secret_keys[1], 1, 0).value == 4);
    CHECK(check_balance(lg, res.secret_keys[0], 0, 2).value == 4);
    CHECK(check_balance(lg, res.secret_keys[1], 1, 2).value == 8);
    CHECK(verify_ledger(lg).ok);

    SUBCASE("compact overspend is rejected by the compact range proof") {
        TxOptions opt;
        opt.force = true;
        const TxRecord bad =
            create_tx(lg, {-9, 9, 0, 0, 0, 0, 0, 0}, key_map(res.secret_keys, {0}), rng, opt);
        const auto r = verify_tx(lg, bad);
        CHECK(!r.ok);
        CHECK(r.failed.substr(0, 5) == "poac:");
    }
}
