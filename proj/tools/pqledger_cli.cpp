// Operator front-end for the confidential ledger: parameter generation,
// ledger setup, transaction creation/verification, balance queries and
// proof benchmarks.
//
// Exit codes: 0 ok, 2 validation failure, 3 verification failure, 4 I/O.

#include "pqledger/ledger.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

using namespace pqledger;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;
constexpr int kExitIo = 4;

struct CliConfig {
    std::string params = "desk";  // paper | desk | <file>
    std::string ledger_path = "ledger.bin";
    std::string seed_hex;
    bool json_out = false;
};

std::array<u8, 32> parse_seed(const std::string& hex) {
    std::array<u8, 32> seed{};
    if (hex.empty()) return seed;
    if (hex.size() > 64) throw std::invalid_argument("seed longer than 32 bytes");
    for (size_t i = 0; i < hex.size(); ++i) {
        const char c = hex[i];
        u8 v;
        if (c >= '0' && c <= '9')
            v = static_cast<u8>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = static_cast<u8>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            v = static_cast<u8>(c - 'A' + 10);
        else
            throw std::invalid_argument("seed must be hex");
        seed[i / 2] = static_cast<u8>(seed[i / 2] << 4 | v);
    }
    return seed;
}

ParamSet resolve_params(const std::string& spec) {
    if (spec == "paper") return paper_params();
    if (spec == "desk") return desk_params();
    std::ifstream is(spec);
    if (!is) throw std::runtime_error("cannot open parameter file " + spec);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    std::string err;
    auto ps = ParamSet::from_text(text, &err);
    if (!ps) throw std::runtime_error("bad parameter file: " + err);
    return *ps;
}

std::vector<i64> parse_values(const std::string& csv) {
    std::vector<i64> out;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoll(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    return out;
}

std::string key_path(const std::string& ledger_path, u32 i) {
    return ledger_path + ".key" + std::to_string(i);
}

double ms_between(std::chrono::steady_clock::time_point a,
                  std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

void emit(const CliConfig& cfg, const json& j, const std::string& human) {
    if (cfg.json_out)
        std::cout << j.dump() << "\n";
    else
        std::cout << human << "\n";
}

int cmd_params(const CliConfig& cfg, const std::string& out_path) {
    const ParamSet ps = resolve_params(cfg.params);
    if (const auto bad = validate(ps)) {
        emit(cfg, json{{"ok", false}, {"violation", *bad}}, "invalid: " + *bad);
        return kExitValidation;
    }
    const std::string text = ps.to_text();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "cannot write " << out_path << "\n";
            return kExitIo;
        }
        os << text;
    }
    return 0;
}

int cmd_setup(const CliConfig& cfg, u32 parties, u32 assets, const std::string& genesis_csv,
              bool compact) {
    const ParamSet ps = resolve_params(cfg.params);
    const std::vector<i64> genesis = parse_values(genesis_csv);
    auto res = ledger_setup(ps, parties, assets, genesis, parse_seed(cfg.seed_hex), compact);
    save_ledger(res.ledger, cfg.ledger_path);
    json keys = json::array();
    for (u32 i = 0; i < parties; ++i) {
        const std::string kp = key_path(cfg.ledger_path, i);
        save_secret_key(*res.ledger.ctx, res.secret_keys[i], kp);
        keys.push_back(kp);
    }
    json j{{"ok", true},
           {"ledger", cfg.ledger_path},
           {"participants", parties},
           {"assets", assets},
           {"compact", compact},
           {"keys", keys}};
    std::string human = "ledger written to " + cfg.ledger_path + "\n";
    for (u32 i = 0; i < parties; ++i)
        human += "participant " + std::to_string(i) + ": key " +
                 key_path(cfg.ledger_path, i) + "\n";
    human += "genesis row committed";
    emit(cfg, j, human);
    return 0;
}

int cmd_tx(const CliConfig& cfg, const std::string& values_csv,
           const std::vector<std::string>& keyfiles, bool force) {
    Ledger lg = load_ledger(cfg.ledger_path);
    const std::vector<i64> values = parse_values(values_csv);
    if (values.size() != static_cast<size_t>(lg.n_parties) * lg.n_assets) {
        emit(cfg, json{{"ok", false}, {"error", "value list size"}},
             "value list must have assets*parties entries");
        return kExitValidation;
    }
    std::vector<SecretKey> sks;
    std::map<u32, const SecretKey*> skmap;
    sks.reserve(keyfiles.size() + 1);
    for (const auto& kf : keyfiles) {
        const auto pos = kf.rfind(".key");
        if (pos == std::string::npos) throw std::runtime_error("keyfile name must end in .keyN");
        const u32 idx = static_cast<u32>(std::stoul(kf.substr(pos + 4)));
        sks.push_back(load_secret_key(*lg.ctx, kf));
        skmap[idx] = &sks.back();
    }
    Rng rng(parse_seed(cfg.seed_hex), "cli/tx/" + std::to_string(lg.rows.size()));
    TxOptions opt;
    opt.force = force;

    const auto t0 = std::chrono::steady_clock::now();
    TxRecord tx;
    try {
        tx = create_tx(lg, values, skmap, rng, opt);
    } catch (const std::invalid_argument& e) {
        emit(cfg, json{{"ok", false}, {"error", e.what()}}, std::string("rejected: ") + e.what());
        return kExitValidation;
    }
    const auto t1 = std::chrono::steady_clock::now();
    const VerifyResult vr = verify_tx(lg, tx);
    const auto t2 = std::chrono::steady_clock::now();
    if (!vr.ok) {
        emit(cfg, json{{"ok", false}, {"failed_proof", vr.failed}},
             "verification failed: " + vr.failed + " (nothing appended)");
        return kExitVerification;
    }
    lg.rows.push_back(std::move(tx));
    save_ledger(lg, cfg.ledger_path);
    json j{{"ok", true},
           {"index", lg.rows.size() - 1},
           {"prove_ms", ms_between(t0, t1)},
           {"verify_ms", ms_between(t1, t2)}};
    emit(cfg, j,
         "tx appended at index " + std::to_string(lg.rows.size() - 1) + " (prove " +
             std::to_string(ms_between(t0, t1)) + " ms, verify " +
             std::to_string(ms_between(t1, t2)) + " ms)");
    return 0;
}

int cmd_verify(const CliConfig& cfg) {
    Ledger lg = load_ledger(cfg.ledger_path);
    const auto t0 = std::chrono::steady_clock::now();
    const VerifyResult r = verify_ledger(lg);
    const auto t1 = std::chrono::steady_clock::now();
    json j{{"ok", r.ok},
           {"rows", lg.rows.size()},
           {"transactions", lg.rows.size() - 1},
           {"verify_ms", ms_between(t0, t1)}};
    if (!r.ok) j["failed"] = r.failed;
    emit(cfg, j,
         r.ok ? "ledger verifies: " + std::to_string(lg.rows.size() - 1) + " transactions"
              : "ledger verification FAILED: " + r.failed);
    return r.ok ? 0 : kExitVerification;
}

int cmd_balance(const CliConfig& cfg, const std::string& keyfile, u32 asset) {
    Ledger lg = load_ledger(cfg.ledger_path);
    const auto pos = keyfile.rfind(".key");
    if (pos == std::string::npos) throw std::runtime_error("keyfile name must end in .keyN");
    const u32 idx = static_cast<u32>(std::stoul(keyfile.substr(pos + 4)));
    const SecretKey sk = load_secret_key(*lg.ctx, keyfile);
    const BalanceResult b = check_balance(lg, sk, idx, asset);
    if (!b.ok) {
        emit(cfg, json{{"ok", false}, {"error", b.error}}, "extraction failed: " + b.error);
        return kExitVerification;
    }
    emit(cfg, json{{"ok", true}, {"participant", idx}, {"asset", asset}, {"balance", b.value}},
         "balance of participant " + std::to_string(idx) + ", asset " + std::to_string(asset) +
             ": " + std::to_string(b.value));
    return 0;
}

int cmd_bench(const CliConfig& cfg, const std::string& kind, u32 n) {
    const ParamSet ps = resolve_params(cfg.params);
    RingCtx ctx(ps);
    const PublicParams pp = expand_public_params(ctx, parse_seed(cfg.seed_hex));
    Rng rng(parse_seed(cfg.seed_hex), "cli/bench");
    KeyPair kp = keygen(ctx, pp.tx, rng);
    const RingElem v = ctx.from_value(37);
    const RingVec r = sample_chi_vec(rng, ctx, ps.width());
    const RingVec rp = sample_chi_vec(rng, ctx, ps.width());
    const Commitment com = commit_tx(ctx, pp.tx, kp.pk, v, r);
    const Commitment comp = commit_tx(ctx, pp.tx, kp.pk, v, rp);
    RingElem vc = ctx.zero();
    for (u32 i = 0; i < ctx.d(); ++i) vc.c[i] = i % (1u << ps.beta_bits);
    const RingVec rc = sample_chi_vec(rng, ctx, ps.width());
    const Commitment comc = commit_tx(ctx, pp.tx, kp.pk, vc, rc);

    Commitment sum = com;
    add_commitment(ctx, sum, comp);
    PobStatement pob{Bytes{1}, sum.c0, sum.c3, 2};
    PocStatement poc;
    poc.context = Bytes{2};
    poc.pk = &kp.pk;
    poc.com = &com;
    PoeStatement poe;
    poe.context = Bytes{3};
    poe.pk = &kp.pk;
    poe.com = com;
    poe.comp = &comp;
    PokwStatement pokw;
    pokw.context = Bytes{4};
    pokw.pk = &kp.pk;
    PoaStatement poa;
    poa.context = Bytes{5};
    poa.pk = &kp.pk;
    poa.com1p = &comp.c1;
    PoacStatement poac;
    poac.context = Bytes{6};
    poac.com = &comc;
    Poe2Statement poe2;
    poe2.context = Bytes{7};
    poe2.pk = &kp.pk;
    poe2.com = &com;
    poe2.comp = &comp;
    const RingVec rsum = ctx.vadd(r, rp);

    struct Entry {
        std::string kind;
        std::function<Bytes()> prove;
        std::function<VerifyResult(const Bytes&)> verify;
    };
    std::vector<Entry> entries{
        {"pob", [&] { return prove_pob(ctx, pp, pob, rsum, rng); },
         [&](const Bytes& b) { return verify_pob(ctx, pp, pob, b); }},
        {"poc", [&] { return prove_poc(ctx, pp, poc, r, v, rng); },
         [&](const Bytes& b) { return verify_poc(ctx, pp, poc, b); }},
        {"poe", [&] { return prove_poe(ctx, pp, poe, kp.sk, rng); },
         [&](const Bytes& b) { return verify_poe(ctx, pp, poe, b); }},
        {"pokw", [&] { return prove_pokw(ctx, pp, pokw, kp.sk, rng); },
         [&](const Bytes& b) { return verify_pokw(ctx, pp, pokw, b); }},
        {"poa", [&] { return prove_poa(ctx, pp, poa, rp, v, 37, rng); },
         [&](const Bytes& b) { return verify_poa(ctx, pp, poa, b); }},
        {"poac", [&] { return prove_poac(ctx, pp, poac, rc, vc, rng); },
         [&](const Bytes& b) { return verify_poac(ctx, pp, poac, b); }},
        {"poe2", [&] { return prove_poe2(ctx, pp, poe2, r, rp, rng); },
         [&](const Bytes& b) { return verify_poe2(ctx, pp, poe2, b); }},
    };

    json rows = json::array();
    std::string human = "kind   n     prove-ms   verify-ms  bytes\n";
    for (const auto& e : entries) {
        if (kind != "all" && kind != e.kind) continue;
        double tp = 0, tv = 0;
        size_t bytes = 0;
        bool ok = true;
        for (u32 i = 0; i < n; ++i) {
            const auto t0 = std::chrono::steady_clock::now();
            const Bytes pf = e.prove();
            const auto t1 = std::chrono::steady_clock::now();
            ok = ok && e.verify(pf).ok;
            const auto t2 = std::chrono::steady_clock::now();
            tp += ms_between(t0, t1);
            tv += ms_between(t1, t2);
            bytes = pf.size();
        }
        if (!ok) {
            std::cerr << "bench verification failed for " << e.kind << "\n";
            return kExitVerification;
        }
        rows.push_back(json{{"kind", e.kind},
                            {"n", n},
                            {"prove_ms", tp / n},
                            {"verify_ms", tv / n},
                            {"bytes", bytes}});
        char line[160];
        snprintf(line, sizeof line, "%-6s %-5u %-10.2f %-10.2f %zu\n", e.kind.c_str(), n,
                 tp / n, tv / n, bytes);
        human += line;
    }
    emit(cfg, json{{"ok", true}, {"params", ps.name}, {"results", rows}}, human);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"confidential multi-asset ledger over lattice commitments"};
    app.require_subcommand(1);

    CliConfig cfg;
    app.add_option("--params", cfg.params, "parameter set: paper, desk, or a file path");
    app.add_option("--ledger", cfg.ledger_path, "ledger file path");
    app.add_option("--seed", cfg.seed_hex, "hex seed (up to 32 bytes)");
    app.add_flag("--json", cfg.json_out, "machine-readable output");

    auto* p_params = app.add_subcommand("params", "emit or validate a parameter set");
    std::string params_out;
    p_params->add_option("--out", params_out, "write the set to a file");

    auto* p_setup = app.add_subcommand("setup", "initialize a ledger with a genesis row");
    u32 parties = 0, assets = 1;
    std::string genesis_csv;
    bool compact = false;
    p_setup->add_option("--parties", parties, "number of participants")->required();
    p_setup->add_option("--assets", assets, "number of assets");
    p_setup->add_option("--genesis", genesis_csv, "asset-major value list, comma separated")
        ->required();
    p_setup->add_flag("--compact", compact, "pack all assets into one ring element per cell");

    auto* p_tx = app.add_subcommand("tx", "create, verify and append a transaction");
    std::string values_csv;
    std::vector<std::string> keyfiles;
    bool force = false;
    p_tx->add_option("--values", values_csv, "asset-major signed value list")->required();
    p_tx->add_option("--keys", keyfiles, "secret key files of the spending participants");
    p_tx->add_flag("--force", force, "skip the advisory validity check");

    auto* p_verify = app.add_subcommand("verify", "re-verify every stored transaction");

    auto* p_balance = app.add_subcommand("balance", "extract a balance with a secret key");
    std::string keyfile;
    u32 asset = 0;
    p_balance->add_option("--key", keyfile, "secret key file")->required();
    p_balance->add_option("--asset", asset, "asset index");

    auto* p_bench = app.add_subcommand("bench", "time proof generation and verification");
    std::string kind = "all";
    u32 iters = 10;
    p_bench->add_option("--kind", kind, "proof kind (pob,poc,poe,pokw,poa,poac,poe2) or all");
    p_bench->add_option("--n", iters, "iterations per kind");

    CLI11_PARSE(app, argc, argv);

    try {
        if (p_params->parsed()) return cmd_params(cfg, params_out);
        if (p_setup->parsed()) return cmd_setup(cfg, parties, assets, genesis_csv, compact);
        if (p_tx->parsed()) return cmd_tx(cfg, values_csv, keyfiles, force);
        if (p_verify->parsed()) return cmd_verify(cfg);
        if (p_balance->parsed()) return cmd_balance(cfg, keyfile, asset);
        if (p_bench->parsed()) return cmd_bench(cfg, kind, iters);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ProveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
