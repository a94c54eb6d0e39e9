#include "pqledger/params.hpp"

#include "pqledger/biguint.hpp"
#include "pqledger/zq.hpp"

#include <map>
#include <sstream>

namespace pqledger {

namespace {

constexpr u64 kMrBases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                            47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
                            109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

u128 compute_sigma1_sq(u32 omega, u64 dim_coeffs) {
    // (11 * omega * sqrt(dim))^2
    return static_cast<u128>(121) * omega * omega * dim_coeffs;
}

u128 compute_sigma_proj_sq(u128 l2_bound_sq) {
    // (11 * sqrt(337) * bound)^2 where bound^2 is given exactly
    return static_cast<u128>(121) * 337 * l2_bound_sq;
}

void fill_sigmas(ParamSet& p) {
    const u64 nd = static_cast<u64>(p.width()) * p.d;
    const u64 kw = static_cast<u64>(p.key_width()) * p.d;
    p.poc.s1 = compute_sigma1_sq(p.omega, nd);
    p.poc.s2 = p.poc.s1;
    p.poc.s3 = compute_sigma_proj_sq(nd);  // ||r|| <= sqrt(nd) for ternary r
    p.poe.s1 = compute_sigma1_sq(p.omega, kw);
    p.poe.s2 = compute_sigma1_sq(p.omega, nd);
    // masked vector is the 2-element decryption difference; bound 2*(k+l+3)*d
    // on its l2 norm, widened by the column budget factor when configured
    p.poe.s3 = compute_sigma_proj_sq(static_cast<u128>(4) * nd * nd * p.poe_sigma_cols);
    p.pokw.s1 = p.poe.s1;
    p.pokw.s2 = p.poe.s2;
    p.pokw.s3 = compute_sigma_proj_sq(kw);  // ternary key vector
    p.poa.s1 = compute_sigma1_sq(p.omega, nd);
    const u64 nbd = static_cast<u64>(p.width() + p.beta_bits) * p.d;
    p.poac.s1 = compute_sigma1_sq(p.omega, nbd);
    p.poac.s2 = compute_sigma_proj_sq(static_cast<u64>(p.beta_bits) * p.d);  // binary vector
    p.poac.s3 = compute_sigma1_sq(p.omega, nd);
    p.poe2.s1 = compute_sigma1_sq(p.omega, nd);
}

bool is_pow2(u64 v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

u128 ParamSet::pob_sigma_sq(u32 n_parties) const {
    const u64 nd = static_cast<u64>(width()) * d;
    return static_cast<u128>(121) * omega * omega * n_parties * n_parties * nd;
}

bool is_prime_u128(u128 n) {
    if (n < 2) return false;
    for (u64 b : kMrBases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    const Zq zq(n);
    u128 d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (u64 b : kMrBases) {
        u128 x = zq.pow(b, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = zq.mul(x, x);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

u128 find_splitting_prime(u128 start, u32 l) {
    const u128 mod = static_cast<u128>(4) * l;
    const u128 target = static_cast<u128>(2) * l + 1;
    u128 c = start + ((target + mod - start % mod) % mod);
    while (!is_prime_u128(c)) c += mod;
    return c;
}

u128 isqrt_u128(u128 n) {
    if (n < 2) return n;
    u128 x = static_cast<u128>(1) << ((bit_width_u128(n) + 1) / 2);
    while (true) {
        const u128 y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return x;
}

u128 round_sqrt_u128(u128 n) {
    const u128 s = isqrt_u128(n);
    // choose the closer of s and s+1
    const u128 low = n - s * s;
    const u128 high = (s + 1) * (s + 1) - n;
    return low > high ? s + 1 : s;
}

u32 challenge_weight_bound(u32 d) {
    // tail(w) = sum_{k>w} C(d,k); want tail(w) <= 2^(d-128) (i.e. prob <= 2^-128)
    BigUint threshold;  // zero when d <= 128: only the empty tail qualifies
    if (d > 128) threshold = BigUint::pow2(d - 128);
    BigUint binom(1);  // C(d,d)
    BigUint tail;
    for (u32 k = d; k >= 1; --k) {
        tail.add(binom);
        if (threshold < tail) return k;
        // C(d,k-1) = C(d,k) * k / (d-k+1)
        binom.mul_small(k);
        binom.div_small(d - k + 1);
    }
    return 0;
}

namespace {

ParamSet build_paper() {
    ParamSet p;
    p.name = "paper";
    p.d = 256;
    p.l = 128;
    p.kappa = 16;
    p.lambda = 16;
    p.value_bits = 64;
    p.beta_bits = 8;
    p.col_budget = 64;
    p.poe_sigma_cols = 1;
    p.q = find_splitting_prime(static_cast<u128>(1) << 100, p.l);
    p.sqrt_q = round_sqrt_u128(p.q);
    p.omega = challenge_weight_bound(p.d);
    fill_sigmas(p);
    return p;
}

ParamSet build_desk() {
    ParamSet p;
    p.name = "desk";
    p.d = 64;
    p.l = 32;
    p.kappa = 2;
    p.lambda = 2;
    p.value_bits = 32;
    p.beta_bits = 4;
    p.col_budget = 64;
    p.poe_sigma_cols = 64;
    p.q = find_splitting_prime(static_cast<u128>(1) << 56, p.l);
    p.sqrt_q = round_sqrt_u128(p.q);
    p.omega = challenge_weight_bound(p.d);
    fill_sigmas(p);
    return p;
}

}  // namespace

const ParamSet& paper_params() {
    static const ParamSet p = build_paper();
    return p;
}

const ParamSet& desk_params() {
    static const ParamSet p = build_desk();
    return p;
}

std::optional<std::string> validate(const ParamSet& p) {
    if (p.q < 3 || bit_width_u128(p.q) > 125) return "modulus width";
    if (!is_prime_u128(p.q)) return "modulus not prime";
    if (!is_pow2(p.d)) return "degree not power of two";
    if (!is_pow2(p.l) || p.l > p.d) return "splitting factor";
    if (p.q % (static_cast<u128>(4) * p.l) != static_cast<u128>(2) * p.l + 1)
        return "splitting condition";
    if (p.kappa == 0 || p.lambda == 0 || p.n_msg != 3) return "rank fields";
    if (p.sqrt_q != round_sqrt_u128(p.q)) return "sqrt rounding";
    if (p.omega != challenge_weight_bound(p.d)) return "challenge weight bound";
    if (p.proj_rows == 0 || p.proj_rows % p.d != 0) return "projection packing";
    if (p.value_bits == 0 || p.value_bits > p.l || p.value_bits > 64) return "value width";
    if (p.beta_bits == 0 || p.d % p.beta_bits != 0 || p.beta_bits > 62) return "compact width";
    if (p.rej_m != 3) return "repetition bound";

    ParamSet ref = p;
    fill_sigmas(ref);
    if (ref.poc.s1 != p.poc.s1 || ref.poc.s2 != p.poc.s2 || ref.poc.s3 != p.poc.s3 ||
        ref.poe.s1 != p.poe.s1 || ref.poe.s2 != p.poe.s2 || ref.poe.s3 != p.poe.s3 ||
        ref.pokw.s1 != p.pokw.s1 || ref.pokw.s2 != p.pokw.s2 || ref.pokw.s3 != p.pokw.s3 ||
        ref.poa.s1 != p.poa.s1 || ref.poac.s1 != p.poac.s1 || ref.poac.s2 != p.poac.s2 ||
        ref.poac.s3 != p.poac.s3 || ref.poe2.s1 != p.poe2.s1)
        return "sigma formulas";

    // Extraction noise budgets: worst-case |e^T r| for ternary vectors over a
    // column of col_budget+1 commitments must stay below sqrt(q)/2, and the
    // sqrt(q)-scaled difference row below q/2.
    const u128 noise = static_cast<u128>(p.width()) * p.d * (p.col_budget + 1);
    if (!(2 * noise < p.sqrt_q)) return "extraction noise budget";
    {
        const U256 lhs = add256(mul_wide(p.sqrt_q, noise), U256{noise, 0});
        if (cmp256(shl256(lhs, 1), U256{p.q, 0}) >= 0) return "extraction wrap budget";
    }

    // Equivalence margin: the certified bound 2*sqrt(2k)*s3 must sit below
    // sqrt(q)/4 for the amplified-difference argument to separate values.
    {
        const U256 lhs = mul_wide(static_cast<u128>(128) * p.proj_k(), p.poe.s3);
        if (cmp256(lhs, U256{p.q, 0}) >= 0) return "equivalence margin";
    }
    return std::nullopt;
}

std::string ParamSet::to_text() const {
    std::ostringstream os;
    os << "# pqledger parameter set\n";
    os << "name = " << name << "\n";
    os << "q = " << to_decimal(q) << "\n";
    os << "sqrt_q = " << to_decimal(sqrt_q) << "\n";
    os << "d = " << d << "\n";
    os << "l = " << l << "\n";
    os << "kappa = " << kappa << "\n";
    os << "lambda = " << lambda << "\n";
    os << "n_msg = " << n_msg << "\n";
    os << "omega = " << omega << "\n";
    os << "value_bits = " << value_bits << "\n";
    os << "beta_bits = " << beta_bits << "\n";
    os << "rej_m = " << rej_m << "\n";
    os << "proj_rows = " << proj_rows << "\n";
    os << "col_budget = " << col_budget << "\n";
    os << "poe_sigma_cols = " << poe_sigma_cols << "\n";
    const auto sig = [&os](const char* tag, const SigmaSq& s) {
        os << tag << "_s1_sq = " << to_decimal(s.s1) << "\n";
        os << tag << "_s2_sq = " << to_decimal(s.s2) << "\n";
        os << tag << "_s3_sq = " << to_decimal(s.s3) << "\n";
    };
    sig("poc", poc);
    sig("poe", poe);
    sig("pokw", pokw);
    sig("poa", poa);
    sig("poac", poac);
    sig("poe2", poe2);
    return os.str();
}

std::optional<ParamSet> ParamSet::from_text(const std::string& text, std::string* err) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto get_u128 = [&](const std::string& k, u128& out) {
        auto it = kv.find(k);
        return it != kv.end() && from_decimal(it->second, out);
    };
    auto get_u32 = [&](const std::string& k, u32& out) {
        u128 v;
        if (!get_u128(k, v) || v > 0xffffffffu) return false;
        out = static_cast<u32>(v);
        return true;
    };
    ParamSet p;
    p.name = kv.count("name") ? kv["name"] : "custom";
    bool ok = get_u128("q", p.q) && get_u128("sqrt_q", p.sqrt_q) && get_u32("d", p.d) &&
              get_u32("l", p.l) && get_u32("kappa", p.kappa) && get_u32("lambda", p.lambda) &&
              get_u32("n_msg", p.n_msg) && get_u32("omega", p.omega) &&
              get_u32("value_bits", p.value_bits) && get_u32("beta_bits", p.beta_bits) &&
              get_u32("rej_m", p.rej_m) && get_u32("proj_rows", p.proj_rows) &&
              get_u32("col_budget", p.col_budget) && get_u32("poe_sigma_cols", p.poe_sigma_cols);
    auto sig = [&](const char* tag, SigmaSq& s) {
        const std::string t(tag);
        return get_u128(t + "_s1_sq", s.s1) && get_u128(t + "_s2_sq", s.s2) &&
               get_u128(t + "_s3_sq", s.s3);
    };
    ok = ok && sig("poc", p.poc) && sig("poe", p.poe) && sig("pokw", p.pokw) &&
         sig("poa", p.poa) && sig("poac", p.poac) && sig("poe2", p.poe2);
    if (!ok) {
        if (err) *err = "missing or malformed field";
        return std::nullopt;
    }
    return p;
}

}  // namespace pqledger
