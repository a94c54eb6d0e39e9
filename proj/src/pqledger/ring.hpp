#pragma once

#include "pqledger/params.hpp"
#include "pqledger/serial.hpp"
#include "pqledger/zq.hpp"

#include <vector>

namespace pqledger {

// Polynomial in Z_q[X]/(X^d+1), coefficients in [0,q).
struct RingElem {
    std::vector<u128> c;
    bool operator==(const RingElem& o) const { return c == o.c; }
};

// NTT image: l slots of degree < d/l, slot j = p mod (X^{d/l} - zeta^{2j+1}),
// stored slot-major in natural j order.
struct NttVec {
    std::vector<u128> c;
    bool operator==(const NttVec& o) const { return c == o.c; }
};

using RingVec = std::vector<RingElem>;

// Row-major matrix of NTT-domain ring elements (commitment keys are kept in
// this form so matrix-vector products reduce to slot-wise work).
struct NttMat {
    u32 rows = 0, cols = 0;
    std::vector<NttVec> e;
    const NttVec& at(u32 r, u32 c) const { return e[static_cast<size_t>(r) * cols + c]; }
    NttVec& at(u32 r, u32 c) { return e[static_cast<size_t>(r) * cols + c]; }
};

// Per-ParamSet arithmetic context: modulus, twiddle tables, slot layout.
class RingCtx {
public:
    explicit RingCtx(const ParamSet& ps);

    const ParamSet& params() const { return ps_; }
    const Zq& zq() const { return zq_; }
    u32 d() const { return d_; }
    u32 l() const { return l_; }
    u32 m() const { return m_; }  // slot degree d/l
    u128 zeta() const { return zeta_; }
    u128 slot_gamma(u32 j) const { return slot_gamma_[j]; }

    RingElem zero() const { return RingElem{std::vector<u128>(d_, 0)}; }
    RingElem one() const;
    RingElem from_value(u128 v) const;  // constant polynomial
    RingElem from_centered(const std::vector<i128>& v) const;
    RingElem monomial(u32 k, bool negative = false) const;  // +-X^k

    RingElem add(const RingElem& a, const RingElem& b) const;
    RingElem sub(const RingElem& a, const RingElem& b) const;
    RingElem neg(const RingElem& a) const;
    RingElem scalar_mul(u128 s, const RingElem& a) const;
    void add_inplace(RingElem& a, const RingElem& b) const;
    void sub_inplace(RingElem& a, const RingElem& b) const;

    NttVec ntt(const RingElem& a) const;
    RingElem intt(const NttVec& v) const;
    NttVec nmul(const NttVec& a, const NttVec& b) const;
    NttVec nadd(const NttVec& a, const NttVec& b) const;
    NttVec nsub(const NttVec& a, const NttVec& b) const;
    NttVec nscale(u128 s, const NttVec& a) const;
    void nmul_acc(const NttVec& a, const NttVec& b, NttVec& acc) const;  // acc += a*b

    RingElem mul(const RingElem& a, const RingElem& b) const;
    RingElem mul_schoolbook(const RingElem& a, const RingElem& b) const;  // O(d^2) oracle

    // sigma_i with i an odd unit mod 2d; throws std::invalid_argument otherwise.
    RingElem automorphism(const RingElem& a, u64 i) const;
    RingElem sigma_neg1(const RingElem& a) const { return automorphism(a, 2 * d_ - 1); }

    // Constant coefficient of sigma_{-1}(x)^T y; equals <x,y> over Z_q.
    u128 const_coeff_inner(const RingVec& x, const RingVec& y) const;

    // (1/l) * sum of NTT slots; returns the d/l coefficients.
    std::vector<u128> ntt_average(const RingElem& a) const;

    bool is_invertible(const RingElem& a) const;
    bool inverse(const RingElem& a, RingElem& out) const;

    // Norms on centered representatives.
    u128 norm_inf(const RingElem& a) const;
    u128 norm_inf(const RingVec& a) const;
    u128 norm_l1(const RingElem& a) const;
    U256 norm_l2_sq(const RingElem& a) const;
    U256 norm_l2_sq(const RingVec& a) const;

    std::vector<i128> centered(const RingElem& a) const;
    std::vector<i128> centered(const RingVec& a) const;

    // Canonical little-endian fixed-width encoding; decode rejects
    // out-of-range coefficients.
    size_t coeff_bytes() const { return coeff_bytes_; }
    void encode(const RingElem& a, ByteWriter& w) const;
    RingElem decode(ByteReader& r) const;
    void encode_vec(const RingVec& a, ByteWriter& w) const;
    RingVec decode_vec(ByteReader& r, size_t n) const;

    // Vector / matrix helpers.
    RingVec vadd(const RingVec& a, const RingVec& b) const;
    RingVec vsub(const RingVec& a, const RingVec& b) const;
    RingVec vscale(const RingElem& s, const RingVec& a) const;
    std::vector<NttVec> to_ntt(const RingVec& v) const;
    RingVec matvec(const NttMat& m, const RingVec& x) const;
    RingVec matvec_ntt(const NttMat& m, const std::vector<NttVec>& xh) const;
    RingElem row_dot(const std::vector<NttVec>& row, const RingVec& x) const;
    RingElem row_dot_ntt(const std::vector<NttVec>& row, const std::vector<NttVec>& xh) const;
    NttMat rows_to_ntt(const std::vector<RingVec>& rows) const;

private:
    void butterfly_tables();

    ParamSet ps_;  // owned copy; contexts outlive any container moves
    Zq zq_;
    u32 d_, l_, m_;
    unsigned levels_;
    u128 zeta_;
    u128 inv2_;
    u128 inv_l_;
    size_t coeff_bytes_;
    std::vector<std::vector<u128>> stage_w_;      // [stage][segment]
    std::vector<std::vector<u128>> stage_inv2w_;  // [stage][segment]
    std::vector<u32> leaf_pos_;                   // natural slot j -> leaf index
    std::vector<u128> slot_gamma_;                // zeta^{2j+1}, natural order
};

}  // namespace pqledger
