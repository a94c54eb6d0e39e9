#include "pqledger/shake.hpp"

namespace pqledger {

namespace {

constexpr u64 kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr int kRotc[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                           27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};
constexpr int kPiln[24] = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                           15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline u64 rotl64(u64 x, int s) { return (x << s) | (x >> (64 - s)); }

void keccakf(std::array<u64, 25>& st) {
    for (int round = 0; round < 24; ++round) {
        u64 bc[5];
        for (int i = 0; i < 5; ++i)
            bc[i] = st[i] ^ st[i + 5] ^ st[i + 10] ^ st[i + 15] ^ st[i + 20];
        for (int i = 0; i < 5; ++i) {
            const u64 t = bc[(i + 4) % 5] ^ rotl64(bc[(i + 1) % 5], 1);
            for (int j = 0; j < 25; j += 5) st[j + i] ^= t;
        }
        u64 t = st[1];
        for (int i = 0; i < 24; ++i) {
            const int j = kPiln[i];
            const u64 tmp = st[j];
            st[j] = rotl64(t, kRotc[i]);
            t = tmp;
        }
        for (int j = 0; j < 25; j += 5) {
            for (int i = 0; i < 5; ++i) bc[i] = st[j + i];
            for (int i = 0; i < 5; ++i) st[j + i] ^= (~bc[(i + 1) % 5]) & bc[(i + 2) % 5];
        }
        st[0] ^= kRoundConstants[round];
    }
}

}  // namespace

void Shake256::reset() {
    state_.fill(0);
    pos_ = 0;
    squeezing_ = false;
}

void Shake256::permute() { keccakf(state_); }

void Shake256::absorb(const void* data, size_t len) {
    const u8* p = static_cast<const u8*>(data);
    while (len > 0) {
        const size_t take = std::min(len, kRate - pos_);
        for (size_t i = 0; i < take; ++i)
            state_[(pos_ + i) / 8] ^= static_cast<u64>(p[i]) << (8 * ((pos_ + i) % 8));
        pos_ += take;
        p += take;
        len -= take;
        if (pos_ == kRate) {
            permute();
            pos_ = 0;
        }
    }
}

void Shake256::absorb_label(const std::string& s) {
    absorb_u64(s.size());
    absorb(s.data(), s.size());
}

void Shake256::absorb_u64(u64 v) {
    u8 b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<u8>(v >> (8 * i));
    absorb(b, 8);
}

void Shake256::squeeze(u8* out, size_t len) {
    if (!squeezing_) {
        state_[pos_ / 8] ^= static_cast<u64>(0x1f) << (8 * (pos_ % 8));
        state_[(kRate - 1) / 8] ^= static_cast<u64>(0x80) << (8 * ((kRate - 1) % 8));
        permute();
        pos_ = 0;
        squeezing_ = true;
    }
    while (len > 0) {
        if (pos_ == kRate) {
            permute();
            pos_ = 0;
        }
        const size_t take = std::min(len, kRate - pos_);
        for (size_t i = 0; i < take; ++i)
            out[i] = static_cast<u8>(state_[(pos_ + i) / 8] >> (8 * ((pos_ + i) % 8)));
        pos_ += take;
        out += take;
        len -= take;
    }
}

u64 Shake256::squeeze_u64() {
    u8 b[8];
    squeeze(b, 8);
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<u64>(b[i]) << (8 * i);
    return v;
}

std::array<u8, 32> shake256_digest(const void* data, size_t len) {
    Shake256 x;
    x.absorb(data, len);
    std::array<u8, 32> out{};
    x.squeeze(out.data(), out.size());
    return out;
}

}  // namespace pqledger
