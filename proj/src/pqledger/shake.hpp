#pragma once

#include "pqledger/ints.hpp"

#include <array>
#include <cstring>
#include <string>
#include <vector>

namespace pqledger {

// SHAKE256 incremental XOF. All hashing, key expansion and deterministic
// randomness in the library go through this one primitive.
class Shake256 {
public:
    Shake256() { reset(); }

    void reset();
    void absorb(const void* data, size_t len);
    void absorb(const std::vector<u8>& v) { absorb(v.data(), v.size()); }
    void absorb_label(const std::string& s);  // length-prefixed, domain separation safe
    void absorb_u64(u64 v);

    // First squeeze finalizes the absorb phase; absorbing afterwards is a bug.
    void squeeze(u8* out, size_t len);
    std::vector<u8> squeeze(size_t len) {
        std::vector<u8> v(len);
        squeeze(v.data(), len);
        return v;
    }
    u64 squeeze_u64();

private:
    void permute();

    std::array<u64, 25> state_{};
    size_t pos_ = 0;
    bool squeezing_ = false;
    static constexpr size_t kRate = 136;  // SHAKE256 rate in bytes
};

std::array<u8, 32> shake256_digest(const void* data, size_t len);

}  // namespace pqledger
