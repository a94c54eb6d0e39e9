#include "pqledger/ints.hpp"

namespace pqledger {

u128 div256_128(U256 x, u128 d, u128* rem) {
    u128 q = 0, r = 0;
    for (int i = 255; i >= 0; --i) {
        r <<= 1;
        const u128 bit = (i >= 128) ? ((x.hi >> (i - 128)) & 1) : ((x.lo >> i) & 1);
        r |= bit;
        if (r >= d) {
            r -= d;
            if (i < 128) q |= (static_cast<u128>(1) << i);
        }
    }
    if (rem) *rem = r;
    return q;
}

std::string to_decimal(u128 x) {
    if (x == 0) return "0";
    std::string s;
    while (x) {
        s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
        x /= 10;
    }
    return std::string(s.rbegin(), s.rend());
}

bool from_decimal(const std::string& s, u128& out) {
    if (s.empty()) return false;
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        u128 nv = v * 10 + static_cast<u128>(c - '0');
        if (nv < v) return false;  // overflow
        v = nv;
    }
    out = v;
    return true;
}

std::string to_decimal_i128(i128 x) {
    if (x < 0) return "-" + to_decimal(static_cast<u128>(-x));
    return to_decimal(static_cast<u128>(x));
}

}  // namespace pqledger
