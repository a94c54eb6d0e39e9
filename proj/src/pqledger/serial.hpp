#pragma once

#include "pqledger/ints.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pqledger {

using Bytes = std::vector<u8>;

class ByteWriter {
public:
    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

    void u8v(u8 v) { buf_.push_back(v); }
    void u32v(u32 v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<u8>(v >> (8 * i)));
    }
    void u64v(u64 v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<u8>(v >> (8 * i)));
    }
    void i64v(i64 v) { u64v(static_cast<u64>(v)); }
    void raw(const void* p, size_t n) {
        const u8* b = static_cast<const u8*>(p);
        buf_.insert(buf_.end(), b, b + n);
    }
    void raw(const Bytes& b) { raw(b.data(), b.size()); }
    void blob(const Bytes& b) {
        u32v(static_cast<u32>(b.size()));
        raw(b);
    }

private:
    Bytes buf_;
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class ByteReader {
public:
    ByteReader(const u8* p, size_t n) : p_(p), n_(n) {}
    explicit ByteReader(const Bytes& b) : p_(b.data()), n_(b.size()) {}

    size_t remaining() const { return n_ - off_; }
    bool done() const { return off_ == n_; }
    void expect_done() const {
        if (!done()) throw ParseError("trailing bytes");
    }

    u8 u8v() { return take(1)[0]; }
    u32 u32v() {
        const u8* b = take(4);
        u32 v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<u32>(b[i]) << (8 * i);
        return v;
    }
    u64 u64v() {
        const u8* b = take(8);
        u64 v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<u64>(b[i]) << (8 * i);
        return v;
    }
    i64 i64v() { return static_cast<i64>(u64v()); }
    const u8* take(size_t n) {
        if (remaining() < n) throw ParseError("truncated input");
        const u8* r = p_ + off_;
        off_ += n;
        return r;
    }
    Bytes blob() {
        const u32 n = u32v();
        if (remaining() < n) throw ParseError("truncated blob");
        const u8* b = take(n);
        return Bytes(b, b + n);
    }

private:
    const u8* p_;
    size_t n_;
    size_t off_ = 0;
};

}  // namespace pqledger
