#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "zkfault/bytes.hpp"
#include "zkfault/gf.hpp"
#include "zkfault/monomial.hpp"

namespace zkfault {

using Seed = Bytes;

// Domain tags; see docs/formats.md.
namespace tag {
inline constexpr std::string_view gseed = "gseed";
inline constexpr std::string_view mono = "mono";
inline constexpr std::string_view digest = "digest";
inline constexpr std::string_view tree = "tree";
inline constexpr std::string_view cmt = "cmt";
inline constexpr std::string_view mseed = "mseed";
inline constexpr std::string_view sign = "sign";
}  // namespace tag

// SHAKE-256 over (u8 tag length || tag || seed); the output stream is prefix-consistent.
Bytes xof_expand(const Bytes& seed, std::string_view domain_tag, size_t n_bytes);

class XofStream {
public:
    XofStream(const Bytes& seed, std::string_view domain_tag);
    ~XofStream();
    XofStream(const XofStream&) = delete;
    XofStream& operator=(const XofStream&) = delete;

    uint8_t next_byte();
    uint64_t next_u64();
    Bytes next_bytes(size_t n);
    // Uniform in [0, bound) by 64-bit multiply-shift; bound >= 1.
    uint32_t uniform(uint32_t bound);

private:
    void refill();

public:
    struct Ctx;

private:
    std::unique_ptr<Ctx> ctx_;
    Bytes buf_;
    size_t pos_ = 0;
};

// Challenge vector d in Z_s^t with exactly w nonzero entries.
struct Digest {
    size_t t = 0;
    uint32_t s = 2;
    std::vector<uint8_t> entries;

    size_t weight() const;
    std::vector<uint8_t> mask() const;  // f[i] = (d[i] != 0)
    bool operator==(const Digest& o) const = default;
};

RrefMatrix sample_rref_generator(const Seed& seed, size_t k, size_t n, const Field& f);
MonomialMatrix sample_monomial(const Seed& seed, size_t n, const Field& f);
Digest sample_fixed_weight_digest(const Bytes& seed_or_digest, size_t t, size_t w, uint32_t s);

// Length-prefixed (u64 LE) parts under a domain tag.
Bytes hash_parts(std::string_view domain_tag, const std::vector<Bytes>& parts, size_t out_len);
Bytes hash_commit(const std::vector<Bytes>& parts, size_t out_len = 32);

// Canonical matrix encoding: u32 LE rows, u32 LE cols, row-major bytes.
Bytes encode_matrix(const FqMatrix& m);

}  // namespace zkfault
