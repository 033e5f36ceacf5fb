#include "zkfault/xof.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <numeric>

#include "zkfault/error.hpp"

namespace zkfault {

struct XofStream::Ctx {
    EVP_MD_CTX* absorbed = nullptr;
    ~Ctx() { EVP_MD_CTX_free(absorbed); }
};

namespace {

EVP_MD_CTX* absorb(const Bytes& seed, std::string_view domain_tag) {
    if (domain_tag.size() > 255) throw Error("domain tag too long");
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    const uint8_t len = static_cast<uint8_t>(domain_tag.size());
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, &len, 1) != 1 ||
        EVP_DigestUpdate(ctx, domain_tag.data(), domain_tag.size()) != 1 ||
        EVP_DigestUpdate(ctx, seed.data(), seed.size()) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("SHAKE-256 initialisation failed");
    }
    return ctx;
}

Bytes squeeze(const EVP_MD_CTX* absorbed, size_t n) {
    Bytes out(n);
    if (n == 0) return out;
    EVP_MD_CTX* c = EVP_MD_CTX_new();
    if (!c || EVP_MD_CTX_copy_ex(c, absorbed) != 1 || EVP_DigestFinalXOF(c, out.data(), n) != 1) {
        EVP_MD_CTX_free(c);
        throw Error("SHAKE-256 squeeze failed");
    }
    EVP_MD_CTX_free(c);
    return out;
}

}  // namespace

Bytes xof_expand(const Bytes& seed, std::string_view domain_tag, size_t n_bytes) {
    XofStream::Ctx ctx{absorb(seed, domain_tag)};
    return squeeze(ctx.absorbed, n_bytes);
}

XofStream::XofStream(const Bytes& seed, std::string_view domain_tag) : ctx_(std::make_unique<Ctx>()) {
    ctx_->absorbed = absorb(seed, domain_tag);
}

XofStream::~XofStream() = default;

void XofStream::refill() {
    // OpenSSL 3.0 lacks incremental squeezing; re-squeeze a longer prefix.
    buf_ = squeeze(ctx_->absorbed, std::max<size_t>(272, 2 * buf_.size()));
}

uint8_t XofStream::next_byte() {
    if (pos_ == buf_.size()) refill();
    return buf_[pos_++];
}

uint64_t XofStream::next_u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(next_byte()) << (8 * i);
    return v;
}

Bytes XofStream::next_bytes(size_t n) {
    Bytes out(n);
    for (auto& b : out) b = next_byte();
    return out;
}

uint32_t XofStream::uniform(uint32_t bound) {
    return static_cast<uint32_t>((static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
}

size_t Digest::weight() const {
    return static_cast<size_t>(std::count_if(entries.begin(), entries.end(), [](uint8_t x) { return x != 0; }));
}

std::vector<uint8_t> Digest::mask() const {
    std::vector<uint8_t> f(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) f[i] = entries[i] != 0;
    return f;
}

namespace {

bool generic_columns(const FqMatrix& m, const Field& f) {
    std::vector<std::vector<uint8_t>> cols(m.cols());
    for (size_t c = 0; c < m.cols(); ++c) {
        cols[c] = lex_min_vector(m.column(c), f);
        if (std::all_of(cols[c].begin(), cols[c].end(), [](uint8_t x) { return x == 0; })) return false;
    }
    std::sort(cols.begin(), cols.end());
    return std::adjacent_find(cols.begin(), cols.end()) == cols.end();
}

}  // namespace

RrefMatrix sample_rref_generator(const Seed& seed, size_t k, size_t n, const Field& f) {
    if (k == 0 || k >= n) throw BadParams("generator dimensions require 0 < k < n");
    XofStream xs(seed, tag::gseed);
    for (;;) {
        FqMatrix m(k, n);
        for (size_t r = 0; r < k; ++r)
            for (size_t c = 0; c < n; ++c) m.at(r, c) = static_cast<uint8_t>(xs.uniform(f.q()));
        RrefMatrix red = rref_with_pivots(m, f);
        if (red.rank() == k && generic_columns(red.matrix, f)) return red;
    }
}

MonomialMatrix sample_monomial(const Seed& seed, size_t n, const Field& f) {
    XofStream xs(seed, tag::mono);
    MonomialMatrix m = MonomialMatrix::identity(n);
    for (size_t i = n; i > 1; --i) std::swap(m.perm[i - 1], m.perm[xs.uniform(static_cast<uint32_t>(i))]);
    for (size_t j = 0; j < n; ++j) m.coeffs[j] = static_cast<uint8_t>(1 + xs.uniform(f.q() - 1));
    return m;
}

Digest sample_fixed_weight_digest(const Bytes& seed_or_digest, size_t t, size_t w, uint32_t s) {
    if (w == 0 || w > t) throw BadWeight("digest weight must satisfy 0 < w <= t");
    if (s < 2) throw BadWeight("digest alphabet must have s >= 2");
    XofStream xs(seed_or_digest, tag::digest);
    std::vector<uint32_t> pos(t);
    std::iota(pos.begin(), pos.end(), 0u);
    for (size_t i = 0; i < w; ++i)
        std::swap(pos[i], pos[i + xs.uniform(static_cast<uint32_t>(t - i))]);
    Digest d{t, s, std::vector<uint8_t>(t, 0)};
    for (size_t i = 0; i < w; ++i) d.entries[pos[i]] = static_cast<uint8_t>(1 + xs.uniform(s - 1));
    return d;
}

Bytes hash_parts(std::string_view domain_tag, const std::vector<Bytes>& parts, size_t out_len) {
    Bytes framed;
    for (const Bytes& p : parts) {
        append_u64le(framed, p.size());
        append(framed, p);
    }
    return xof_expand(framed, domain_tag, out_len);
}

Bytes hash_commit(const std::vector<Bytes>& parts, size_t out_len) { return hash_parts(tag::cmt, parts, out_len); }

Bytes encode_matrix(const FqMatrix& m) {
    Bytes out;
    append_u32le(out, static_cast<uint32_t>(m.rows()));
    append_u32le(out, static_cast<uint32_t>(m.cols()));
    append(out, m.data());
    return out;
}

}  // namespace zkfault
