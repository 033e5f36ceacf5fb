#include "zkfault/less.hpp"

#include <optional>

#include "zkfault/error.hpp"
#include "zkfault/parallel.hpp"

namespace zkfault {

std::vector<MonomialMatrix> expand_secret_monomials(const LessParams& p, const Seed& mseed_master) {
    const Field f(p.q);
    const size_t sb = p.seed_bytes();
    Bytes all = xof_expand(mseed_master, tag::mseed, (p.s - 1) * sb);
    std::vector<MonomialMatrix> q;
    for (size_t i = 0; i + 1 < p.s; ++i) q.push_back(sample_monomial(Seed(all.begin() + i * sb, all.begin() + (i + 1) * sb), p.n, f));
    return q;
}

LessPublicKey derive_public_key(const LessSecretKey& sk) {
    const Field f(sk.params.q);
    LessPublicKey pk{sk.params, sk.gseed, sk.g0, {}};
    for (const auto& qi : sk.q)
        pk.g.push_back(rref_with_pivots(apply_right(sk.g0.matrix, mono_transpose(mono_inverse(qi, f)), f), f));
    return pk;
}

std::pair<LessSecretKey, LessPublicKey> less_keygen(const LessParams& p, const Seed& master_entropy,
                                                     const Seed& gseed) {
    p.validate();
    const Field f(p.q);
    LessSecretKey sk{p, master_entropy, gseed, expand_secret_monomials(p, master_entropy),
                     sample_rref_generator(gseed, p.k, p.n, f)};
    LessPublicKey pk = derive_public_key(sk);
    return {std::move(sk), std::move(pk)};
}

DigestInput prepare_digest_input(const RrefMatrix& g0, const MonomialMatrix& q_tilde, const Field& f) {
    const MonomialMatrix qt = mono_transpose(q_tilde);
    RrefMatrix gp = rref_with_pivots(apply_right(g0.matrix, qt, f), f);
    std::vector<size_t> rest;
    for (size_t c = 0, p = 0; c < gp.matrix.cols(); ++c) {
        if (p < gp.pivot_cols.size() && gp.pivot_cols[p] == c) ++p;
        else rest.push_back(c);
    }
    return {select_columns(qt, gp.pivot_cols), lex_sort(lex_min_col(select_cols(gp.matrix, rest), f))};
}

Bytes commitment_hash(const LessParams& p, const std::vector<FqMatrix>& v_bars, const Bytes& msg, const Seed& salt) {
    std::vector<Bytes> parts;
    parts.reserve(v_bars.size() + 3);
    for (const auto& v : v_bars) parts.push_back(encode_matrix(v));
    parts.push_back(msg);
    Bytes len;
    append_u64le(len, msg.size());
    parts.push_back(len);
    parts.push_back(salt);
    return hash_commit(parts, p.cmt_bytes());
}

LessCommitment less_commit(const LessSecretKey& sk, const Bytes& msg, const Seed& rng, unsigned threads) {
    const LessParams& p = sk.params;
    const Field f(p.q);
    const size_t sb = p.seed_bytes();
    Bytes r = xof_expand(rng, tag::sign, 2 * sb);
    Seed emseed(r.begin(), r.begin() + sb), salt(r.begin() + sb, r.end());

    LessCommitment c{build_seed_tree(emseed, salt, p.t), std::vector<MonomialMatrix>(p.t),
                     std::vector<PartialMonomialMatrix>(p.t), {}};
    std::vector<FqMatrix> v_bars(p.t);
    parallel_for(p.t, threads, [&](size_t i) {
        c.q_tilde[i] = sample_monomial(c.tree.leaf(i), p.n, f);
        DigestInput di = prepare_digest_input(sk.g0, c.q_tilde[i], f);
        c.q_bar[i] = std::move(di.q_bar);
        v_bars[i] = std::move(di.v_bar);
    });
    c.cmt = commitment_hash(p, v_bars, msg, salt);
    return c;
}

Digest less_challenge(const LessParams& p, const Bytes& cmt) { return sample_fixed_weight_digest(cmt, p.t, p.w, p.s); }

std::vector<PartialMonomialMatrix> less_responses(const LessSecretKey& sk, const LessCommitment& c, const Digest& d) {
    const Field f(sk.params.q);
    std::vector<PartialMonomialMatrix> rsp;
    for (size_t i = 0; i < d.t; ++i)
        if (d.entries[i] != 0) rsp.push_back(mono_mul(mono_transpose(sk.q.at(d.entries[i] - 1)), c.q_bar[i], f));
    return rsp;
}

LessSignature less_respond(const LessSecretKey& sk, const LessCommitment& c, const Digest& d, const ReferenceTree& x) {
    return {c.tree.salt, c.cmt, wire_seeds(select_nodes(c.tree, published_nodes(x))), less_responses(sk, c, d)};
}

LessSignature less_sign(const LessSecretKey& sk, const Bytes& msg, const Seed& rng, unsigned threads) {
    LessCommitment c = less_commit(sk, msg, rng, threads);
    Digest d = less_challenge(sk.params, c.cmt);
    return less_respond(sk, c, d, compute_seeds_to_publish(d.mask(), sk.params.l2()));
}

namespace {

bool well_formed(const LessParams& p, const LessSignature& sig, const Field& f) {
    if (sig.salt.size() != p.seed_bytes() || sig.cmt.size() != p.cmt_bytes() || sig.rsp.size() != p.w) return false;
    for (const auto& s : sig.tree_nodes)
        if (s.size() != p.seed_bytes()) return false;
    for (const auto& r : sig.rsp)
        if (r.n != p.n || r.k() != p.k || !r.valid(f)) return false;
    return true;
}

}  // namespace

std::optional<FqMatrix> v_bar_from_response(const RrefMatrix& gj, const PartialMonomialMatrix& qs, const Field& f) {
    const size_t k = qs.k(), n = qs.n;
    FqMatrix left = apply_right(gj.matrix, qs, f);
    FqMatrix right = select_cols(gj.matrix, qs.zero_rows());
    FqMatrix ghat(k, n);
    for (size_t r = 0; r < k; ++r) {
        std::copy(left.row(r), left.row(r) + k, ghat.row(r));
        std::copy(right.row(r), right.row(r) + (n - k), ghat.row(r) + k);
    }
    RrefMatrix red = rref_with_pivots(ghat, f);
    if (red.rank() != k || red.pivot_cols.back() != k - 1) return std::nullopt;
    std::vector<size_t> rest(n - k);
    for (size_t c = 0; c < n - k; ++c) rest[c] = k + c;
    return lex_sort(lex_min_col(select_cols(red.matrix, rest), f));
}

bool less_check(const LessPublicKey& pk, const Bytes& msg, const LessSignature& sig, const Digest& d,
                const ReferenceTree& x, unsigned threads) {
    const LessParams& p = pk.params;
    const Field f(p.q);
    if (!well_formed(p, sig, f) || d.t != p.t || d.weight() != p.w) return false;
    LeafMap leaves;
    try {
        leaves = regenerate_with_reference(sig.tree_nodes, sig.salt, x, p.t);
    } catch (const PathMismatch&) {
        return false;
    }
    std::vector<size_t> rsp_index(p.t, 0);
    for (size_t i = 0, k = 0; i < p.t; ++i)
        if (d.entries[i] != 0) rsp_index[i] = k++;

    std::vector<FqMatrix> v_bars(p.t);
    std::vector<uint8_t> ok(p.t, 1);
    parallel_for(p.t, threads, [&](size_t i) {
        if (d.entries[i] == 0) {
            if (!leaves[i]) {
                ok[i] = 0;
                return;
            }
            v_bars[i] = prepare_digest_input(pk.g0, sample_monomial(*leaves[i], p.n, f), f).v_bar;
        } else {
            auto v = v_bar_from_response(pk.g.at(d.entries[i] - 1), sig.rsp[rsp_index[i]], f);
            if (!v) {
                ok[i] = 0;
                return;
            }
            v_bars[i] = std::move(*v);
        }
    });
    for (uint8_t b : ok)
        if (!b) return false;
    return commitment_hash(p, v_bars, msg, sig.salt) == sig.cmt;
}

bool less_verify(const LessPublicKey& pk, const Bytes& msg, const LessSignature& sig, unsigned threads) {
    const LessParams& p = pk.params;
    if (sig.cmt.size() != p.cmt_bytes()) return false;
    Digest d = less_challenge(p, sig.cmt);
    return less_check(pk, msg, sig, d, compute_seeds_to_publish(d.mask(), p.l2()), threads);
}

}  // namespace zkfault
