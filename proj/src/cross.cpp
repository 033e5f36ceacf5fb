#include "zkfault/cross.hpp"

#include <algorithm>

#include "zkfault/error.hpp"
#include "zkfault/parallel.hpp"

namespace zkfault {

namespace {

Bytes u64_bytes(uint64_t v) {
    Bytes b;
    append_u64le(b, v);
    return b;
}

std::vector<uint8_t> powers(const CrossParams& p) {
    std::vector<uint8_t> pw(p.z);
    uint32_t v = 1;
    for (uint32_t i = 0; i < p.z; ++i, v = v * p.g % p.p) pw[i] = static_cast<uint8_t>(v);
    return pw;
}

}  // namespace

FpVector restricted_value(const CrossParams& p, const RestrictedVector& v) {
    const auto pw = powers(p);
    FpVector out(v.exps.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = pw.at(v.exps[i]);
    return out;
}

RestrictedVector restricted_from_value(const CrossParams& p, const FpVector& x) {
    const auto pw = powers(p);
    RestrictedVector out{std::vector<uint8_t>(x.size())};
    for (size_t i = 0; i < x.size(); ++i) {
        auto it = std::find(pw.begin(), pw.end(), x[i]);
        if (it == pw.end()) throw BadParams("value outside the restricted subgroup");
        out.exps[i] = static_cast<uint8_t>(it - pw.begin());
    }
    return out;
}

FpVector group_apply(const CrossParams& p, const RestrictedVector& sigma, const FpVector& x) {
    if (sigma.exps.size() != x.size()) throw DimensionMismatch("group_apply length");
    const auto pw = powers(p);
    FpVector out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = static_cast<uint8_t>(uint32_t(pw.at(sigma.exps[i])) * x[i] % p.p);
    return out;
}

RestrictedVector group_apply(const CrossParams& p, const RestrictedVector& sigma, const RestrictedVector& e) {
    if (sigma.exps.size() != e.exps.size()) throw DimensionMismatch("group_apply length");
    RestrictedVector out{std::vector<uint8_t>(e.exps.size())};
    for (size_t i = 0; i < out.exps.size(); ++i) out.exps[i] = static_cast<uint8_t>((sigma.exps[i] + e.exps[i]) % p.z);
    return out;
}

RestrictedVector group_quotient(const CrossParams& p, const RestrictedVector& e, const RestrictedVector& e_prime) {
    if (e.exps.size() != e_prime.exps.size()) throw DimensionMismatch("group_quotient length");
    RestrictedVector out{std::vector<uint8_t>(e.exps.size())};
    for (size_t i = 0; i < out.exps.size(); ++i)
        out.exps[i] = static_cast<uint8_t>((e.exps[i] + p.z - e_prime.exps[i] % p.z) % p.z);
    return out;
}

FpVector syndrome(const FqMatrix& h, const FpVector& x, const Field& f) { return matvec(h, x, f); }

CrossPublicKey cross_public_from_seed(const CrossParams& p, const Seed& hseed, const FpVector& s) {
    XofStream xs(hseed, "cross-h");
    FqMatrix h(p.n - p.k, p.n);
    for (size_t r = 0; r < h.rows(); ++r)
        for (size_t c = 0; c < h.cols(); ++c) h.at(r, c) = static_cast<uint8_t>(xs.uniform(p.p));
    return {p, hseed, std::move(h), s};
}

CrossKeyPair cross_keygen(const CrossParams& p, const Seed& seed) {
    p.validate();
    const Field f(p.p);
    XofStream es(seed, "cross-e");
    RestrictedVector e{std::vector<uint8_t>(p.n)};
    for (auto& x : e.exps) x = static_cast<uint8_t>(es.uniform(p.z));
    CrossPublicKey pk = cross_public_from_seed(p, xof_expand(seed, "cross-hseed", p.seed_bytes()), {});
    pk.s = syndrome(pk.h, restricted_value(p, e), f);
    return {{p, seed, std::move(e)}, std::move(pk)};
}

MerkleTree MerkleTree::build(const std::vector<Bytes>& leaf_hashes) {
    MerkleTree t;
    t.leaves = leaf_count_for(leaf_hashes.size());
    const size_t hb = leaf_hashes.empty() ? 32 : leaf_hashes.front().size();
    t.nodes.assign(2 * t.leaves - 1, Bytes(hb, 0));
    for (size_t i = 0; i < leaf_hashes.size(); ++i) t.nodes[t.leaves - 1 + i] = leaf_hashes[i];
    for (size_t i = t.leaves - 1; i-- > 0;)
        t.nodes[i] = hash_parts("merkle", {t.nodes[2 * i + 1], t.nodes[2 * i + 2]}, hb);
    return t;
}

MerkleProof MerkleTree::proof(size_t leaf) const {
    MerkleProof pr{leaf, {}};
    for (size_t i = leaves - 1 + leaf; i != 0; i = parent(i)) pr.path.push_back(nodes[i % 2 ? i + 1 : i - 1]);
    return pr;
}

bool merkle_verify(const Bytes& root, const Bytes& leaf_hash, const MerkleProof& proof, size_t padded_leaves) {
    if (proof.leaf >= padded_leaves || (size_t(1) << proof.path.size()) != padded_leaves) return false;
    Bytes cur = leaf_hash;
    size_t i = padded_leaves - 1 + proof.leaf;
    for (const auto& sib : proof.path) {
        if (sib.size() != cur.size()) return false;
        cur = i % 2 ? hash_parts("merkle", {cur, sib}, cur.size()) : hash_parts("merkle", {sib, cur}, cur.size());
        i = parent(i);
    }
    return cur == root;
}

CrossRoundSecrets cross_expand_round(const CrossParams& p, const Seed& eseed) {
    const Bytes both = xof_expand(eseed, "cross-round", 2 * p.seed_bytes());
    const Seed su(both.begin(), both.begin() + static_cast<long>(p.seed_bytes()));
    const Seed se(both.begin() + static_cast<long>(p.seed_bytes()), both.end());
    CrossRoundSecrets r;
    XofStream us(su, "cross-u");
    r.u_prime.resize(p.n);
    for (auto& x : r.u_prime) x = static_cast<uint8_t>(us.uniform(p.p));
    XofStream es(se, "cross-e");
    r.e_prime.exps.resize(p.n);
    for (auto& x : r.e_prime.exps) x = static_cast<uint8_t>(es.uniform(p.z));
    return r;
}

namespace {

Bytes c0_round(const CrossParams& p, const FpVector& s_tilde, const RestrictedVector& sigma, const Seed& salt, size_t i) {
    return hash_parts("cross-c0", {s_tilde, sigma.exps, salt, u64_bytes(i)}, p.hash_bytes());
}

Bytes c1_round(const CrossParams& p, const CrossRoundSecrets& r, const Seed& salt, size_t i) {
    return hash_parts("cross-c1", {r.u_prime, r.e_prime.exps, salt, u64_bytes(i)}, p.hash_bytes());
}

FpVector y_round(const CrossParams& p, const CrossRoundSecrets& r, uint8_t beta) {
    const FpVector ev = restricted_value(p, r.e_prime);
    FpVector y(p.n);
    for (size_t j = 0; j < p.n; ++j) y[j] = static_cast<uint8_t>((r.u_prime[j] + uint32_t(beta) * ev[j]) % p.p);
    return y;
}

Bytes h_round(const CrossParams& p, const FpVector& y) { return hash_parts("cross-y", {y}, p.hash_bytes()); }

}  // namespace

std::vector<uint8_t> cross_beta(const CrossParams& p, const Bytes& c0, const Bytes& c1, const Bytes& msg,
                                const Seed& salt) {
    XofStream xs(hash_parts("cross-ch1", {c0, c1, msg, salt}, p.hash_bytes()), "cross-beta");
    std::vector<uint8_t> beta(p.t);
    for (auto& b : beta) b = static_cast<uint8_t>(1 + xs.uniform(p.p - 1));
    return beta;
}

Digest cross_b(const CrossParams& p, const Bytes& c0, const Bytes& c1, const std::vector<uint8_t>& beta,
               const Bytes& h, const Bytes& msg, const Seed& salt) {
    return sample_fixed_weight_digest(hash_parts("cross-ch2", {c0, c1, beta, h, msg, salt}, p.hash_bytes()), p.t,
                                      p.w_reveal, 2);
}

std::vector<uint8_t> cross_hidden_mask(const Digest& b) {
    std::vector<uint8_t> f(b.t);
    for (size_t i = 0; i < b.t; ++i) f[i] = b.entries[i] == 0;
    return f;
}

ReferenceTree cross_reference_tree(const Digest& b, size_t l2) {
    ReferenceTree y = compute_seeds_to_publish(cross_hidden_mask(b), l2);
    for (auto& v : y) v ^= 1;
    return y;
}

CrossTranscript cross_commit(const CrossSecretKey& sk, const CrossPublicKey& pk, const Bytes& msg, const Seed& rng,
                             unsigned threads) {
    const CrossParams& p = pk.params;
    const Field f(p.p);
    const size_t sb = p.seed_bytes();
    const Bytes r = xof_expand(rng, "cross-sign", 3 * sb);
    const Seed mseed(r.begin(), r.begin() + static_cast<long>(sb));
    const Seed salt(r.begin() + static_cast<long>(sb), r.end());

    CrossTranscript tr;
    tr.tree = build_seed_tree(mseed, salt, p.t);
    tr.rounds.resize(p.t);
    tr.sigma.resize(p.t);
    tr.c1_rounds.resize(p.t);
    std::vector<Bytes> c0s(p.t);
    parallel_for(p.t, threads, [&](size_t i) {
        tr.rounds[i] = cross_expand_round(p, tr.tree.leaf(i));
        tr.sigma[i] = group_quotient(p, sk.e, tr.rounds[i].e_prime);
        const FpVector u = group_apply(p, tr.sigma[i], tr.rounds[i].u_prime);
        c0s[i] = c0_round(p, syndrome(pk.h, u, f), tr.sigma[i], salt, i);
        tr.c1_rounds[i] = c1_round(p, tr.rounds[i], salt, i);
    });
    tr.merkle = MerkleTree::build(c0s);
    tr.c0 = tr.merkle.root();
    tr.c1 = hash_parts("cross-c1all", tr.c1_rounds, p.hash_bytes());
    tr.beta = cross_beta(p, tr.c0, tr.c1, msg, salt);
    tr.y.resize(p.t);
    std::vector<Bytes> hs(p.t);
    for (size_t i = 0; i < p.t; ++i) {
        tr.y[i] = y_round(p, tr.rounds[i], tr.beta[i]);
        hs[i] = h_round(p, tr.y[i]);
    }
    tr.h = hash_parts("cross-h", hs, p.hash_bytes());
    tr.b = cross_b(p, tr.c0, tr.c1, tr.beta, tr.h, msg, salt);
    return tr;
}

CrossSignature cross_respond(const CrossTranscript& tr, const ReferenceTree& x_hidden) {
    CrossSignature sig;
    sig.salt = tr.tree.salt;
    sig.c0 = tr.c0;
    sig.c1 = tr.c1;
    sig.h = tr.h;
    sig.seed_path = wire_seeds(select_nodes(tr.tree, published_nodes(x_hidden)));
    for (size_t i = 0; i < tr.b.t; ++i) {
        if (tr.b.entries[i]) continue;
        sig.f_list.push_back({tr.y[i], tr.sigma[i], tr.c1_rounds[i]});
        sig.merkle_proofs.push_back(tr.merkle.proof(i));
    }
    return sig;
}

CrossSignature cross_sign(const CrossSecretKey& sk, const CrossPublicKey& pk, const Bytes& msg, const Seed& rng,
                          unsigned threads) {
    CrossTranscript tr = cross_commit(sk, pk, msg, rng, threads);
    return cross_respond(tr, compute_seeds_to_publish(cross_hidden_mask(tr.b), tr.tree.l2));
}

bool cross_check(const CrossPublicKey& pk, const Bytes& msg, const CrossSignature& sig, const ReferenceTree& x_hidden) {
    const CrossParams& p = pk.params;
    const Field f(p.p);
    const size_t hb = p.hash_bytes();
    if (sig.salt.size() != 2 * p.seed_bytes() || sig.c0.size() != hb || sig.c1.size() != hb || sig.h.size() != hb)
        return false;
    if (sig.f_list.size() != p.t - p.w_reveal || sig.merkle_proofs.size() != sig.f_list.size()) return false;
    for (const auto& s : sig.seed_path)
        if (s.size() != p.seed_bytes()) return false;
    for (const auto& r : sig.f_list) {
        if (r.y.size() != p.n || r.sigma.exps.size() != p.n || r.c1.size() != hb) return false;
        for (size_t j = 0; j < p.n; ++j)
            if (r.y[j] >= p.p || r.sigma.exps[j] >= p.z) return false;
    }
    const auto beta = cross_beta(p, sig.c0, sig.c1, msg, sig.salt);
    const Digest b = cross_b(p, sig.c0, sig.c1, beta, sig.h, msg, sig.salt);
    if (x_hidden.size() != node_count(p.l2())) return false;
    LeafMap leaves;
    try {
        leaves = regenerate_with_reference(sig.seed_path, sig.salt, x_hidden, p.t);
    } catch (const PathMismatch&) {
        return false;
    }
    std::vector<Bytes> c1s(p.t), hs(p.t);
    const size_t padded = leaf_count_for(p.t);
    for (size_t i = 0, k = 0; i < p.t; ++i) {
        if (b.entries[i]) {
            if (!leaves[i]) return false;
            const CrossRoundSecrets r = cross_expand_round(p, *leaves[i]);
            c1s[i] = c1_round(p, r, sig.salt, i);
            hs[i] = h_round(p, y_round(p, r, beta[i]));
            continue;
        }
        const CrossRound& fr = sig.f_list[k];
        const MerkleProof& pr = sig.merkle_proofs[k];
        ++k;
        if (pr.leaf != i) return false;
        FpVector st = syndrome(pk.h, group_apply(p, fr.sigma, fr.y), f);
        for (size_t j = 0; j < st.size(); ++j) st[j] = f.sub(st[j], f.mul(beta[i], pk.s[j]));
        if (!merkle_verify(sig.c0, c0_round(p, st, fr.sigma, sig.salt, i), pr, padded)) return false;
        c1s[i] = fr.c1;
        hs[i] = h_round(p, fr.y);
    }
    return hash_parts("cross-c1all", c1s, hb) == sig.c1 && hash_parts("cross-h", hs, hb) == sig.h;
}

bool cross_check_response(const CrossPublicKey& pk, const Bytes& msg, const CrossSignature& sig) {
    const CrossParams& p = pk.params;
    if (sig.c0.size() != p.hash_bytes() || sig.c1.size() != p.hash_bytes()) return false;
    const auto beta = cross_beta(p, sig.c0, sig.c1, msg, sig.salt);
    const Digest b = cross_b(p, sig.c0, sig.c1, beta, sig.h, msg, sig.salt);
    return cross_check(pk, msg, sig, compute_seeds_to_publish(cross_hidden_mask(b), p.l2()));
}

using nlohmann::json;

json cross_secret_key_json(const CrossSecretKey& sk) { return {{"params", sk.params}, {"seed", to_hex(sk.seed)}}; }

CrossKeyPair cross_keys_from_json(const json& j) {
    return cross_keygen(j.at("params").get<CrossParams>(), from_hex(j.at("seed").get<std::string>()));
}

json cross_public_key_json(const CrossPublicKey& pk) {
    return {{"params", pk.params}, {"hseed", to_hex(pk.hseed)}, {"s", to_hex(pk.s)}};
}

CrossPublicKey cross_public_key_from_json(const json& j) {
    const CrossParams p = j.at("params").get<CrossParams>();
    p.validate();
    CrossPublicKey pk = cross_public_from_seed(p, from_hex(j.at("hseed").get<std::string>()),
                                               from_hex(j.at("s").get<std::string>()));
    if (pk.s.size() != p.n - p.k) throw DimensionMismatch("syndrome length");
    return pk;
}

json cross_signature_json(const CrossSignature& sig) {
    json seeds = json::array(), proofs = json::array(), rounds = json::array();
    for (const auto& s : sig.seed_path) seeds.push_back(to_hex(s));
    for (const auto& pr : sig.merkle_proofs) {
        json path = json::array();
        for (const auto& h : pr.path) path.push_back(to_hex(h));
        proofs.push_back({{"leaf", pr.leaf}, {"path", path}});
    }
    for (const auto& r : sig.f_list)
        rounds.push_back({{"y", to_hex(r.y)}, {"sigma", to_hex(r.sigma.exps)}, {"c1", to_hex(r.c1)}});
    return {{"salt", to_hex(sig.salt)}, {"c0", to_hex(sig.c0)}, {"c1", to_hex(sig.c1)},       {"h", to_hex(sig.h)},
            {"seed_path", seeds},       {"merkle_proofs", proofs}, {"f_list", rounds}};
}

CrossSignature cross_signature_from_json(const json& j) {
    try {
        CrossSignature sig;
        sig.salt = from_hex(j.at("salt").get<std::string>());
        sig.c0 = from_hex(j.at("c0").get<std::string>());
        sig.c1 = from_hex(j.at("c1").get<std::string>());
        sig.h = from_hex(j.at("h").get<std::string>());
        for (const auto& s : j.at("seed_path")) sig.seed_path.push_back(from_hex(s.get<std::string>()));
        for (const auto& pr : j.at("merkle_proofs")) {
            MerkleProof m{pr.at("leaf").get<size_t>(), {}};
            for (const auto& h : pr.at("path")) m.path.push_back(from_hex(h.get<std::string>()));
            sig.merkle_proofs.push_back(std::move(m));
        }
        for (const auto& r : j.at("f_list"))
            sig.f_list.push_back({from_hex(r.at("y").get<std::string>()), {from_hex(r.at("sigma").get<std::string>())},
                                  from_hex(r.at("c1").get<std::string>())});
        return sig;
    } catch (const json::exception& e) {
        throw MalformedSignature(e.what());
    } catch (const Error& e) {
        throw MalformedSignature(e.what());
    }
}

}  // namespace zkfault
