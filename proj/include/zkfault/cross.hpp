#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "json.hpp"
#include "zkfault/gf.hpp"
#include "zkfault/params.hpp"
#include "zkfault/seedtree.hpp"
#include "zkfault/xof.hpp"

namespace zkfault {

using FpVector = std::vector<uint8_t>;

// Element of E^n in exponent form: component i is g^exps[i].
struct RestrictedVector {
    std::vector<uint8_t> exps;
    bool operator==(const RestrictedVector& o) const = default;
};

FpVector restricted_value(const CrossParams& p, const RestrictedVector& v);
RestrictedVector restricted_from_value(const CrossParams& p, const FpVector& x);  // throws BadParams outside E^n
// Componentwise multiplication by g^sigma.
FpVector group_apply(const CrossParams& p, const RestrictedVector& sigma, const FpVector& x);
RestrictedVector group_apply(const CrossParams& p, const RestrictedVector& sigma, const RestrictedVector& e);
// sigma with group_apply(sigma, e_prime) = e.
RestrictedVector group_quotient(const CrossParams& p, const RestrictedVector& e, const RestrictedVector& e_prime);
// x H^T over F_p.
FpVector syndrome(const FqMatrix& h, const FpVector& x, const Field& f);

struct CrossPublicKey {
    CrossParams params;
    Seed hseed;
    FqMatrix h;  // (n-k) x n
    FpVector s;  // e H^T
};

struct CrossSecretKey {
    CrossParams params;
    Seed seed;
    RestrictedVector e;
};

struct CrossKeyPair {
    CrossSecretKey sk;
    CrossPublicKey pk;
};

CrossKeyPair cross_keygen(const CrossParams& p, const Seed& seed);
CrossPublicKey cross_public_from_seed(const CrossParams& p, const Seed& hseed, const FpVector& s);

struct MerkleProof {
    size_t leaf = 0;
    std::vector<Bytes> path;  // sibling hashes from the leaf upwards
    bool operator==(const MerkleProof& o) const = default;
};

// Binary hash tree over the round commitments, padded with zero leaves to a power of two.
struct MerkleTree {
    size_t leaves = 0;  // padded leaf count
    std::vector<Bytes> nodes;  // heap order, node 0 is the root

    static MerkleTree build(const std::vector<Bytes>& leaf_hashes);
    const Bytes& root() const { return nodes.front(); }
    MerkleProof proof(size_t leaf) const;
};

bool merkle_verify(const Bytes& root, const Bytes& leaf_hash, const MerkleProof& proof, size_t padded_leaves);

struct CrossRound {
    FpVector y;
    RestrictedVector sigma;
    Bytes c1;
    bool operator==(const CrossRound& o) const = default;
};

struct CrossSignature {
    Seed salt;
    Bytes c0;
    Bytes c1;
    Bytes h;
    std::vector<Seed> seed_path;  // ascending node index
    std::vector<MerkleProof> merkle_proofs;  // one per round outside J
    std::vector<CrossRound> f_list;          // rounds outside J, ascending
    bool operator==(const CrossSignature& o) const = default;
};

struct CrossRoundSecrets {
    FpVector u_prime;
    RestrictedVector e_prime;
};

CrossRoundSecrets cross_expand_round(const CrossParams& p, const Seed& eseed);

// Signer state before the seed path is chosen.
struct CrossTranscript {
    SeedTree tree;
    std::vector<CrossRoundSecrets> rounds;
    std::vector<RestrictedVector> sigma;
    std::vector<FpVector> y;
    std::vector<Bytes> c1_rounds;
    MerkleTree merkle;
    Bytes c0, c1, h;
    std::vector<uint8_t> beta;
    Digest b;  // b[i] = 1 for i in J
};

CrossTranscript cross_commit(const CrossSecretKey& sk, const CrossPublicKey& pk, const Bytes& msg, const Seed& rng,
                             unsigned threads = 1);
std::vector<uint8_t> cross_beta(const CrossParams& p, const Bytes& c0, const Bytes& c1, const Bytes& msg,
                                const Seed& salt);
Digest cross_b(const CrossParams& p, const Bytes& c0, const Bytes& c1, const std::vector<uint8_t>& beta,
               const Bytes& h, const Bytes& msg, const Seed& salt);
// Hidden-round mask in the seed-tree polarity: 1 for rounds outside J.
std::vector<uint8_t> cross_hidden_mask(const Digest& b);
// CROSS-polarity reference tree: 1 marks a publishable node (complement of the hidden-seed tree).
ReferenceTree cross_reference_tree(const Digest& b, size_t l2);

CrossSignature cross_respond(const CrossTranscript& tr, const ReferenceTree& x_hidden);
CrossSignature cross_sign(const CrossSecretKey& sk, const CrossPublicKey& pk, const Bytes& msg, const Seed& rng,
                          unsigned threads = 1);

// Recomputes challenges, Merkle proofs, the h chain and the c1 chain, with seed positions taken from x_hidden.
bool cross_check(const CrossPublicKey& pk, const Bytes& msg, const CrossSignature& sig, const ReferenceTree& x_hidden);
bool cross_check_response(const CrossPublicKey& pk, const Bytes& msg, const CrossSignature& sig);

nlohmann::json cross_secret_key_json(const CrossSecretKey& sk);
CrossKeyPair cross_keys_from_json(const nlohmann::json& j);
nlohmann::json cross_public_key_json(const CrossPublicKey& pk);
CrossPublicKey cross_public_key_from_json(const nlohmann::json& j);
nlohmann::json cross_signature_json(const CrossSignature& sig);
CrossSignature cross_signature_from_json(const nlohmann::json& j);  // throws MalformedSignature

}  // namespace zkfault
