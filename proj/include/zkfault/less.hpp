#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zkfault/gf.hpp"
#include "zkfault/monomial.hpp"
#include "zkfault/params.hpp"
#include "zkfault/seedtree.hpp"
#include "zkfault/xof.hpp"

namespace zkfault {

struct LessSecretKey {
    LessParams params;
    Seed mseed_master;
    Seed gseed;
    std::vector<MonomialMatrix> q;  // Q_1 .. Q_{s-1}
    RrefMatrix g0;                  // cached expansion of gseed
};

struct LessPublicKey {
    LessParams params;
    Seed gseed;
    RrefMatrix g0;
    std::vector<RrefMatrix> g;  // G_1 .. G_{s-1}
};

struct LessSignature {
    Seed salt;
    Bytes cmt;
    std::vector<Seed> tree_nodes;  // ascending node index; indices are implied by the digest
    std::vector<PartialMonomialMatrix> rsp;
    bool operator==(const LessSignature& o) const = default;
};

struct DigestInput {
    PartialMonomialMatrix q_bar;
    FqMatrix v_bar;
};

// Everything the signer holds between committing and answering the challenge.
struct LessCommitment {
    SeedTree tree;
    std::vector<MonomialMatrix> q_tilde;
    std::vector<PartialMonomialMatrix> q_bar;
    Bytes cmt;
};

std::vector<MonomialMatrix> expand_secret_monomials(const LessParams& p, const Seed& mseed_master);
std::pair<LessSecretKey, LessPublicKey> less_keygen(const LessParams& p, const Seed& master_entropy,
                                                     const Seed& gseed);
LessPublicKey derive_public_key(const LessSecretKey& sk);

DigestInput prepare_digest_input(const RrefMatrix& g0, const MonomialMatrix& q_tilde, const Field& f);
Bytes commitment_hash(const LessParams& p, const std::vector<FqMatrix>& v_bars, const Bytes& msg, const Seed& salt);

LessCommitment less_commit(const LessSecretKey& sk, const Bytes& msg, const Seed& rng, unsigned threads = 1);
Digest less_challenge(const LessParams& p, const Bytes& cmt);
// Responses Q_{d[i]}^T * Qbar_i for the nonzero rounds, in round order.
std::vector<PartialMonomialMatrix> less_responses(const LessSecretKey& sk, const LessCommitment& c, const Digest& d);
// Signature whose disclosed seeds are the published nodes of x.
LessSignature less_respond(const LessSecretKey& sk, const LessCommitment& c, const Digest& d, const ReferenceTree& x);
LessSignature less_sign(const LessSecretKey& sk, const Bytes& msg, const Seed& rng, unsigned threads = 1);

// Round commitment from a response: non-pivot part of RREF(G_j Q* | G_j[*, J]); nullopt if malformed.
std::optional<FqMatrix> v_bar_from_response(const RrefMatrix& gj, const PartialMonomialMatrix& qs, const Field& f);

bool less_verify(const LessPublicKey& pk, const Bytes& msg, const LessSignature& sig, unsigned threads = 1);
// Verification with the seed positions taken from x instead of the honest reference tree.
bool less_check(const LessPublicKey& pk, const Bytes& msg, const LessSignature& sig, const Digest& d,
                const ReferenceTree& x, unsigned threads = 1);

}  // namespace zkfault
