#include "zkfault/fault.hpp"

#include <algorithm>

#include "zkfault/error.hpp"

namespace zkfault {

const char* to_string(FaultModel m) {
    switch (m) {
        case FaultModel::skip_store: return "skip_store";
        case FaultModel::stuck_at_zero: return "stuck_at_zero";
        case FaultModel::bit_flip: return "bit_flip";
        case FaultModel::skip_check: return "skip_check";
    }
    return "?";
}

const char* to_string(FaultClass c) {
    switch (c) {
        case FaultClass::not_injected: return "not_injected";
        case FaultClass::ineffective_case1: return "ineffective_case1";
        case FaultClass::ineffective_case2: return "ineffective_case2";
        case FaultClass::effective: return "effective";
    }
    return "?";
}

FaultModel fault_model_from_string(const std::string& s) {
    for (auto m : {FaultModel::skip_store, FaultModel::stuck_at_zero, FaultModel::bit_flip, FaultModel::skip_check})
        if (s == to_string(m)) return m;
    throw BadParams("unknown fault model: " + s);
}

ReferenceTree compute_seeds_to_publish_skip_store(const std::vector<uint8_t>& f, size_t l2, size_t node) {
    ReferenceTree x(node_count(l2), 0);
    for (size_t i = 0; i < f.size(); ++i)
        if (leaf_node(l2, i) != node) x[leaf_node(l2, i)] = f[i] ? 1 : 0;
    for (size_t i = l2 - 1; i-- > 0;)
        if (i != node) x[i] = x[2 * i + 1] | x[2 * i + 2];
    return x;
}

FaultedTree apply_fault(const std::vector<uint8_t>& f, size_t l2, FaultModel model, size_t node) {
    if (node >= node_count(l2)) throw BadParams("fault node out of range");
    ReferenceTree x = compute_seeds_to_publish(f, l2);
    switch (model) {
        case FaultModel::skip_store: x = compute_seeds_to_publish_skip_store(f, l2, node); break;
        case FaultModel::stuck_at_zero: x = clear_node(std::move(x), node); break;
        case FaultModel::bit_flip:
            x[node] ^= 1;
            recompute_ancestors(x, node);
            break;
        case FaultModel::skip_check: {
            std::vector<size_t> pub = published_nodes(x);
            if (!std::binary_search(pub.begin(), pub.end(), node)) pub.insert(std::upper_bound(pub.begin(), pub.end(), node), node);
            return {std::move(x), std::move(pub)};
        }
    }
    std::vector<size_t> pub = published_nodes(x);
    return {std::move(x), std::move(pub)};
}

FaultClass classify(const Digest& d, size_t l2, size_t node, FaultModel model) {
    const ReferenceTree x = compute_seeds_to_publish(d.mask(), l2);
    if (x.at(node) == 0) return FaultClass::ineffective_case1;
    if (model == FaultModel::skip_check) return FaultClass::effective;
    return clear_node(x, node)[0] == 0 ? FaultClass::ineffective_case2 : FaultClass::effective;
}

FaultOutcome faulted_respond(const LessSecretKey& sk, const LessCommitment& c, const Digest& d, const FaultSpec& spec,
                             bool inject) {
    const size_t l2 = sk.params.l2();
    const auto f = d.mask();
    ReferenceTree honest = compute_seeds_to_publish(f, l2);
    if (!inject) {
        LessSignature sig = less_respond(sk, c, d, honest);
        return {false, FaultClass::not_injected, std::move(sig), {d, honest, honest}};
    }
    FaultedTree ft = apply_fault(f, l2, spec.model, spec.node);
    LessSignature sig{c.tree.salt, c.cmt, wire_seeds(select_nodes(c.tree, ft.published)), less_responses(sk, c, d)};
    return {true, classify(d, l2, spec.node, spec.model), std::move(sig), {d, std::move(honest), std::move(ft.x)}};
}

bool injection_coin(const Seed& fault_rng, double p_success) {
    if (!(p_success >= 0.0 && p_success <= 1.0)) throw BadProbability("p_success must lie in [0, 1]");
    if (p_success >= 1.0) return true;
    if (p_success <= 0.0) return false;
    XofStream xs(fault_rng, "fault");
    return static_cast<double>(xs.next_u64() >> 11) * 0x1.0p-53 < p_success;
}

FaultOutcome faulted_sign(const LessSecretKey& sk, const Bytes& msg, const FaultSpec& spec, const Seed& rng,
                          const Seed& fault_rng, unsigned threads) {
    if (spec.node >= node_count(sk.params.l2())) throw BadParams("fault node out of range");
    const bool inject = injection_coin(fault_rng, spec.p_success);
    LessCommitment c = less_commit(sk, msg, rng, threads);
    Digest d = less_challenge(sk.params, c.cmt);
    return faulted_respond(sk, c, d, spec, inject);
}

}  // namespace zkfault
