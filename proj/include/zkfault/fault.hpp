#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zkfault/less.hpp"
#include "zkfault/seedtree.hpp"

namespace zkfault {

enum class FaultModel { skip_store, stuck_at_zero, bit_flip, skip_check };
enum class FaultClass { not_injected, ineffective_case1, ineffective_case2, effective };

const char* to_string(FaultModel m);
const char* to_string(FaultClass c);
FaultModel fault_model_from_string(const std::string& s);  // throws BadParams

struct FaultSpec {
    FaultModel model = FaultModel::skip_store;
    size_t node = 1;
    double p_success = 1.0;
};

// Reference tree as computed by the faulty device, and the node indices it discloses.
struct FaultedTree {
    ReferenceTree x;
    std::vector<size_t> published;
};

// Bottom-up pass in which the store to x[node] is skipped.
ReferenceTree compute_seeds_to_publish_skip_store(const std::vector<uint8_t>& f, size_t l2, size_t node);
FaultedTree apply_fault(const std::vector<uint8_t>& f, size_t l2, FaultModel model, size_t node);

FaultClass classify(const Digest& d, size_t l2, size_t node, FaultModel model);

// Oracle-only ground truth; attacker code never receives it.
struct FaultTruth {
    Digest d;
    ReferenceTree x;
    ReferenceTree x_faulted;
};

struct FaultOutcome {
    bool injected = false;
    FaultClass cls = FaultClass::not_injected;
    LessSignature signature;
    FaultTruth truth;
};

FaultOutcome faulted_respond(const LessSecretKey& sk, const LessCommitment& c, const Digest& d, const FaultSpec& spec,
                             bool inject);
// The injection coin is drawn from fault_rng, separate from the signing randomness.
FaultOutcome faulted_sign(const LessSecretKey& sk, const Bytes& msg, const FaultSpec& spec, const Seed& rng,
                          const Seed& fault_rng, unsigned threads = 1);

bool injection_coin(const Seed& fault_rng, double p_success);

}  // namespace zkfault
