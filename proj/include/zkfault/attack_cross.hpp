#pragma once

#include <cstddef>
#include <optional>

#include "json.hpp"
#include "zkfault/attack_less.hpp"
#include "zkfault/cross.hpp"
#include "zkfault/fault.hpp"

namespace zkfault {

// Fault on the CROSS reference tree: y[node] forced 0 -> 1 (published), i.e. the hidden-seed flag cleared.
struct CrossFaultSpec {
    size_t node = 1;
    double p_success = 1.0;
};

struct CrossFaultTruth {
    Digest b;
    ReferenceTree x_hidden;
    ReferenceTree x_faulted;
};

struct CrossFaultOutcome {
    bool injected = false;
    FaultClass cls = FaultClass::not_injected;
    CrossSignature signature;
    CrossFaultTruth truth;
};

CrossFaultOutcome cross_faulted_respond(const CrossTranscript& tr, const CrossFaultSpec& spec, bool inject);
CrossFaultOutcome cross_faulted_sign(const CrossSecretKey& sk, const CrossPublicKey& pk, const Bytes& msg,
                                     const CrossFaultSpec& spec, const Seed& rng, const Seed& fault_rng);

struct CrossDetection {
    DetectStep step = DetectStep::step3_inconsistent;
    Digest b;
    ReferenceTree x_faulted;
    std::optional<RestrictedVector> e;
    bool accepted() const { return step == DetectStep::accepted; }
};

CrossDetection detect_effective_cross(const CrossPublicKey& pk, const Bytes& msg, const CrossSignature& sig,
                                      size_t node);
// Throws NoLeakedRound when no round outside J has a derivable seed under node.
RestrictedVector recover_secret_cross(const CrossPublicKey& pk, const CrossSignature& sig, const Digest& b,
                                      const ReferenceTree& x_faulted, size_t node);

struct CrossCampaignConfig {
    CrossParams params;
    size_t node = 1;
    double p_success = 1.0;
    size_t trials = 1;
    Seed master_seed;
    unsigned threads = 1;
    size_t max_injections = 100000;
    bool keep_rows = false;
};

struct CrossCampaignReport {
    CrossCampaignConfig config;
    size_t experiments = 0;
    size_t injections = 0;
    size_t injected = 0;
    size_t effective = 0;
    size_t detected = 0;
    size_t false_accepts = 0;
    size_t false_rejects = 0;
    size_t wrong_secrets = 0;
    size_t recovered = 0;  // experiments ending with the secret known
    double n_avg = 0;
    double mean_injections = 0;
    double n_trial = 0;
    double n_total = 0;
    std::vector<InjectionRow> rows;
};

CrossCampaignReport run_cross_campaign(const CrossCampaignConfig& cfg);
nlohmann::json cross_campaign_report_json(const CrossCampaignReport& r, const std::string& csv_path = "");

}  // namespace zkfault
