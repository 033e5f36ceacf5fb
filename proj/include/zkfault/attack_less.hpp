#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zkfault/fault.hpp"
#include "zkfault/less.hpp"

namespace zkfault {

enum class DetectStep { accepted, step1_node_hidden, step2_root_cleared, step3_size_mismatch, step3_inconsistent };
const char* to_string(DetectStep s);

struct Detection {
    DetectStep step = DetectStep::step3_inconsistent;
    Digest d;
    ReferenceTree x_faulted;
    bool accepted() const { return step == DetectStep::accepted; }
};

// Effective-fault test for a signature whose targeted node is known. The digest is recomputed from cmt.
Detection detect_effective(const LessPublicKey& pk, const Bytes& msg, const LessSignature& sig, size_t node,
                           unsigned threads = 1);
// Same test with the digest supplied, for signatures produced under a forced digest.
Detection detect_effective_with_digest(const LessPublicKey& pk, const Bytes& msg, const LessSignature& sig,
                                       const Digest& d, size_t node, unsigned threads = 1);

struct RecoveredPair {
    size_t round = 0;
    MonomialMatrix q_tilde;
    PartialMonomialMatrix response;  // Q_j^T Qbar
    uint32_t d_value = 0;
};

// Columns of T = Q^T known so far: column c sits in row[c] with coefficient coeff[c]; row[c] < 0 if unknown.
struct PartialSecret {
    std::vector<int32_t> row;
    std::vector<uint8_t> coeff;

    size_t n() const { return row.size(); }
    size_t known() const;
};

// Throws InconsistentPair.
PartialSecret recover_columns_from_pair(const RecoveredPair& pair, const RrefMatrix& g0, const Field& f);
// Completes T from k known columns and the public matrix g_hat = RREF(G0 T^-1).
// Throws AmbiguousMatch or NoMatch.
MonomialMatrix complete_secret(const PartialSecret& partial, const RrefMatrix& g0, const RrefMatrix& g_hat,
                               const Field& f);

struct AttackState {
    LessParams params;
    std::map<uint32_t, MonomialMatrix> recovered;  // j -> Q_j^T
    size_t faults_used = 0;

    bool complete() const { return recovered.size() + 1 >= params.s; }
    void merge(const AttackState& o);
};

// Pairs for the nonzero rounds whose leaf seed is derivable under the faulted reference tree.
std::vector<RecoveredPair> extract_pairs(const LessPublicKey& pk, const LessSignature& sig, const Digest& d,
                                         const ReferenceTree& x_faulted);
// Recovers every not-yet-known secret exposed by an accepted signature; returns the indices added.
std::vector<uint32_t> recover_secret_matrices(const LessPublicKey& pk, const LessSignature& sig,
                                              const Detection& det, AttackState& state);

// Distinct nonzero digest values among the first t rounds under node.
std::vector<uint32_t> values_under_node(const Digest& d, size_t node, size_t l2);

enum class CampaignMode { full, digest_only };
const char* to_string(CampaignMode m);
CampaignMode campaign_mode_from_string(const std::string& s);  // accepts digest_only and digest-only

struct CampaignConfig {
    LessParams params;
    size_t node = 1;
    double p_success = 1.0;
    FaultModel model = FaultModel::stuck_at_zero;
    CampaignMode mode = CampaignMode::digest_only;
    size_t trials = 1;          // independent experiments, each run until all s-1 secrets are known
    size_t min_effective = 0;   // further experiments are appended until this many effective faults
    Seed master_seed;
    unsigned threads = 1;
    size_t max_injections = 1000000;  // per experiment
    bool keep_rows = false;
};

struct InjectionRow {
    size_t experiment = 0;
    size_t injection = 0;  // global index over the campaign
    bool injected = false;
    FaultClass cls = FaultClass::not_injected;
    bool detected = false;
    size_t recovered = 0;   // secrets added by this injection
    size_t cumulative = 0;  // secrets known in this experiment afterwards
    bool done = false;
};

struct CampaignReport {
    CampaignConfig config;
    size_t experiments = 0;
    size_t injections = 0;
    size_t injected = 0;
    size_t effective = 0;
    size_t detected = 0;
    size_t false_accepts = 0;    // detector accepted a non-effective signature
    size_t false_rejects = 0;    // detector rejected an effective signature
    size_t wrong_secrets = 0;    // recovered matrices differing from the keygen secret
    size_t sum_x = 0;
    size_t sum_x_sq = 0;
    double n_avg = 0;            // effective faults per experiment
    double mean_x = 0;           // distinct secrets exposed per effective fault
    double stderr_x = 0;
    double mean_injections = 0;  // injections per experiment
    double n_trial = 0;          // 1/p
    double n_total = 0;          // n_avg/p
    std::vector<InjectionRow> rows;
};

// Throws BadProbability unless 0 < p_success <= 1, BadParams if trials == 0.
CampaignReport run_campaign(const CampaignConfig& cfg);

nlohmann::json campaign_report_json(const CampaignReport& r, const std::string& csv_path = "");
void write_campaign_csv(std::ostream& out, const std::vector<InjectionRow>& rows);

}  // namespace zkfault
