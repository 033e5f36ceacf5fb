#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "zkfault/fault.hpp"
#include "zkfault/less.hpp"
#include "zkfault/seedtree.hpp"

namespace zkfault {

struct CostCounters {
    uint64_t n_check = 0;
    uint64_t n_mono = 0;
    uint64_t n_seed = 0;
    bool operator==(const CostCounters& o) const = default;
};

enum class Pipeline { original, countermeasure };
const char* to_string(Pipeline p);

// Read-only digest access that tallies zero tests and value reads per round.
class DigestView {
public:
    explicit DigestView(const Digest& d) : d_(d), zero_tests_(d.t, 0), value_reads_(d.t, 0) {}

    size_t t() const { return d_.t; }
    bool is_zero(size_t i) {
        ++zero_tests_.at(i);
        return d_.entries[i] == 0;
    }
    uint8_t value(size_t i) {
        ++value_reads_.at(i);
        return d_.entries[i];
    }
    const std::vector<uint32_t>& zero_tests() const { return zero_tests_; }
    const std::vector<uint32_t>& value_reads() const { return value_reads_; }

private:
    const Digest& d_;
    std::vector<uint32_t> zero_tests_;
    std::vector<uint32_t> value_reads_;
};

// Flat responder: one entry per round, the leaf seed or the monomial response.
using FlatEntry = std::variant<Seed, PartialMonomialMatrix>;

struct FlatResponse {
    std::vector<FlatEntry> rsp;
    uint64_t size_bits = 0;
};

// Bits of one compressed monomial response: k(ceil(log2 n) + ceil(log2(q-1))).
uint64_t compressed_response_bits(const LessParams& p);
// |cmt| + w * response + (t - w) * lambda
uint64_t flat_signature_bits(const LessParams& p);
// |cmt| + w * response + seeds * lambda
uint64_t tree_signature_bits(const LessParams& p, size_t seeds);

FlatResponse flat_gen_rsp(const LessSecretKey& sk, const LessCommitment& c, DigestView& d);

// Skipped zero test inside the scan: the test of `node` returns the opposite result.
struct ScanFault {
    bool active = false;
    size_t node = 0;
};

struct ScanResult {
    std::vector<size_t> nodes_scan_order;  // emitted seed nodes, leaf-scan order
    std::vector<size_t> response_rounds;   // rounds answered with a monomial response
    CostCounters cost;

    std::vector<size_t> nodes_ascending() const;
};

// Left-to-right leaf scan over all 2l leaves; each step checks one leaf-to-root path.
ScanResult scan_reference_tree(const ReferenceTree& x, size_t t, size_t l2, const ScanFault& fault = {});

struct CmResponse {
    std::vector<PartialMonomialMatrix> rsp;
    TreeNodeList tree_nodes;  // ascending node index
    std::vector<size_t> scan_order;
    CostCounters cost;
};

CmResponse gen_rsp_update(const LessSecretKey& sk, const LessCommitment& c, DigestView& d);
LessSignature less_sign_cm(const LessSecretKey& sk, const Bytes& msg, const Seed& rng, unsigned threads = 1);

// Response-stage tallies of either pipeline for digest d.
CostCounters cost_report(Pipeline pipeline, const Digest& d, size_t l2);
// Closed forms: original 2N + t checks, countermeasure (r + w) * path length; both r seeds, w monomials.
CostCounters cost_formula(Pipeline pipeline, const Digest& d, size_t l2);

struct Revelation {
    Pipeline pipeline = Pipeline::original;
    FaultModel model = FaultModel::stuck_at_zero;
    size_t node = 0;
    std::vector<uint8_t> d;
    size_t round = 0;
};

struct ProbeReport {
    std::string params;
    size_t digests = 0;
    size_t cases = 0;  // digest x node x model, per pipeline
    size_t original_revelations = 0;
    size_t cm_revelations = 0;
    std::vector<Revelation> examples;  // first few of each pipeline

    bool resistant() const { return cm_revelations == 0; }
};

// Rounds whose seed is disclosed and whose monomial response is emitted, under one fault.
std::vector<size_t> revealed_rounds(Pipeline pipeline, const Digest& d, size_t l2, FaultModel model, size_t node);

struct BenchResult {
    std::string params;
    size_t iters = 0;
    double mean_cycles_original = 0;
    double mean_cycles_cm = 0;
    bool tsc = false;  // false: steady-clock nanoseconds stand in for cycles

    double ratio() const { return mean_cycles_cm / mean_cycles_original; }
};

// Full signing with each pipeline, interleaved, identical inputs per iteration.
// control: both slots run the original pipeline, measuring the noise floor of the protocol.
BenchResult bench_sign(const LessParams& p, size_t iters, const Seed& master, unsigned threads = 1,
                       bool control = false);

// Every digest of weight >= 1 in Z_s^t, every node, every fault model, on both pipelines.
ProbeReport resistance_probe(const LessParams& p, size_t max_examples = 8);

}  // namespace zkfault
