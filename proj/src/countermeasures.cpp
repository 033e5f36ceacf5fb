#include "zkfault/countermeasures.hpp"

#include <algorithm>
#include <chrono>

#if defined(__x86_64__) || defined(__i386__)
#include <x86intrin.h>
#endif

#include "zkfault/error.hpp"

namespace zkfault {

namespace {

uint64_t timestamp(bool& tsc) {
#if defined(__x86_64__) || defined(__i386__)
    tsc = true;
    return __rdtsc();
#else
    tsc = false;
    return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                     std::chrono::steady_clock::now().time_since_epoch())
                                     .count());
#endif
}

uint64_t ceil_log2(uint64_t v) {
    uint64_t bits = 0;
    while ((uint64_t{1} << bits) < v) ++bits;
    return bits;
}

std::vector<uint8_t> covered_rounds(const std::vector<size_t>& nodes, size_t t, size_t l2) {
    std::vector<uint8_t> cov(t, 0);
    for (size_t node : nodes) {
        const auto [lo, hi] = leaf_range(node, l2);
        for (size_t r = lo; r <= hi && r < t; ++r) cov[r] = 1;
    }
    return cov;
}

PartialMonomialMatrix respond_round(const LessSecretKey& sk, const LessCommitment& c, size_t round, uint8_t v,
                                    const Field& f) {
    return mono_mul(mono_transpose(sk.q.at(v - 1)), c.q_bar[round], f);
}

}  // namespace

const char* to_string(Pipeline p) { return p == Pipeline::original ? "original" : "countermeasure"; }

uint64_t compressed_response_bits(const LessParams& p) {
    return p.k * (ceil_log2(p.n) + ceil_log2(p.q - 1));
}

uint64_t flat_signature_bits(const LessParams& p) { return tree_signature_bits(p, p.t - p.w); }

uint64_t tree_signature_bits(const LessParams& p, size_t seeds) {
    return 8 * p.cmt_bytes() + p.w * compressed_response_bits(p) + seeds * p.lambda;
}

FlatResponse flat_gen_rsp(const LessSecretKey& sk, const LessCommitment& c, DigestView& d) {
    const Field f(sk.params.q);
    FlatResponse out;
    out.rsp.reserve(d.t());
    out.size_bits = 8 * sk.params.cmt_bytes();
    for (size_t i = 0; i < d.t(); ++i) {
        if (d.is_zero(i)) {
            out.rsp.emplace_back(c.tree.leaf(i));
            out.size_bits += sk.params.lambda;
        } else {
            out.rsp.emplace_back(respond_round(sk, c, i, d.value(i), f));
            out.size_bits += compressed_response_bits(sk.params);
        }
    }
    return out;
}

std::vector<size_t> ScanResult::nodes_ascending() const {
    std::vector<size_t> v = nodes_scan_order;
    std::sort(v.begin(), v.end());
    return v;
}

ScanResult scan_reference_tree(const ReferenceTree& x, size_t t, size_t l2, const ScanFault& fault) {
    if (x.size() != node_count(l2)) throw DimensionMismatch("reference tree size");
    ScanResult out;
    size_t i = 0;
    while (i < l2) {
        size_t c = leaf_node(l2, i), top = 0, h = 0, hp = 0;
        for (;;) {
            ++out.cost.n_check;
            bool zero = x[c] == 0;
            if (fault.active && c == fault.node) zero = !zero;
            if (c == 0) break;
            if (zero) {
                top = c;
                hp = h + 1;
            }
            c = parent(c);
            ++h;
        }
        if (hp == 0) {
            if (i < t) {
                out.response_rounds.push_back(i);
                ++out.cost.n_mono;
            }
            i += 1;
        } else {
            out.nodes_scan_order.push_back(top);
            ++out.cost.n_seed;
            i += size_t{1} << (hp - 1);
        }
    }
    return out;
}

CmResponse gen_rsp_update(const LessSecretKey& sk, const LessCommitment& c, DigestView& d) {
    const Field f(sk.params.q);
    const size_t l2 = sk.params.l2();
    std::vector<uint8_t> mask(d.t());
    for (size_t i = 0; i < d.t(); ++i) mask[i] = d.is_zero(i) ? 0 : 1;
    const ScanResult scan = scan_reference_tree(compute_seeds_to_publish(mask, l2), d.t(), l2);
    CmResponse out;
    out.scan_order = scan.nodes_scan_order;
    out.cost = scan.cost;
    out.rsp.reserve(scan.response_rounds.size());
    for (size_t r : scan.response_rounds) out.rsp.push_back(respond_round(sk, c, r, d.value(r), f));
    out.tree_nodes = select_nodes(c.tree, scan.nodes_ascending());
    return out;
}

LessSignature less_sign_cm(const LessSecretKey& sk, const Bytes& msg, const Seed& rng, unsigned threads) {
    LessCommitment c = less_commit(sk, msg, rng, threads);
    const Digest d = less_challenge(sk.params, c.cmt);
    DigestView view(d);
    CmResponse r = gen_rsp_update(sk, c, view);
    return {c.tree.salt, c.cmt, wire_seeds(r.tree_nodes), std::move(r.rsp)};
}

CostCounters cost_report(Pipeline pipeline, const Digest& d, size_t l2) {
    const ReferenceTree x = compute_seeds_to_publish(d.mask(), l2);
    if (pipeline == Pipeline::countermeasure) return scan_reference_tree(x, d.t, l2).cost;
    CostCounters cost;
    DigestView view(d);
    for (size_t i = 0; i < x.size(); ++i) {
        cost.n_check += 2;
        if (x[i] == 0 && x[parent(i)] == 1) ++cost.n_seed;
    }
    for (size_t i = 0; i < d.t; ++i) {
        ++cost.n_check;
        if (!view.is_zero(i)) ++cost.n_mono;
    }
    return cost;
}

CostCounters cost_formula(Pipeline pipeline, const Digest& d, size_t l2) {
    const uint64_t r = published_nodes(compute_seeds_to_publish(d.mask(), l2)).size();
    const uint64_t w = d.weight();
    if (pipeline == Pipeline::original) return {2 * node_count(l2) + d.t, w, r};
    return {(r + w) * path_length(l2), w, r};
}

std::vector<size_t> revealed_rounds(Pipeline pipeline, const Digest& d, size_t l2, FaultModel model, size_t node) {
    if (node >= node_count(l2)) throw BadParams("fault node out of range");
    const auto f = d.mask();
    std::vector<size_t> disclosed, answered;
    if (pipeline == Pipeline::original) {
        disclosed = apply_fault(f, l2, model, node).published;
        for (size_t i = 0; i < d.t; ++i)
            if (d.entries[i] != 0) answered.push_back(i);
    } else {
        ScanResult scan;
        if (model == FaultModel::skip_check)
            scan = scan_reference_tree(compute_seeds_to_publish(f, l2), d.t, l2, {true, node});
        else
            scan = scan_reference_tree(apply_fault(f, l2, model, node).x, d.t, l2);
        disclosed = scan.nodes_scan_order;
        answered = scan.response_rounds;
    }
    const auto cov = covered_rounds(disclosed, d.t, l2);
    std::vector<size_t> out;
    for (size_t r : answered)
        if (cov[r]) out.push_back(r);
    return out;
}

ProbeReport resistance_probe(const LessParams& p, size_t max_examples) {
    const size_t l2 = p.l2();
    if (l2 > 16) throw TooLarge("resistance probe needs 2l <= 16");
    uint64_t total = 1;
    for (size_t i = 0; i < p.t; ++i) {
        total *= p.s;
        if (total > (uint64_t{1} << 24)) throw TooLarge("too many digests for an exhaustive probe");
    }
    const FaultModel models[] = {FaultModel::skip_store, FaultModel::stuck_at_zero, FaultModel::bit_flip,
                                 FaultModel::skip_check};
    ProbeReport rep;
    rep.params = p.name;
    size_t orig_examples = 0, cm_examples = 0;
    Digest d{p.t, p.s, std::vector<uint8_t>(p.t, 0)};
    for (uint64_t code = 1; code < total; ++code) {
        uint64_t v = code;
        for (size_t i = 0; i < p.t; ++i) {
            d.entries[i] = static_cast<uint8_t>(v % p.s);
            v /= p.s;
        }
        ++rep.digests;
        for (size_t node = 0; node < node_count(l2); ++node)
            for (FaultModel m : models) {
                ++rep.cases;
                for (Pipeline pl : {Pipeline::original, Pipeline::countermeasure}) {
                    const auto rounds = revealed_rounds(pl, d, l2, m, node);
                    if (rounds.empty()) continue;
                    size_t& seen = pl == Pipeline::original ? orig_examples : cm_examples;
                    (pl == Pipeline::original ? rep.original_revelations : rep.cm_revelations) += 1;
                    if (seen < max_examples) {
                        ++seen;
                        rep.examples.push_back({pl, m, node, d.entries, rounds.front()});
                    }
                }
            }
    }
    return rep;
}

BenchResult bench_sign(const LessParams& p, size_t iters, const Seed& master, unsigned threads, bool control) {
    if (iters == 0) throw BadParams("iters must be positive");
    auto [sk, pk] = less_keygen(p, xof_expand(master, "bench-key", p.seed_bytes()),
                                xof_expand(master, "bench-gseed", p.seed_bytes()));
    BenchResult res;
    res.params = p.name;
    res.iters = iters;
    double sum_orig = 0, sum_cm = 0;
    const auto run = [&](bool cm, const Bytes& msg, const Seed& rng) {
        const uint64_t t0 = timestamp(res.tsc);
        const LessSignature sig = cm && !control ? less_sign_cm(sk, msg, rng, threads) : less_sign(sk, msg, rng, threads);
        const uint64_t t1 = timestamp(res.tsc);
        if (sig.rsp.size() != p.w) throw Error("benchmark signature malformed");
        return static_cast<double>(t1 - t0);
    };
    run(false, Bytes{}, master);
    run(true, Bytes{}, master);
    for (size_t i = 0; i < iters; ++i) {
        Bytes msg;
        append_u64le(msg, i);
        const Seed r = hash_parts("bench-sign", {master, msg}, p.seed_bytes());
        // Alternate which pipeline runs first to cancel drift.
        if (i % 2 == 0) {
            sum_orig += run(false, msg, r);
            sum_cm += run(true, msg, r);
        } else {
            sum_cm += run(true, msg, r);
            sum_orig += run(false, msg, r);
        }
    }
    res.mean_cycles_original = sum_orig / static_cast<double>(iters);
    res.mean_cycles_cm = sum_cm / static_cast<double>(iters);
    return res;
}

}  // namespace zkfault
