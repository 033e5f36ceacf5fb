#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "zkfault/countermeasures.hpp"
#include "zkfault/error.hpp"

using namespace zkfault;

namespace {

Seed seed_of(uint64_t v, size_t len = 16) {
    return xof_expand(Bytes{static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v >> 16)},
                      "test", len);
}

std::vector<size_t> nonzero_rounds(const Digest& d) {
    std::vector<size_t> out;
    for (size_t i = 0; i < d.t; ++i)
        if (d.entries[i] != 0) out.push_back(i);
    return out;
}

Digest digest_from_mask(uint64_t m, size_t t) {
    Digest d{t, 2, std::vector<uint8_t>(t, 0)};
    for (size_t i = 0; i < t; ++i) d.entries[i] = (m >> i) & 1;
    return d;
}

}  // namespace

TEST_CASE("single-pass scan worked example") {
    const Digest d{8, 4, {0, 0, 0, 0, 0, 2, 0, 0}};
    const auto scan = scan_reference_tree(compute_seeds_to_publish(d.mask(), 8), 8, 8);
    CHECK(scan.nodes_scan_order == std::vector<size_t>{1, 11, 6});
    CHECK(scan.nodes_ascending() == std::vector<size_t>{1, 6, 11});
    CHECK(scan.response_rounds == std::vector<size_t>{5});

    const Digest full{8, 2, std::vector<uint8_t>(8, 1)};
    const auto all = scan_reference_tree(compute_seeds_to_publish(full.mask(), 8), 8, 8);
    CHECK(all.nodes_scan_order.empty());
    CHECK(all.response_rounds.size() == 8);
    CHECK_THROWS_AS(scan_reference_tree(ReferenceTree(7, 0), 8, 8), DimensionMismatch);
}

TEST_CASE("scan equals the two-pass pipeline, exhaustively for 2l in {4, 8, 16}") {
    for (size_t l2 : {4, 8, 16})
        for (size_t t = l2 / 2 + 1; t <= l2; ++t)
            for (uint64_t m = 1; m < (uint64_t{1} << t); ++m) {
                const Digest d = digest_from_mask(m, t);
                const auto x = compute_seeds_to_publish(d.mask(), l2);
                const auto scan = scan_reference_tree(x, t, l2);
                REQUIRE(scan.nodes_ascending() == published_nodes(x));
                REQUIRE(scan.response_rounds == nonzero_rounds(d));
                REQUIRE(cost_report(Pipeline::countermeasure, d, l2) == cost_formula(Pipeline::countermeasure, d, l2));
                REQUIRE(cost_report(Pipeline::original, d, l2) == cost_formula(Pipeline::original, d, l2));
            }
}

TEST_CASE("scan equals the two-pass pipeline on random full-size digests") {
    std::mt19937_64 rng(11);
    for (const char* name : {"less-1b", "less-1i", "less-1s", "less-3b", "less-3s", "less-5b", "less-5s"}) {
        const auto& p = less_params(name);
        for (int it = 0; it < 150; ++it) {
            const Digest d = sample_fixed_weight_digest(seed_of(rng()), p.t, p.w, p.s);
            const auto x = compute_seeds_to_publish(d.mask(), p.l2());
            const auto scan = scan_reference_tree(x, p.t, p.l2());
            CHECK(scan.nodes_ascending() == published_nodes(x));
            CHECK(scan.response_rounds == nonzero_rounds(d));
        }
    }
}

TEST_CASE("gen_rsp_update reproduces the signature") {
    for (const char* name : {"less-tiny-s2", "less-tiny-s3", "less-small-s4"}) {
        const auto& p = less_params(name);
        auto [sk, pk] = less_keygen(p, seed_of(1), seed_of(2));
        for (uint64_t i = 0; i < 20; ++i) {
            const Bytes msg{static_cast<uint8_t>(i)};
            const auto sig = less_sign_cm(sk, msg, seed_of(50 + i));
            CHECK(sig == less_sign(sk, msg, seed_of(50 + i)));
            CHECK(less_verify(pk, msg, sig));
        }
        // Every digest against one commitment.
        const auto c = less_commit(sk, Bytes{1}, seed_of(3));
        std::mt19937_64 rng(5);
        for (int it = 0; it < 200; ++it) {
            const Digest d = sample_fixed_weight_digest(seed_of(rng()), p.t, p.w, p.s);
            DigestView view(d);
            const auto r = gen_rsp_update(sk, c, view);
            const auto honest = less_respond(sk, c, d, compute_seeds_to_publish(d.mask(), p.l2()));
            CHECK(r.rsp == honest.rsp);
            CHECK(wire_seeds(r.tree_nodes) == honest.tree_nodes);
            for (size_t i = 0; i < p.t; ++i) {
                CHECK(view.zero_tests()[i] == 1);
                CHECK(view.value_reads()[i] == (d.entries[i] != 0 ? 1u : 0u));
            }
            CHECK(r.cost == cost_formula(Pipeline::countermeasure, d, p.l2()));
        }
    }
}

TEST_CASE("full-size responses agree") {
    const auto& p = less_params("less-1b");
    auto [sk, pk] = less_keygen(p, seed_of(7), seed_of(8));
    const auto c = less_commit(sk, Bytes{9}, seed_of(10));
    std::mt19937_64 rng(13);
    for (int it = 0; it < 50; ++it) {
        const Digest d = sample_fixed_weight_digest(seed_of(rng()), p.t, p.w, p.s);
        DigestView view(d);
        const auto r = gen_rsp_update(sk, c, view);
        const auto honest = less_respond(sk, c, d, compute_seeds_to_publish(d.mask(), p.l2()));
        CHECK(r.rsp == honest.rsp);
        CHECK(wire_seeds(r.tree_nodes) == honest.tree_nodes);
    }
}

TEST_CASE("cost counters") {
    const Digest ex1{8, 4, {0, 3, 1, 1, 0, 0, 0, 0}};
    CHECK(cost_report(Pipeline::original, ex1, 8) == CostCounters{38, 3, 2});
    CHECK(cost_report(Pipeline::countermeasure, ex1, 8) == CostCounters{5 * path_length(8), 3, 2});
    CHECK(path_length(8) == 4);
    const Digest full{8, 2, std::vector<uint8_t>(8, 1)};
    CHECK(cost_report(Pipeline::countermeasure, full, 8) == CostCounters{8 * path_length(8), 8, 0});
}

TEST_CASE("flat responder") {
    const auto& p = less_params("less-tiny-s3");
    auto [sk, pk] = less_keygen(p, seed_of(20), seed_of(21));
    const auto c = less_commit(sk, Bytes{}, seed_of(22));

    const Digest zero{p.t, p.s, std::vector<uint8_t>(p.t, 0)};
    DigestView zv(zero);
    const auto all_seeds = flat_gen_rsp(sk, c, zv);
    REQUIRE(all_seeds.rsp.size() == p.t);
    for (size_t i = 0; i < p.t; ++i) CHECK(std::get<Seed>(all_seeds.rsp[i]) == c.tree.leaf(i));

    const Digest ones{p.t, p.s, std::vector<uint8_t>(p.t, 2)};
    DigestView ov(ones);
    const auto all_mono = flat_gen_rsp(sk, c, ov);
    for (const auto& e : all_mono.rsp) CHECK(std::holds_alternative<PartialMonomialMatrix>(e));

    const Digest d = less_challenge(p, c.cmt);
    DigestView dv(d);
    const auto flat = flat_gen_rsp(sk, c, dv);
    CHECK(flat.size_bits == flat_signature_bits(p));
    const auto responses = less_responses(sk, c, d);
    size_t j = 0;
    for (size_t i = 0; i < p.t; ++i) {
        CHECK(dv.zero_tests()[i] == 1);
        if (d.entries[i] == 0)
            CHECK(std::get<Seed>(flat.rsp[i]) == c.tree.leaf(i));
        else
            CHECK(std::get<PartialMonomialMatrix>(flat.rsp[i]) == responses[j++]);
    }
}

TEST_CASE("flat signatures are larger than tree signatures") {
    std::mt19937_64 rng(17);
    const auto& p = less_params("less-1b");
    // 126 * (8 + 7) bits per response.
    CHECK(compressed_response_bits(p) == 1890);
    CHECK(flat_signature_bits(p) == 256 + 30 * 1890 + 217 * 128);
    const SeedTree tree = build_seed_tree(seed_of(30), seed_of(31), p.t);
    for (int it = 0; it < 100; ++it) {
        const Digest d = sample_fixed_weight_digest(seed_of(rng()), p.t, p.w, p.s);
        const size_t r = seed_tree_paths(tree, d.mask()).size();
        CHECK(flat_signature_bits(p) > tree_signature_bits(p, r));
    }
}

TEST_CASE("single-fault resistance") {
    const Digest ex3{8, 4, {0, 3, 1, 1, 0, 0, 0, 0}};
    CHECK(revealed_rounds(Pipeline::original, ex3, 8, FaultModel::stuck_at_zero, 3) == std::vector<size_t>{1});
    CHECK(revealed_rounds(Pipeline::countermeasure, ex3, 8, FaultModel::stuck_at_zero, 3).empty());
    CHECK(revealed_rounds(Pipeline::original, ex3, 8, FaultModel::skip_check, 3) == std::vector<size_t>{1});
    CHECK(revealed_rounds(Pipeline::original, ex3, 8, FaultModel::stuck_at_zero, 1).empty());

    for (const char* name : {"less-tiny-s2", "less-tiny-s3"}) {
        const auto rep = resistance_probe(less_params(name));
        INFO(name);
        CHECK(rep.cm_revelations == 0);
        CHECK(rep.original_revelations > 0);
        CHECK(rep.resistant());
        CHECK(rep.cases == rep.digests * 15 * 4);
        for (const auto& e : rep.examples) CHECK(e.pipeline == Pipeline::original);
    }
    CHECK(resistance_probe(less_params("less-tiny-s2")).digests == 255);
    CHECK_THROWS_AS(resistance_probe(less_params("less-1b")), TooLarge);
}

TEST_CASE("signing benchmark") {
    const LessParams& p = less_params("less-tiny-s3");
    for (bool control : {false, true}) {
        const BenchResult b = bench_sign(p, 4, Bytes(16, 7), 1, control);
        CHECK(b.iters == 4);
        CHECK(b.mean_cycles_original > 0);
        CHECK(b.mean_cycles_cm > 0);
        CHECK(b.ratio() > 0);
    }
    CHECK_THROWS_AS(bench_sign(p, 0, Bytes(16, 7)), BadParams);
}
