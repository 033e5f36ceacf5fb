#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "oracle.hpp"
#include "zkfault/attack_less.hpp"
#include "zkfault/error.hpp"

using namespace zkfault;

namespace {

Seed seed_of(uint64_t v, size_t len = 16) {
    return xof_expand(Bytes{static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v >> 16)},
                      "test", len);
}

LessParams example_params() {
    LessParams p = less_params("less-tiny-s3");
    p.name = "example";
    p.s = 4;
    return p;
}

Digest example_digest() { return Digest{8, 4, {0, 3, 1, 1, 0, 0, 0, 0}}; }

// G_hat = RREF(G0 (Q^T)^-1) computed densely.
RrefMatrix oracle_public(const RrefMatrix& g0, const MonomialMatrix& q, const Field& f) {
    auto prod = oracle::mul(oracle::to_dense(g0.matrix), oracle::monomial_inverse_transpose(oracle::expand(q), f.q()),
                            f.q());
    return rref_with_pivots(oracle::to_fq(prod), f);
}

}  // namespace

TEST_CASE("pair recovery against the dense oracle") {
    const auto& p = less_params("less-small-s2");
    const Field f(p.q);
    std::mt19937_64 rng(17);
    for (int it = 0; it < 200; ++it) {
        const RrefMatrix g0 = sample_rref_generator(seed_of(it), p.k, p.n, f);
        const MonomialMatrix q = oracle::random_monomial(rng, p.n, p.q);
        const MonomialMatrix qt = oracle::random_monomial(rng, p.n, p.q);
        const DigestInput di = prepare_digest_input(g0, qt, f);
        const RecoveredPair pair{0, qt, mono_mul(mono_transpose(q), di.q_bar, f), 1};
        const PartialSecret part = recover_columns_from_pair(pair, g0, f);
        REQUIRE(part.known() == p.k);
        const auto t_dense = oracle::transpose(oracle::expand(q));
        const auto qbar_dense = oracle::expand(di.q_bar);
        for (size_t c = 0; c < p.n; ++c) {
            bool in_support = false;
            for (size_t j = 0; j < p.k; ++j) in_support |= qbar_dense[c][j] != 0;
            CHECK((part.row[c] >= 0) == in_support);
            if (part.row[c] >= 0) CHECK(t_dense[part.row[c]][c] == part.coeff[c]);
        }
        const MonomialMatrix full = complete_secret(part, g0, oracle_public(g0, q, f), f);
        CHECK(full == mono_transpose(q));
    }
}

TEST_CASE("identity secret") {
    const auto& p = less_params("less-small-s2");
    const Field f(p.q);
    const RrefMatrix g0 = sample_rref_generator(seed_of(5), p.k, p.n, f);
    const MonomialMatrix id = MonomialMatrix::identity(p.n);
    const DigestInput di = prepare_digest_input(g0, id, f);
    const PartialSecret part = recover_columns_from_pair({0, id, di.q_bar, 1}, g0, f);
    for (size_t c = 0; c < p.n; ++c)
        if (part.row[c] >= 0) {
            CHECK(part.row[c] == static_cast<int32_t>(c));
            CHECK(part.coeff[c] == 1);
        }
    CHECK(complete_secret(part, g0, g0, f) == id);
}

TEST_CASE("pair and completion errors") {
    const Field f(7);
    // Columns 2 and 3 are proportional.
    RrefMatrix g0{FqMatrix(2, 4, {1, 0, 1, 2, 0, 1, 1, 2}), {0, 1}};
    PartialSecret part{{0, 1, -1, -1}, {1, 1, 0, 0}};
    CHECK_THROWS_AS(complete_secret(part, g0, g0, f), AmbiguousMatch);

    const auto& p = less_params("less-small-s2");
    const Field fq(p.q);
    const RrefMatrix g = sample_rref_generator(seed_of(6), p.k, p.n, fq);
    const RrefMatrix other = sample_rref_generator(seed_of(7), p.k, p.n, fq);
    const MonomialMatrix id = MonomialMatrix::identity(p.n);
    const DigestInput di = prepare_digest_input(g, id, fq);
    const PartialSecret ok = recover_columns_from_pair({0, id, di.q_bar, 1}, g, fq);
    CHECK_THROWS_AS(complete_secret(ok, g, other, fq), NoMatch);
    CHECK_THROWS_AS(complete_secret(PartialSecret{std::vector<int32_t>(p.n, -1), std::vector<uint8_t>(p.n, 0)}, g, g, fq),
                    NoMatch);

    PartialMonomialMatrix bad = di.q_bar;
    bad.perm_inj[1] = bad.perm_inj[0];
    CHECK_THROWS_AS(recover_columns_from_pair({0, id, bad, 1}, g, fq), InconsistentPair);
    bad = di.q_bar;
    bad.perm_inj.pop_back();
    bad.coeffs.pop_back();
    CHECK_THROWS_AS(recover_columns_from_pair({0, id, bad, 1}, g, fq), InconsistentPair);
}

TEST_CASE("detector on the worked examples") {
    const auto p = example_params();
    auto [sk, pk] = less_keygen(p, seed_of(1), seed_of(2));
    const Bytes msg{'e', 'x'};
    const LessCommitment c = less_commit(sk, msg, seed_of(3));
    const Digest d = example_digest();

    auto ex3 = faulted_respond(sk, c, d, {FaultModel::stuck_at_zero, 3, 1.0}, true);
    auto det3 = detect_effective_with_digest(pk, msg, ex3.signature, d, 3);
    CHECK(det3.step == DetectStep::accepted);

    auto ex2 = faulted_respond(sk, c, d, {FaultModel::stuck_at_zero, 1, 1.0}, true);
    CHECK(detect_effective_with_digest(pk, msg, ex2.signature, d, 1).step == DetectStep::step2_root_cleared);

    auto honest = faulted_respond(sk, c, d, {}, false).signature;
    CHECK(detect_effective_with_digest(pk, msg, honest, d, 3).step == DetectStep::step3_inconsistent);
    CHECK(detect_effective_with_digest(pk, msg, honest, d, 4).step == DetectStep::step3_size_mismatch);
    CHECK(detect_effective_with_digest(pk, msg, honest, d, 2).step == DetectStep::step1_node_hidden);
    CHECK_THROWS_AS(detect_effective_with_digest(pk, msg, honest, d, 15), BadParams);

    // Round 1 carries d = 3, so the fault at node 3 exposes Q_3 only.
    AttackState st{p, {}, 0};
    CHECK(recover_secret_matrices(pk, ex3.signature, det3, st) == std::vector<uint32_t>{3});
    CHECK(st.recovered.at(3) == mono_transpose(sk.q[2]));
    CHECK(recover_secret_matrices(pk, ex3.signature, det3, st).empty());
    CHECK(st.faults_used == 2);
}

TEST_CASE("one fault exposing three distinct values") {
    const auto& p = less_params("less-small-s4");
    auto [sk, pk] = less_keygen(p, seed_of(11), seed_of(12));
    const Bytes msg{'m'};
    const LessCommitment c = less_commit(sk, msg, seed_of(13));
    Digest d{p.t, p.s, std::vector<uint8_t>(p.t, 0)};
    d.entries[0] = 1;
    d.entries[1] = 2;
    d.entries[2] = 3;
    d.entries[10] = 1;
    auto o = faulted_respond(sk, c, d, {FaultModel::skip_store, 1, 1.0}, true);
    REQUIRE(o.cls == FaultClass::effective);
    auto det = detect_effective_with_digest(pk, msg, o.signature, d, 1);
    REQUIRE(det.accepted());
    AttackState st{p, {}, 0};
    CHECK(recover_secret_matrices(pk, o.signature, det, st) == std::vector<uint32_t>{1, 2, 3});
    CHECK(st.complete());
    for (uint32_t j = 1; j <= 3; ++j) CHECK(st.recovered.at(j) == mono_transpose(sk.q[j - 1]));
    CHECK(values_under_node(d, 1, p.l2()) == std::vector<uint32_t>{1, 2, 3});
    CHECK(values_under_node(d, 2, p.l2()) == std::vector<uint32_t>{1});
}

TEST_CASE("exhaustive detector sweep, s = 2") {
    const auto& p = less_params("less-tiny-s2");
    auto [sk, pk] = less_keygen(p, seed_of(21), seed_of(22));
    const Bytes msg{'s'};
    const LessCommitment c = less_commit(sk, msg, seed_of(23));
    size_t accepted = 0;
    for (unsigned m = 0; m < 256; ++m) {
        if (__builtin_popcount(m) != static_cast<int>(p.w)) continue;
        Digest d{p.t, p.s, std::vector<uint8_t>(p.t, 0)};
        for (size_t i = 0; i < p.t; ++i) d.entries[i] = (m >> i) & 1;
        for (size_t node = 0; node < 15; ++node) {
            auto honest = faulted_respond(sk, c, d, {}, false);
            CHECK_FALSE(detect_effective_with_digest(pk, msg, honest.signature, d, node).accepted());
            auto o = faulted_respond(sk, c, d, {FaultModel::stuck_at_zero, node, 1.0}, true);
            const bool acc = detect_effective_with_digest(pk, msg, o.signature, d, node).accepted();
            CHECK(acc == (o.cls == FaultClass::effective));
            accepted += acc;
        }
    }
    CHECK(accepted > 0);
}

TEST_CASE("full campaign recovers exact secrets") {
    CampaignConfig cfg;
    cfg.params = less_params("less-small-s4");
    cfg.mode = CampaignMode::full;
    cfg.trials = 4;
    cfg.master_seed = seed_of(99);
    cfg.keep_rows = true;
    auto rep = run_campaign(cfg);
    CHECK(rep.experiments == 4);
    CHECK(rep.wrong_secrets == 0);
    CHECK(rep.false_accepts == 0);
    CHECK(rep.false_rejects == 0);
    CHECK(rep.detected == rep.effective);
    size_t done = 0;
    for (const auto& r : rep.rows) done += r.done;
    CHECK(done == 4);
    CHECK(rep.rows.size() == rep.injections);
}

TEST_CASE("campaigns are deterministic across thread counts") {
    CampaignConfig cfg;
    cfg.params = less_params("less-1i");
    cfg.trials = 300;
    cfg.min_effective = 500;
    cfg.p_success = 0.5;
    cfg.master_seed = seed_of(7);
    cfg.keep_rows = true;
    auto a = run_campaign(cfg);
    cfg.threads = 3;
    auto b = run_campaign(cfg);
    CHECK(a.effective >= 500);
    std::ostringstream ca, cb;
    write_campaign_csv(ca, a.rows);
    write_campaign_csv(cb, b.rows);
    CHECK(ca.str() == cb.str());
    CHECK(campaign_report_json(a) == campaign_report_json(b));
    CHECK(campaign_report_json(a)["schema"] == "zkfault/1");
    CHECK(a.n_trial == doctest::Approx(2.0));
    CHECK(a.mean_injections == doctest::Approx(2.0 * a.n_avg).epsilon(0.15));
}

TEST_CASE("campaign arguments") {
    CampaignConfig cfg;
    cfg.params = less_params("less-1b");
    cfg.master_seed = seed_of(1);
    cfg.p_success = 0.01;
    cfg.trials = 50;
    auto rep = run_campaign(cfg);
    CHECK(rep.n_trial == doctest::Approx(100.0));
    CHECK(rep.n_avg == doctest::Approx(1.0));
    CHECK(rep.mean_x == doctest::Approx(1.0));
    CHECK(rep.n_total == doctest::Approx(100.0));
    cfg.p_success = 0.0;
    CHECK_THROWS_AS(run_campaign(cfg), BadProbability);
    cfg.p_success = 1.0;
    cfg.trials = 0;
    CHECK_THROWS_AS(run_campaign(cfg), BadParams);
    CHECK(campaign_mode_from_string("digest-only") == CampaignMode::digest_only);
    CHECK_THROWS_AS(campaign_mode_from_string("partial"), BadParams);
}
