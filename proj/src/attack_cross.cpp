#include "zkfault/attack_cross.hpp"

#include "zkfault/error.hpp"
#include "zkfault/parallel.hpp"

namespace zkfault {

CrossFaultOutcome cross_faulted_respond(const CrossTranscript& tr, const CrossFaultSpec& spec, bool inject) {
    const size_t l2 = tr.tree.l2;
    if (spec.node >= node_count(l2)) throw BadParams("fault node out of range");
    const auto hidden = cross_hidden_mask(tr.b);
    ReferenceTree x = compute_seeds_to_publish(hidden, l2);
    if (!inject) return {false, FaultClass::not_injected, cross_respond(tr, x), {tr.b, x, x}};
    ReferenceTree xf = clear_node(x, spec.node);
    const FaultClass cls = classify(Digest{tr.b.t, 2, hidden}, l2, spec.node, FaultModel::stuck_at_zero);
    return {true, cls, cross_respond(tr, xf), {tr.b, std::move(x), std::move(xf)}};
}

CrossFaultOutcome cross_faulted_sign(const CrossSecretKey& sk, const CrossPublicKey& pk, const Bytes& msg,
                                     const CrossFaultSpec& spec, const Seed& rng, const Seed& fault_rng) {
    if (spec.node >= node_count(pk.params.l2())) throw BadParams("fault node out of range");
    const bool inject = injection_coin(fault_rng, spec.p_success);
    return cross_faulted_respond(cross_commit(sk, pk, msg, rng), spec, inject);
}

RestrictedVector recover_secret_cross(const CrossPublicKey& pk, const CrossSignature& sig, const Digest& b,
                                      const ReferenceTree& x_faulted, size_t node) {
    const CrossParams& p = pk.params;
    const Field f(p.p);
    const LeafMap leaves = regenerate_with_reference(sig.seed_path, sig.salt, x_faulted, p.t);
    auto [lo, hi] = leaf_range(node, p.l2());
    for (size_t i = 0, k = 0; i < p.t; ++i) {
        if (b.entries[i]) continue;
        const size_t fi = k++;
        if (i < lo || i > hi || !leaves[i] || fi >= sig.f_list.size()) continue;
        const CrossRoundSecrets r = cross_expand_round(p, *leaves[i]);
        RestrictedVector e = group_apply(p, sig.f_list[fi].sigma, r.e_prime);
        if (syndrome(pk.h, restricted_value(p, e), f) == pk.s) return e;
    }
    throw NoLeakedRound("no round outside J is derivable under the faulted node");
}

CrossDetection detect_effective_cross(const CrossPublicKey& pk, const Bytes& msg, const CrossSignature& sig,
                                      size_t node) {
    const CrossParams& p = pk.params;
    const size_t l2 = p.l2();
    if (node >= node_count(l2)) throw BadParams("fault node out of range");
    CrossDetection det;
    if (sig.c0.size() != p.hash_bytes() || sig.c1.size() != p.hash_bytes()) return det;
    const auto beta = cross_beta(p, sig.c0, sig.c1, msg, sig.salt);
    det.b = cross_b(p, sig.c0, sig.c1, beta, sig.h, msg, sig.salt);
    const ReferenceTree x = compute_seeds_to_publish(cross_hidden_mask(det.b), l2);
    if (x[node] == 0) {
        det.step = DetectStep::step1_node_hidden;
        return det;
    }
    det.x_faulted = clear_node(x, node);
    if (det.x_faulted[0] == 0) {
        det.step = DetectStep::step2_root_cleared;
        return det;
    }
    if (published_nodes(det.x_faulted).size() != sig.seed_path.size()) {
        det.step = DetectStep::step3_size_mismatch;
        return det;
    }
    if (!cross_check(pk, msg, sig, det.x_faulted)) return det;
    try {
        det.e = recover_secret_cross(pk, sig, det.b, det.x_faulted, node);
    } catch (const NoLeakedRound&) {
        return det;
    }
    det.step = DetectStep::accepted;
    return det;
}

namespace {

struct CrossExperiment {
    size_t injections = 0, injected = 0, effective = 0, detected = 0;
    size_t false_accepts = 0, false_rejects = 0, wrong = 0;
    bool recovered = false;
    std::vector<InjectionRow> rows;
};

Seed derive(const Seed& base, size_t index, std::string_view what) {
    Bytes in = base;
    append_u64le(in, index);
    return xof_expand(in, what, 32);
}

CrossExperiment run_cross_experiment(const CrossCampaignConfig& cfg, const Seed& seed) {
    const CrossParams& p = cfg.params;
    const CrossKeyPair keys = cross_keygen(p, xof_expand(seed, "campaign-key", p.seed_bytes()));
    CrossExperiment e;
    while (!e.recovered && e.injections < cfg.max_injections) {
        const size_t local = e.injections++;
        Bytes msg;
        append_u64le(msg, local);
        CrossFaultOutcome o = cross_faulted_sign(keys.sk, keys.pk, msg, {cfg.node, cfg.p_success},
                                                 derive(seed, local, "campaign-sign"),
                                                 derive(seed, local, "campaign-fault"));
        e.injected += o.injected;
        const bool effective = o.cls == FaultClass::effective;
        e.effective += effective;
        const CrossDetection det = detect_effective_cross(keys.pk, msg, o.signature, cfg.node);
        if (det.accepted() && !effective) ++e.false_accepts;
        if (!det.accepted() && effective) ++e.false_rejects;
        if (det.accepted()) {
            ++e.detected;
            e.recovered = true;
            if (*det.e != keys.sk.e) ++e.wrong;
        }
        if (cfg.keep_rows)
            e.rows.push_back({0, local, o.injected, o.cls, det.accepted(), size_t(det.accepted()), size_t(e.recovered),
                              e.recovered});
    }
    return e;
}

}  // namespace

CrossCampaignReport run_cross_campaign(const CrossCampaignConfig& cfg) {
    if (!(cfg.p_success > 0.0 && cfg.p_success <= 1.0)) throw BadProbability("p_success must lie in (0, 1]");
    if (cfg.trials == 0) throw BadParams("trials must be at least 1");
    cfg.params.validate();
    if (cfg.node >= node_count(cfg.params.l2())) throw BadParams("fault node out of range");
    std::vector<CrossExperiment> results(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](size_t i) {
        results[i] = run_cross_experiment(cfg, derive(cfg.master_seed, i, "campaign"));
    });
    CrossCampaignReport rep;
    rep.config = cfg;
    rep.experiments = cfg.trials;
    for (size_t i = 0; i < results.size(); ++i) {
        auto& e = results[i];
        for (auto row : e.rows) {
            row.experiment = i;
            row.injection += rep.injections;
            rep.rows.push_back(row);
        }
        rep.injections += e.injections;
        rep.injected += e.injected;
        rep.effective += e.effective;
        rep.detected += e.detected;
        rep.false_accepts += e.false_accepts;
        rep.false_rejects += e.false_rejects;
        rep.wrong_secrets += e.wrong;
        rep.recovered += e.recovered;
    }
    rep.n_avg = double(rep.effective) / double(rep.experiments);
    rep.mean_injections = double(rep.injections) / double(rep.experiments);
    rep.n_trial = 1.0 / cfg.p_success;
    rep.n_total = rep.n_avg / cfg.p_success;
    return rep;
}

nlohmann::json cross_campaign_report_json(const CrossCampaignReport& r, const std::string& csv_path) {
    const auto& c = r.config;
    return {
        {"schema", "zkfault/1"},
        {"scheme", "cross"},
        {"params", c.params},
        {"node", c.node},
        {"fault_model", "stuck_at_one"},
        {"mode", "full"},
        {"p_success", c.p_success},
        {"master_seed", to_hex(c.master_seed)},
        {"trials", r.experiments},
        {"injections", r.injections},
        {"injected", r.injected},
        {"effective", r.effective},
        {"detected", r.detected},
        {"false_accepts", r.false_accepts},
        {"false_rejects", r.false_rejects},
        {"wrong_secrets", r.wrong_secrets},
        {"recovered", r.recovered},
        {"n_avg", r.n_avg},
        {"mean_x", r.detected ? 1.0 : 0.0},
        {"mean_injections", r.mean_injections},
        {"n_trial", r.n_trial},
        {"n_total", r.n_total},
        {"per_trial_csv_path", csv_path},
    };
}

}  // namespace zkfault
