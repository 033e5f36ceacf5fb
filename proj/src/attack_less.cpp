#include "zkfault/attack_less.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "zkfault/error.hpp"
#include "zkfault/parallel.hpp"

namespace zkfault {

const char* to_string(DetectStep s) {
    switch (s) {
        case DetectStep::accepted: return "accepted";
        case DetectStep::step1_node_hidden: return "step1_node_hidden";
        case DetectStep::step2_root_cleared: return "step2_root_cleared";
        case DetectStep::step3_size_mismatch: return "step3_size_mismatch";
        case DetectStep::step3_inconsistent: return "step3_inconsistent";
    }
    return "?";
}

Detection detect_effective_with_digest(const LessPublicKey& pk, const Bytes& msg, const LessSignature& sig,
                                       const Digest& d, size_t node, unsigned threads) {
    const LessParams& p = pk.params;
    const size_t l2 = p.l2();
    if (node >= node_count(l2)) throw BadParams("fault node out of range");
    Detection det;
    det.d = d;
    const ReferenceTree x = compute_seeds_to_publish(d.mask(), l2);
    if (x[node] == 0) {
        det.step = DetectStep::step1_node_hidden;
        return det;
    }
    det.x_faulted = clear_node(x, node);
    if (det.x_faulted[0] == 0) {
        det.step = DetectStep::step2_root_cleared;
        return det;
    }
    if (published_nodes(det.x_faulted).size() != sig.tree_nodes.size()) {
        det.step = DetectStep::step3_size_mismatch;
        return det;
    }
    det.step = DetectStep::step3_inconsistent;
    if (!less_check(pk, msg, sig, d, det.x_faulted, threads)) return det;
    const Field f(p.q);
    for (const auto& pair : extract_pairs(pk, sig, d, det.x_faulted)) {
        auto v = v_bar_from_response(pk.g.at(pair.d_value - 1), pair.response, f);
        if (!v || *v != prepare_digest_input(pk.g0, pair.q_tilde, f).v_bar) return det;
    }
    det.step = DetectStep::accepted;
    return det;
}

Detection detect_effective(const LessPublicKey& pk, const Bytes& msg, const LessSignature& sig, size_t node,
                           unsigned threads) {
    if (sig.cmt.size() != pk.params.cmt_bytes()) {
        Detection det;
        det.step = DetectStep::step3_inconsistent;
        return det;
    }
    return detect_effective_with_digest(pk, msg, sig, less_challenge(pk.params, sig.cmt), node, threads);
}

size_t PartialSecret::known() const {
    return static_cast<size_t>(std::count_if(row.begin(), row.end(), [](int32_t r) { return r >= 0; }));
}

PartialSecret recover_columns_from_pair(const RecoveredPair& pair, const RrefMatrix& g0, const Field& f) {
    const size_t n = pair.q_tilde.n();
    const PartialMonomialMatrix q_bar = prepare_digest_input(g0, pair.q_tilde, f).q_bar;
    const PartialMonomialMatrix& rsp = pair.response;
    if (rsp.n != n || rsp.k() != q_bar.k() || rsp.coeffs.size() != rsp.k())
        throw InconsistentPair("response shape does not match the ephemeral monomial");
    PartialSecret out{std::vector<int32_t>(n, -1), std::vector<uint8_t>(n, 0)};
    std::vector<uint8_t> used(n, 0);
    for (size_t c = 0; c < rsp.k(); ++c) {
        const uint32_t col = q_bar.perm_inj[c], row = rsp.perm_inj[c];
        if (row >= n || used[row] || out.row[col] >= 0 || rsp.coeffs[c] == 0 || rsp.coeffs[c] >= f.q())
            throw InconsistentPair("response columns do not form an injective monomial map");
        used[row] = 1;
        out.row[col] = static_cast<int32_t>(row);
        out.coeff[col] = f.mul(rsp.coeffs[c], f.inv(q_bar.coeffs[c]));
    }
    return out;
}

MonomialMatrix complete_secret(const PartialSecret& partial, const RrefMatrix& g0, const RrefMatrix& g_hat,
                               const Field& f) {
    const size_t n = partial.n(), k = g0.matrix.rows();
    if (g0.matrix.cols() != n || g_hat.matrix.rows() != k || g_hat.matrix.cols() != n)
        throw DimensionMismatch("complete_secret: generator shapes disagree");
    std::vector<size_t> known;
    std::vector<uint8_t> row_used(n, 0);
    for (size_t c = 0; c < n; ++c) {
        if (partial.row[c] < 0) continue;
        const auto r = static_cast<size_t>(partial.row[c]);
        if (r >= n || row_used[r] || partial.coeff[c] == 0) throw NoMatch("partial secret is not a monomial map");
        row_used[r] = 1;
        known.push_back(c);
    }
    if (known.size() != k) throw NoMatch("partial secret must fix exactly k columns");

    // G0 = M * g_hat * T, so column c of G0 equals t_c * M * g_hat[:, row(c)].
    FqMatrix g_prime(k, k), g_star(k, k);
    for (size_t r = 0; r < k; ++r) {
        const size_t c = known[r];
        const uint8_t inv_t = f.inv(partial.coeff[c]);
        for (size_t i = 0; i < k; ++i) {
            g_prime.at(i, r) = f.mul(inv_t, g0.matrix.at(i, c));
            g_star.at(i, r) = g_hat.matrix.at(i, static_cast<size_t>(partial.row[c]));
        }
    }
    FqMatrix m;
    try {
        m = matmul(g_prime, inverse(g_star, f), f);
    } catch (const SingularMatrix&) {
        throw NoMatch("known columns do not span an information set");
    }
    const FqMatrix mg = matmul(m, g_hat.matrix, f);
    const FqMatrix mg_norm = lex_min_col(mg, f);
    const FqMatrix g0_norm = lex_min_col(g0.matrix, f);

    std::map<std::vector<uint8_t>, std::vector<size_t>> by_column;
    for (size_t i = 0; i < n; ++i)
        if (!row_used[i]) by_column[mg_norm.column(i)].push_back(i);

    MonomialMatrix t;
    t.perm.assign(n, 0);
    t.coeffs.assign(n, 0);
    for (size_t c : known) {
        t.perm[c] = static_cast<uint32_t>(partial.row[c]);
        t.coeffs[c] = partial.coeff[c];
    }
    for (size_t c = 0; c < n; ++c) {
        if (partial.row[c] >= 0) continue;
        auto it = by_column.find(g0_norm.column(c));
        if (it == by_column.end()) throw NoMatch("no public column matches a generator column");
        if (it->second.size() != 1) throw AmbiguousMatch("several public columns match a generator column");
        const size_t i = it->second.front();
        if (row_used[i]) throw AmbiguousMatch("public column matched twice");
        row_used[i] = 1;
        size_t r = 0;
        while (g0.matrix.at(r, c) == 0) ++r;
        t.perm[c] = static_cast<uint32_t>(i);
        t.coeffs[c] = f.mul(g0.matrix.at(r, c), f.inv(mg.at(r, i)));
    }
    if (rref_with_pivots(apply_right(g0.matrix, mono_inverse(t, f), f), f) != g_hat)
        throw NoMatch("completed secret fails the public-key relation");
    return t;
}

void AttackState::merge(const AttackState& o) {
    for (const auto& [j, m] : o.recovered) recovered.emplace(j, m);
    faults_used += o.faults_used;
}

std::vector<RecoveredPair> extract_pairs(const LessPublicKey& pk, const LessSignature& sig, const Digest& d,
                                         const ReferenceTree& x_faulted) {
    const LessParams& p = pk.params;
    const Field f(p.q);
    LeafMap leaves = regenerate_with_reference(sig.tree_nodes, sig.salt, x_faulted, p.t);
    std::vector<RecoveredPair> out;
    for (size_t i = 0, k = 0; i < p.t; ++i) {
        if (d.entries[i] == 0) continue;
        if (leaves[i] && k < sig.rsp.size())
            out.push_back({i, sample_monomial(*leaves[i], p.n, f), sig.rsp[k], d.entries[i]});
        ++k;
    }
    return out;
}

std::vector<uint32_t> recover_secret_matrices(const LessPublicKey& pk, const LessSignature& sig,
                                              const Detection& det, AttackState& state) {
    const Field f(pk.params.q);
    std::vector<uint32_t> added;
    for (const auto& pair : extract_pairs(pk, sig, det.d, det.x_faulted)) {
        if (state.recovered.count(pair.d_value)) continue;
        PartialSecret partial = recover_columns_from_pair(pair, pk.g0, f);
        state.recovered.emplace(pair.d_value, complete_secret(partial, pk.g0, pk.g.at(pair.d_value - 1), f));
        added.push_back(pair.d_value);
    }
    ++state.faults_used;
    return added;
}

std::vector<uint32_t> values_under_node(const Digest& d, size_t node, size_t l2) {
    auto [lo, hi] = leaf_range(node, l2);
    std::set<uint32_t> vals;
    for (size_t r = lo; r <= hi && r < d.t; ++r)
        if (d.entries[r] != 0) vals.insert(d.entries[r]);
    return {vals.begin(), vals.end()};
}

const char* to_string(CampaignMode m) { return m == CampaignMode::full ? "full" : "digest_only"; }

CampaignMode campaign_mode_from_string(const std::string& s) {
    if (s == "full") return CampaignMode::full;
    if (s == "digest_only" || s == "digest-only") return CampaignMode::digest_only;
    throw BadParams("unknown campaign mode: " + s);
}

namespace {

struct Experiment {
    size_t injections = 0, injected = 0, effective = 0, detected = 0;
    size_t false_accepts = 0, false_rejects = 0, wrong = 0, sum_x = 0, sum_x_sq = 0;
    std::vector<InjectionRow> rows;
};

Seed experiment_seed(const Seed& master, size_t index) {
    Bytes in = master;
    append_u64le(in, index);
    return xof_expand(in, "campaign", 32);
}

Seed injection_seed(const Seed& exp, size_t injection, std::string_view what) {
    Bytes in = exp;
    append_u64le(in, injection);
    return xof_expand(in, what, 32);
}

void record(Experiment& e, const CampaignConfig& cfg, size_t local, bool injected, FaultClass cls, bool detected,
            size_t added, size_t cumulative, bool done) {
    if (cfg.keep_rows) e.rows.push_back({0, local, injected, cls, detected, added, cumulative, done});
}

Experiment run_digest_only(const CampaignConfig& cfg, const Seed& seed) {
    const LessParams& p = cfg.params;
    const size_t l2 = p.l2();
    XofStream rng(seed, "digest-sim");
    Experiment e;
    std::set<uint32_t> known;
    while (known.size() + 1 < p.s && e.injections < cfg.max_injections) {
        const size_t local = e.injections++;
        const bool inject = cfg.p_success >= 1.0 ||
                            static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53 < cfg.p_success;
        if (!inject) {
            record(e, cfg, local, false, FaultClass::not_injected, false, 0, known.size(), false);
            continue;
        }
        ++e.injected;
        const Digest d = sample_fixed_weight_digest(rng.next_bytes(p.seed_bytes()), p.t, p.w, p.s);
        const FaultClass cls = classify(d, l2, cfg.node, cfg.model);
        size_t added = 0;
        if (cls == FaultClass::effective) {
            ++e.effective;
            ++e.detected;
            const auto vals = values_under_node(d, cfg.node, l2);
            e.sum_x += vals.size();
            e.sum_x_sq += vals.size() * vals.size();
            for (uint32_t v : vals) added += known.insert(v).second;
        }
        record(e, cfg, local, true, cls, cls == FaultClass::effective, added, known.size(), known.size() + 1 >= p.s);
    }
    return e;
}

Experiment run_full(const CampaignConfig& cfg, const Seed& seed) {
    const LessParams& p = cfg.params;
    auto [sk, pk] = less_keygen(p, xof_expand(seed, "campaign-key", p.seed_bytes()),
                                xof_expand(seed, "campaign-gseed", p.seed_bytes()));
    AttackState state{p, {}, 0};
    Experiment e;
    const FaultSpec spec{cfg.model, cfg.node, cfg.p_success};
    while (!state.complete() && e.injections < cfg.max_injections) {
        const size_t local = e.injections++;
        Bytes msg;
        append_u64le(msg, local);
        FaultOutcome o = faulted_sign(sk, msg, spec, injection_seed(seed, local, "campaign-sign"),
                                      injection_seed(seed, local, "campaign-fault"));
        e.injected += o.injected;
        const bool effective = o.cls == FaultClass::effective;
        const Detection det = detect_effective(pk, msg, o.signature, cfg.node);
        if (det.accepted() && !effective) ++e.false_accepts;
        if (!det.accepted() && effective) ++e.false_rejects;
        size_t added = 0;
        if (effective) {
            ++e.effective;
            const size_t x = values_under_node(o.truth.d, cfg.node, p.l2()).size();
            e.sum_x += x;
            e.sum_x_sq += x * x;
        }
        if (det.accepted()) {
            ++e.detected;
            added = recover_secret_matrices(pk, o.signature, det, state).size();
        }
        record(e, cfg, local, o.injected, o.cls, det.accepted(), added, state.recovered.size(), state.complete());
    }
    for (const auto& [j, m] : state.recovered)
        if (m != mono_transpose(sk.q.at(j - 1))) ++e.wrong;
    return e;
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
    if (!(cfg.p_success > 0.0 && cfg.p_success <= 1.0)) throw BadProbability("p_success must lie in (0, 1]");
    if (cfg.trials == 0) throw BadParams("trials must be at least 1");
    cfg.params.validate();
    if (cfg.node >= node_count(cfg.params.l2())) throw BadParams("fault node out of range");
    if (cfg.mode == CampaignMode::full && cfg.model == FaultModel::skip_check)
        throw BadParams("full campaigns support the 1->0 fault models only");

    CampaignReport rep;
    rep.config = cfg;
    std::vector<Experiment> done;
    while (done.size() < cfg.trials || rep.effective < cfg.min_effective) {
        size_t batch;
        if (done.size() < cfg.trials) {
            batch = cfg.trials - done.size();
        } else {
            const double per = done.empty() ? 1.0 : std::max(1e-3, double(rep.effective) / double(done.size()));
            batch = std::max<size_t>(cfg.threads, static_cast<size_t>(double(cfg.min_effective - rep.effective) / per) + 1);
        }
        std::vector<Experiment> results(batch);
        const size_t base = done.size();
        parallel_for(batch, cfg.threads, [&](size_t i) {
            const Seed s = experiment_seed(cfg.master_seed, base + i);
            results[i] = cfg.mode == CampaignMode::full ? run_full(cfg, s) : run_digest_only(cfg, s);
        });
        for (auto& r : results) {
            if (done.size() >= cfg.trials && rep.effective >= cfg.min_effective) break;
            rep.effective += r.effective;
            done.push_back(std::move(r));
        }
    }

    rep.experiments = done.size();
    for (size_t i = 0; i < done.size(); ++i) {
        Experiment& e = done[i];
        for (auto& row : e.rows) {
            row.experiment = i;
            row.injection += rep.injections;
            rep.rows.push_back(row);
        }
        rep.injections += e.injections;
        rep.injected += e.injected;
        rep.detected += e.detected;
        rep.false_accepts += e.false_accepts;
        rep.false_rejects += e.false_rejects;
        rep.wrong_secrets += e.wrong;
        rep.sum_x += e.sum_x;
        rep.sum_x_sq += e.sum_x_sq;
    }
    rep.n_avg = double(rep.effective) / double(rep.experiments);
    rep.mean_injections = double(rep.injections) / double(rep.experiments);
    if (rep.effective > 0) {
        const double n = double(rep.effective);
        rep.mean_x = double(rep.sum_x) / n;
        const double var = std::max(0.0, double(rep.sum_x_sq) / n - rep.mean_x * rep.mean_x);
        rep.stderr_x = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    }
    rep.n_trial = 1.0 / cfg.p_success;
    rep.n_total = rep.n_avg / cfg.p_success;
    return rep;
}

nlohmann::json campaign_report_json(const CampaignReport& r, const std::string& csv_path) {
    const CampaignConfig& c = r.config;
    return {
        {"schema", "zkfault/1"},
        {"scheme", "less"},
        {"params", c.params},
        {"node", c.node},
        {"fault_model", to_string(c.model)},
        {"mode", to_string(c.mode)},
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
        {"n_avg", r.n_avg},
        {"mean_x", r.mean_x},
        {"stderr_x", r.stderr_x},
        {"mean_injections", r.mean_injections},
        {"n_trial", r.n_trial},
        {"n_total", r.n_total},
        {"per_trial_csv_path", csv_path},
    };
}

void write_campaign_csv(std::ostream& out, const std::vector<InjectionRow>& rows) {
    out << "experiment,injection,injected,class,detected,recovered,cumulative,done\n";
    for (const auto& r : rows)
        out << r.experiment << ',' << r.injection << ',' << int(r.injected) << ',' << to_string(r.cls) << ','
            << int(r.detected) << ',' << r.recovered << ',' << r.cumulative << ',' << int(r.done) << '\n';
}

}  // namespace zkfault
