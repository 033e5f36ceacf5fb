#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zkfault/attack_cross.hpp"
#include "zkfault/attack_less.hpp"
#include "zkfault/countermeasures.hpp"
#include "zkfault/cross.hpp"
#include "zkfault/error.hpp"
#include "zkfault/serialize.hpp"
#include "zkfault/stats.hpp"

using namespace zkfault;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PublishedRow {
    const char* set;
    unsigned secrets;
    double mean_x;
    double n_avg;
};

constexpr PublishedRow kPublishedTable[] = {
    {"less-1b", 1, 1.0, 1.0},  {"less-1i", 3, 2.91, 1.05}, {"less-1s", 7, 5.55, 2.09}, {"less-3b", 1, 1.0, 1.0},
    {"less-3s", 2, 2.0, 1.0},  {"less-5b", 1, 1.0, 1.0},   {"less-5s", 2, 2.0, 1.0},
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

Bytes read_message(const std::string& msg, const std::string& msg_hex, const std::string& msg_file) {
    if (!msg_file.empty()) {
        std::ifstream in(msg_file, std::ios::binary);
        if (!in) throw UsageError("cannot open " + msg_file);
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string s = ss.str();
        return Bytes(s.begin(), s.end());
    }
    if (!msg_hex.empty()) return from_hex(msg_hex);
    return Bytes(msg.begin(), msg.end());
}

LessParams resolve_less(const std::string& name) {
    if (std::filesystem::is_regular_file(name)) return read_json(name).get<LessParams>();
    return less_params(name);
}

CrossParams resolve_cross(const std::string& name) {
    if (std::filesystem::is_regular_file(name)) return read_json(name).get<CrossParams>();
    return cross_params(name);
}

Seed parse_seed(const std::string& hex) {
    if (hex.empty()) throw UsageError("a hex seed is required");
    return from_hex(hex);
}

unsigned default_threads() {
    if (const char* env = std::getenv("ZKFAULT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

struct MessageOpts {
    std::string text, hex, file;
    void add(CLI::App* cmd) {
        auto* g = cmd->add_option_group("message");
        g->add_option("--msg", text, "Message as a literal string");
        g->add_option("--msg-hex", hex, "Message as hex");
        g->add_option("--msg-file", file, "Message read from a file");
        g->require_option(0, 1);
    }
    Bytes bytes() const { return read_message(text, hex, file); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zkfault: fault-injection laboratory for LESS and CROSS signatures"};
    app.require_subcommand(1);
    unsigned threads = default_threads();
    app.add_option("--threads", threads, "Worker threads (default: ZKFAULT_THREADS or 1)")->check(CLI::PositiveNumber);

    std::string lk_param;
    std::string lk_pk_path;
    std::string lk_seed_hex;
    std::string lk_sk_path;
    MessageOpts ls_msg;
    std::string ls_seed_hex;
    std::string ls_sig_path;
    std::string ls_sk_path;
    MessageOpts lv_msg;
    std::string lv_pk_path;
    std::string lv_sig_path;
    std::string ck_param;
    std::string ck_pk_path;
    std::string ck_seed_hex;
    std::string ck_sk_path;
    MessageOpts cs_msg;
    std::string cs_seed_hex;
    std::string cs_sig_path;
    std::string cs_sk_path;
    MessageOpts cv_msg;
    std::string cv_pk_path;
    std::string cv_sig_path;
    std::string ar_csv_path;
    std::string ar_out_path;
    std::string ar_param;
    std::string ar_seed_hex;
    std::string se_param;
    std::string st_out_path;
    std::string st_seed_hex;
    std::string cb_param;
    std::string cb_seed_hex;

    // less
    auto* less = app.add_subcommand("less", "LESS key lifecycle")->require_subcommand(1);
    auto* less_keygen_cmd = less->add_subcommand("keygen", "Generate a key pair");
    less_keygen_cmd->add_option("--param", lk_param, "Parameter set name or JSON path")->required();
    less_keygen_cmd->add_option("--seed", lk_seed_hex, "Master seed (hex)")->required();
    less_keygen_cmd->add_option("--sk", lk_sk_path, "Secret key output")->default_val("keys/less_sk.json");
    less_keygen_cmd->add_option("--pk", lk_pk_path, "Public key output")->default_val("keys/less_pk.json");
    auto* less_sign_cmd = less->add_subcommand("sign", "Sign a message");
    less_sign_cmd->add_option("--sk", ls_sk_path, "Secret key")->default_val("keys/less_sk.json");
    less_sign_cmd->add_option("--seed", ls_seed_hex, "Signing randomness (hex)")->required();
    less_sign_cmd->add_option("--out", ls_sig_path, "Signature output")->default_val("sig.json");
    bool countermeasure = false;
    less_sign_cmd->add_flag("--countermeasure", countermeasure, "Respond with the single-pass tree scan");
    ls_msg.add(less_sign_cmd);
    auto* less_verify_cmd = less->add_subcommand("verify", "Verify a signature");
    less_verify_cmd->add_option("--pk", lv_pk_path, "Public key")->default_val("keys/less_pk.json");
    less_verify_cmd->add_option("--sig", lv_sig_path, "Signature")->default_val("sig.json");
    lv_msg.add(less_verify_cmd);

    // cross
    auto* cross = app.add_subcommand("cross", "CROSS key lifecycle")->require_subcommand(1);
    auto* cross_keygen_cmd = cross->add_subcommand("keygen", "Generate a key pair");
    cross_keygen_cmd->add_option("--param", ck_param, "Parameter set name or JSON path")->default_val("cross-desk");
    cross_keygen_cmd->add_option("--seed", ck_seed_hex, "Master seed (hex)")->required();
    cross_keygen_cmd->add_option("--sk", ck_sk_path, "Secret key output")->default_val("keys/cross_sk.json");
    cross_keygen_cmd->add_option("--pk", ck_pk_path, "Public key output")->default_val("keys/cross_pk.json");
    auto* cross_sign_cmd = cross->add_subcommand("sign", "Sign a message");
    cross_sign_cmd->add_option("--sk", cs_sk_path, "Secret key")->default_val("keys/cross_sk.json");
    cross_sign_cmd->add_option("--seed", cs_seed_hex, "Signing randomness (hex)")->required();
    cross_sign_cmd->add_option("--out", cs_sig_path, "Signature output")->default_val("sig.json");
    cs_msg.add(cross_sign_cmd);
    auto* cross_verify_cmd = cross->add_subcommand("verify", "Verify a signature");
    cross_verify_cmd->add_option("--pk", cv_pk_path, "Public key")->default_val("keys/cross_pk.json");
    cross_verify_cmd->add_option("--sig", cv_sig_path, "Signature")->default_val("sig.json");
    cv_msg.add(cross_verify_cmd);

    // attack
    auto* attack = app.add_subcommand("attack", "Fault campaigns")->require_subcommand(1);
    auto* attack_run = attack->add_subcommand("run", "Run a fault campaign and write its report");
    std::string scheme = "less", mode = "digest-only", model = "stuck_at_zero";
    size_t node = 1, trials = 1, min_effective = 0;
    double p_success = 1.0;
    attack_run->add_option("--scheme", scheme)->check(CLI::IsMember({"less", "cross"}));
    attack_run->add_option("--param", ar_param, "Parameter set name or JSON path")->required();
    attack_run->add_option("--fault-node", node, "Reference-tree node to fault")->default_val(1);
    attack_run->add_option("--p-success", p_success, "Per-injection success probability")->default_val(1.0);
    attack_run->add_option("--mode", mode, "full or digest-only (LESS)")->default_val("digest-only");
    attack_run->add_option("--fault-model", model, "skip_store, stuck_at_zero, bit_flip, skip_check (LESS)");
    attack_run->add_option("--trials", trials, "Independent experiments")->check(CLI::PositiveNumber);
    attack_run->add_option("--min-effective", min_effective, "Extend until this many effective faults (LESS)");
    attack_run->add_option("--master-seed", ar_seed_hex, "Campaign master seed (hex)")->required();
    attack_run->add_option("--out", ar_out_path, "Report JSON output")->default_val("report.json");
    attack_run->add_option("--csv", ar_csv_path, "Per-injection CSV output");

    // stats
    auto* stats = app.add_subcommand("stats", "Recovery statistics")->require_subcommand(1);
    auto* stats_expected = stats->add_subcommand("expected", "Closed-form expected recoveries at one node");
    stats_expected->add_option("--param", se_param, "Parameter set name or JSON path")->required();
    stats_expected->add_option("--node", node, "Faulted node")->default_val(1);
    auto* stats_table = stats->add_subcommand("table4", "Closed form, Monte Carlo and published values per set");
    size_t table_effective = 100000;
    stats_table->add_option("--min-effective", table_effective, "Effective faults per set")->default_val(100000);
    stats_table->add_option("--master-seed", st_seed_hex, "Campaign master seed (hex)")->default_val("2a");
    stats_table->add_option("--out", st_out_path, "Report JSON output")->default_val("-");

    // cm
    auto* cm = app.add_subcommand("cm", "Countermeasures")->require_subcommand(1);
    auto* cm_bench = cm->add_subcommand("bench", "Signing cost with and without the single-pass scan");
    size_t iters = 20;
    cm_bench->add_option("--param", cb_param, "Parameter set name or JSON path")->default_val("less-1b");
    cm_bench->add_option("--iters", iters, "Signatures per pipeline")->default_val(20)->check(CLI::PositiveNumber);
    cm_bench->add_option("--master-seed", cb_seed_hex, "Benchmark seed (hex)")->default_val("2a");
    bool cb_control = false;
    cm_bench->add_flag("--control", cb_control, "Run the original pipeline in both slots");
    auto* cm_probe = cm->add_subcommand("probe", "Exhaustive single-fault resistance sweep");
    size_t probe_l = 4;
    uint32_t probe_s = 2;
    cm_probe->add_option("--l", probe_l, "Half the leaf count (2l leaves, t = 2l)")->default_val(4)->check(
        CLI::IsMember({1, 2, 4, 8}));
    cm_probe->add_option("--s", probe_s, "Digest alphabet size")->default_val(2)->check(CLI::Range(2, 8));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*less_keygen_cmd) {
            const LessParams p = resolve_less(lk_param);
            const Seed master = parse_seed(lk_seed_hex);
            auto [sk, pk] = less_keygen(p, xof_expand(master, "cli-key", p.seed_bytes()),
                                        xof_expand(master, "cli-gseed", p.seed_bytes()));
            write_json(lk_sk_path, secret_key_json(sk));
            write_json(lk_pk_path, public_key_json(pk));
            return kOk;
        }
        if (*less_sign_cmd) {
            const LessSecretKey sk = secret_key_from_json(read_json(ls_sk_path));
            const Bytes m = ls_msg.bytes();
            const Seed rng = parse_seed(ls_seed_hex);
            const LessSignature sig = countermeasure ? less_sign_cm(sk, m, rng, threads) : less_sign(sk, m, rng, threads);
            write_json(ls_sig_path, signature_json(sig));
            return kOk;
        }
        if (*less_verify_cmd) {
            const LessPublicKey pk = public_key_from_json(read_json(lv_pk_path));
            LessSignature sig;
            try {
                sig = signature_from_json(read_json(lv_sig_path));
            } catch (const MalformedSignature& e) {
                std::cout << json{{"valid", false}, {"reason", e.what()}}.dump() << "\n";
                return kFailed;
            }
            const bool ok = less_verify(pk, lv_msg.bytes(), sig, threads);
            std::cout << json{{"valid", ok}}.dump() << "\n";
            return ok ? kOk : kFailed;
        }
        if (*cross_keygen_cmd) {
            const CrossParams p = resolve_cross(ck_param);
            const auto keys = cross_keygen(p, parse_seed(ck_seed_hex));
            write_json(ck_sk_path, cross_secret_key_json(keys.sk));
            write_json(ck_pk_path, cross_public_key_json(keys.pk));
            return kOk;
        }
        if (*cross_sign_cmd) {
            const auto keys = cross_keys_from_json(read_json(cs_sk_path));
            const auto sig = cross_sign(keys.sk, keys.pk, cs_msg.bytes(), parse_seed(cs_seed_hex), threads);
            write_json(cs_sig_path, cross_signature_json(sig));
            return kOk;
        }
        if (*cross_verify_cmd) {
            const CrossPublicKey pk = cross_public_key_from_json(read_json(cv_pk_path));
            CrossSignature sig;
            try {
                sig = cross_signature_from_json(read_json(cv_sig_path));
            } catch (const MalformedSignature& e) {
                std::cout << json{{"valid", false}, {"reason", e.what()}}.dump() << "\n";
                return kFailed;
            }
            const bool ok = cross_check_response(pk, cv_msg.bytes(), sig);
            std::cout << json{{"valid", ok}}.dump() << "\n";
            return ok ? kOk : kFailed;
        }
        if (*attack_run) {
            const Seed master = parse_seed(ar_seed_hex);
            if (scheme == "less") {
                CampaignConfig cfg;
                cfg.params = resolve_less(ar_param);
                cfg.node = node;
                cfg.p_success = p_success;
                cfg.model = fault_model_from_string(model);
                cfg.mode = campaign_mode_from_string(mode);
                cfg.trials = trials;
                cfg.min_effective = min_effective;
                cfg.master_seed = master;
                cfg.threads = threads;
                cfg.keep_rows = !ar_csv_path.empty();
                const CampaignReport rep = run_campaign(cfg);
                if (!ar_csv_path.empty()) {
                    std::ostringstream csv;
                    write_campaign_csv(csv, rep.rows);
                    write_text(ar_csv_path, csv.str());
                }
                write_json(ar_out_path, campaign_report_json(rep, ar_csv_path));
                return rep.false_accepts + rep.false_rejects + rep.wrong_secrets == 0 ? kOk : kFailed;
            }
            CrossCampaignConfig cfg;
            cfg.params = resolve_cross(ar_param);
            cfg.node = node;
            cfg.p_success = p_success;
            cfg.trials = trials;
            cfg.master_seed = master;
            cfg.threads = threads;
            cfg.keep_rows = !ar_csv_path.empty();
            const CrossCampaignReport rep = run_cross_campaign(cfg);
            if (!ar_csv_path.empty()) {
                std::ostringstream csv;
                write_campaign_csv(csv, rep.rows);
                write_text(ar_csv_path, csv.str());
            }
            write_json(ar_out_path, cross_campaign_report_json(rep, ar_csv_path));
            return rep.false_accepts + rep.false_rejects + rep.wrong_secrets == 0 ? kOk : kFailed;
        }
        if (*stats_expected) {
            const LessParams p = resolve_less(se_param);
            const NodeContext ctx = node_context(p, node);
            const Rational ex = expected_recovered(ctx);
            const Rational ex_eff = expected_recovered_effective(ctx);
            const double eff = to_double(ex_eff);
            json row = {{"schema", "zkfault/1"},
                        {"param", p.name},
                        {"node", node},
                        {"ell", ctx.ell},
                        {"secrets", p.s - 1},
                        {"expected_x", to_double(ex)},
                        {"expected_x_exact", to_string(ex)},
                        {"expected_x_effective", eff},
                        {"expected_x_effective_exact", to_string(ex_eff)},
                        {"prob_effective", to_double(prob_effective(ctx))},
                        {"n_avg_lower_bound", eff > 0 ? (p.s - 1) / eff : 0.0}};
            std::cout << row.dump(2) << "\n";
            return kOk;
        }
        if (*stats_table) {
            json rows = json::array();
            for (const PublishedRow& pr : kPublishedTable) {
                const LessParams& p = less_params(pr.set);
                const NodeContext ctx = node_context(p, 1);
                CampaignConfig cfg;
                cfg.params = p;
                cfg.node = 1;
                cfg.mode = CampaignMode::digest_only;
                cfg.trials = 1;
                cfg.min_effective = table_effective;
                cfg.master_seed = hash_parts("table4", {parse_seed(st_seed_hex), Bytes(p.name.begin(), p.name.end())}, 16);
                cfg.threads = threads;
                const CampaignReport rep = run_campaign(cfg);
                rows.push_back({{"param", p.name},
                                {"secrets", p.s - 1},
                                {"closed_form_x", to_double(expected_recovered(ctx))},
                                {"closed_form_x_effective", to_double(expected_recovered_effective(ctx))},
                                {"mc_mean_x", rep.mean_x},
                                {"mc_stderr_x", rep.stderr_x},
                                {"mc_n_avg", rep.n_avg},
                                {"mc_effective", rep.effective},
                                {"mc_trials", rep.experiments},
                                {"published_secrets", pr.secrets},
                                {"published_x", pr.mean_x},
                                {"published_n_avg", pr.n_avg}});
            }
            write_json(st_out_path, {{"schema", "zkfault/1"}, {"node", 1}, {"rows", rows}});
            return kOk;
        }
        if (*cm_bench) {
            const BenchResult r = bench_sign(resolve_less(cb_param), iters, parse_seed(cb_seed_hex), threads, cb_control);
            std::cout << json{{"schema", "zkfault/1"},
                              {"param", r.params},
                              {"iters", r.iters},
                              {"control", cb_control},
                              {"unit", r.tsc ? "tsc_cycles" : "nanoseconds"},
                              {"mean_cycles_original", r.mean_cycles_original},
                              {"mean_cycles_cm", r.mean_cycles_cm},
                              {"ratio", r.ratio()}}
                             .dump(2)
                      << "\n";
            return kOk;
        }
        if (*cm_probe) {
            LessParams p = less_params("less-tiny-s2");
            p.name = "probe-l" + std::to_string(probe_l) + "-s" + std::to_string(probe_s);
            p.l = probe_l;
            p.t = 2 * probe_l;
            p.w = std::min(p.w, p.t);
            p.s = probe_s;
            const ProbeReport rep = resistance_probe(p);
            json examples = json::array();
            for (const auto& e : rep.examples)
                examples.push_back({{"pipeline", to_string(e.pipeline)},
                                    {"fault_model", to_string(e.model)},
                                    {"node", e.node},
                                    {"digest", e.d},
                                    {"round", e.round}});
            std::cout << json{{"schema", "zkfault/1"},
                              {"l", probe_l},
                              {"t", p.t},
                              {"s", probe_s},
                              {"digests", rep.digests},
                              {"cases", rep.cases},
                              {"original_revelations", rep.original_revelations},
                              {"countermeasure_violations", rep.cm_revelations},
                              {"resistant", rep.resistant()},
                              {"examples", examples}}
                             .dump(2)
                      << "\n";
            return rep.resistant() ? kOk : kFailed;
        }
    } catch (const UsageError& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return kUsage;
    } catch (const BadParams& e) {
        std::cerr << json{{"error", "bad_params"}, {"message", e.what()}}.dump() << "\n";
        return kUsage;
    } catch (const BadProbability& e) {
        std::cerr << json{{"error", "bad_probability"}, {"message", e.what()}}.dump() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << json{{"error", "data"}, {"message", e.what()}}.dump() << "\n";
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", "json"}, {"message", e.what()}}.dump() << "\n";
        return kUsage;
    }
    return kUsage;
}
