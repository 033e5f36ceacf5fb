#include "zkfault/params.hpp"


#include "zkfault/error.hpp"
#include "zkfault/gf.hpp"
#include "zkfault/seedtree.hpp"

namespace zkfault {

namespace {

const std::vector<LessParams>& less_registry() {
    static const std::vector<LessParams> r = {
        {"less-1b", 252, 126, 127, 128, 247, 30, 2, 128},
        {"less-1i", 252, 126, 127, 128, 244, 20, 4, 128},
        {"less-1s", 252, 126, 127, 128, 198, 17, 8, 128},
        {"less-3b", 400, 200, 127, 512, 759, 33, 2, 192},
        {"less-3s", 400, 200, 127, 512, 895, 26, 3, 192},
        {"less-5b", 548, 274, 127, 1024, 1352, 40, 2, 256},
        {"less-5s", 548, 274, 127, 512, 907, 37, 3, 256},
        {"less-small-s2", 10, 5, 7, 8, 16, 4, 2, 128},
        {"less-small-s4", 10, 5, 7, 8, 16, 4, 4, 128},
        {"less-tiny-s2", 10, 5, 7, 4, 8, 3, 2, 128},
        {"less-tiny-s3", 10, 5, 7, 4, 8, 3, 3, 128},
    };
    return r;
}

const std::vector<CrossParams>& cross_registry() {
    static const std::vector<CrossParams> r = {
        {"cross-desk", 127, 7, 2, 30, 15, 32, 16, 128},
        {"cross-tiny", 127, 7, 2, 12, 6, 8, 4, 128},
    };
    return r;
}

uint64_t powmod(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    for (b %= m; e; e >>= 1, b = b * b % m)
        if (e & 1) r = r * b % m;
    return r;
}

}  // namespace

void LessParams::validate() const {
    if (!is_prime(q) || q >= 256) throw BadParams(name + ": q must be a prime below 256");
    if (k == 0 || k >= n) throw BadParams(name + ": need 0 < k < n");
    if (t == 0 || w == 0 || w > t) throw BadParams(name + ": need 1 <= w <= t");
    if (s < 2) throw BadParams(name + ": need s >= 2");
    if (l2() != leaf_count_for(t)) throw BadParams(name + ": 2l must equal 2^ceil(log2 t)");
    if (lambda == 0 || lambda % 8) throw BadParams(name + ": lambda must be a positive multiple of 8");
}

size_t CrossParams::l2() const { return leaf_count_for(t); }

void CrossParams::validate() const {
    if (!is_prime(p) || p >= 256) throw BadParams(name + ": p must be a prime below 256");
    if (z < 2 || (p - 1) % z) throw BadParams(name + ": z must divide p-1");
    if (powmod(g, z, p) != 1) throw BadParams(name + ": g^z must be 1");
    for (uint32_t d = 1; d < z; ++d)
        if (z % d == 0 && powmod(g, d, p) == 1) throw BadParams(name + ": g must have order z");
    if (k == 0 || k >= n) throw BadParams(name + ": need 0 < k < n");
    if (t == 0 || w_reveal == 0 || w_reveal >= t) throw BadParams(name + ": need 0 < w_reveal < t");
    if (lambda == 0 || lambda % 8) throw BadParams(name + ": lambda must be a positive multiple of 8");
}

const LessParams& less_params(std::string_view name) {
    for (const auto& p : less_registry())
        if (p.name == name) return p;
    throw BadParams("unknown LESS parameter set: " + std::string(name));
}

std::vector<std::string> less_param_names() {
    std::vector<std::string> out;
    for (const auto& p : less_registry()) out.push_back(p.name);
    return out;
}

const CrossParams& cross_params(std::string_view name) {
    for (const auto& p : cross_registry())
        if (p.name == name) return p;
    throw BadParams("unknown CROSS parameter set: " + std::string(name));
}

std::vector<std::string> cross_param_names() {
    std::vector<std::string> out;
    for (const auto& p : cross_registry()) out.push_back(p.name);
    return out;
}

void to_json(nlohmann::json& j, const LessParams& p) {
    j = {{"scheme", "less"}, {"name", p.name}, {"n", p.n}, {"k", p.k}, {"q", p.q}, {"l", p.l},
         {"t", p.t},         {"w", p.w},       {"s", p.s}, {"lambda", p.lambda}};
}

void from_json(const nlohmann::json& j, LessParams& p) {
    p.name = j.value("name", std::string("custom"));
    j.at("n").get_to(p.n);
    j.at("k").get_to(p.k);
    j.at("q").get_to(p.q);
    j.at("t").get_to(p.t);
    j.at("w").get_to(p.w);
    j.at("s").get_to(p.s);
    p.l = j.contains("l") ? j.at("l").get<size_t>() : leaf_count_for(p.t) / 2;
    p.lambda = j.value("lambda", size_t{128});
    p.validate();
}

void to_json(nlohmann::json& j, const CrossParams& p) {
    j = {{"scheme", "cross"}, {"name", p.name}, {"p", p.p}, {"z", p.z}, {"g", p.g},
         {"n", p.n},          {"k", p.k},       {"t", p.t}, {"w_reveal", p.w_reveal}, {"lambda", p.lambda}};
}

void from_json(const nlohmann::json& j, CrossParams& p) {
    p.name = j.value("name", std::string("custom"));
    j.at("p").get_to(p.p);
    j.at("z").get_to(p.z);
    j.at("g").get_to(p.g);
    j.at("n").get_to(p.n);
    j.at("k").get_to(p.k);
    j.at("t").get_to(p.t);
    j.at("w_reveal").get_to(p.w_reveal);
    p.lambda = j.value("lambda", size_t{128});
    p.validate();
}

}  // namespace zkfault
