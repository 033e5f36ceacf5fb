#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace zkfault {

struct LessParams {
    std::string name;
    size_t n = 0;
    size_t k = 0;
    uint32_t q = 0;
    size_t l = 0;  // the seed tree has 2l leaves
    size_t t = 0;
    size_t w = 0;
    uint32_t s = 0;
    size_t lambda = 128;

    size_t l2() const { return 2 * l; }
    size_t seed_bytes() const { return lambda / 8; }
    size_t cmt_bytes() const { return 2 * lambda / 8; }
    void validate() const;  // throws BadParams
    bool operator==(const LessParams& o) const = default;
};

struct CrossParams {
    std::string name;
    uint32_t p = 127;
    uint32_t z = 7;
    uint32_t g = 2;
    size_t n = 30;
    size_t k = 15;
    size_t t = 32;
    size_t w_reveal = 16;
    size_t lambda = 128;

    size_t l2() const;
    size_t seed_bytes() const { return lambda / 8; }
    size_t hash_bytes() const { return 2 * lambda / 8; }
    void validate() const;
    bool operator==(const CrossParams& o) const = default;
};

const LessParams& less_params(std::string_view name);
std::vector<std::string> less_param_names();
const CrossParams& cross_params(std::string_view name);
std::vector<std::string> cross_param_names();

void to_json(nlohmann::json& j, const LessParams& p);
void from_json(const nlohmann::json& j, LessParams& p);
void to_json(nlohmann::json& j, const CrossParams& p);
void from_json(const nlohmann::json& j, CrossParams& p);

}  // namespace zkfault
