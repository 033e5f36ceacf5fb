#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zkfault {

using Bytes = std::vector<uint8_t>;

std::string to_hex(const Bytes& b);
Bytes from_hex(std::string_view hex);  // throws Error on odd length or bad digit

void append_u32le(Bytes& out, uint32_t v);
void append_u64le(Bytes& out, uint64_t v);
void append(Bytes& out, const Bytes& b);
Bytes concat(std::initializer_list<const Bytes*> parts);

}  // namespace zkfault
