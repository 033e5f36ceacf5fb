#pragma once

#include <cstddef>
#include <cstdint>

// Row kernels over F_q with q < 256, residues stored as bytes.
namespace zkfault::kernels {

enum class Isa { scalar, avx2 };

// dst[i] = (dst[i] + c * src[i]) mod q
using AxpyFn = void (*)(uint8_t* dst, const uint8_t* src, size_t len, uint32_t c, uint32_t q);
// dst[i] = (c * dst[i]) mod q
using ScaleFn = void (*)(uint8_t* dst, size_t len, uint32_t c, uint32_t q);

void axpy_scalar(uint8_t* dst, const uint8_t* src, size_t len, uint32_t c, uint32_t q);
void scale_scalar(uint8_t* dst, size_t len, uint32_t c, uint32_t q);

#if defined(__x86_64__) || defined(__i386__)
void axpy_avx2(uint8_t* dst, const uint8_t* src, size_t len, uint32_t c, uint32_t q);
void scale_avx2(uint8_t* dst, size_t len, uint32_t c, uint32_t q);
#endif

bool cpu_has_avx2();

// Selected once at startup; overridable for equivalence tests and benchmarks.
Isa active_isa();
void set_isa(Isa isa);  // falls back to scalar when the CPU lacks the extension
const char* isa_name(Isa isa);

void axpy(uint8_t* dst, const uint8_t* src, size_t len, uint32_t c, uint32_t q);
void scale(uint8_t* dst, size_t len, uint32_t c, uint32_t q);

}  // namespace zkfault::kernels
