#include "zkfault/kernels.hpp"

namespace zkfault::kernels {

void axpy_scalar(uint8_t* dst, const uint8_t* src, size_t len, uint32_t c, uint32_t q) {
    for (size_t i = 0; i < len; ++i)
        dst[i] = static_cast<uint8_t>((dst[i] + c * src[i]) % q);
}

void scale_scalar(uint8_t* dst, size_t len, uint32_t c, uint32_t q) {
    for (size_t i = 0; i < len; ++i)
        dst[i] = static_cast<uint8_t>((c * dst[i]) % q);
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

struct Dispatch {
    AxpyFn axpy;
    ScaleFn scale;
    Isa isa;
};

Dispatch make_dispatch(Isa want) {
#if defined(__x86_64__) || defined(__i386__)
    if (want == Isa::avx2 && cpu_has_avx2())
        return {axpy_avx2, scale_avx2, Isa::avx2};
#endif
    (void)want;
    return {axpy_scalar, scale_scalar, Isa::scalar};
}

Dispatch& table() {
    static Dispatch d = make_dispatch(Isa::avx2);
    return d;
}

}  // namespace

Isa active_isa() { return table().isa; }

void set_isa(Isa isa) { table() = make_dispatch(isa); }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void axpy(uint8_t* dst, const uint8_t* src, size_t len, uint32_t c, uint32_t q) {
    table().axpy(dst, src, len, c, q);
}

void scale(uint8_t* dst, size_t len, uint32_t c, uint32_t q) { table().scale(dst, len, c, q); }

}  // namespace zkfault::kernels
