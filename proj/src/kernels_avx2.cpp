#include "zkfault/kernels.hpp"

#include <immintrin.h>

namespace zkfault::kernels {

namespace {

// Barrett reduction of 16-bit lanes, m = floor(2^16 / q); result in [0, q).
inline __m256i reduce16(__m256i x, __m256i qv, __m256i mv) {
    __m256i qhat = _mm256_mulhi_epu16(x, mv);
    __m256i r = _mm256_sub_epi16(x, _mm256_mullo_epi16(qhat, qv));
    return _mm256_min_epu16(r, _mm256_sub_epi16(r, qv));
}

inline __m128i narrow16(__m256i r) {
    return _mm_packus_epi16(_mm256_castsi256_si128(r), _mm256_extracti128_si256(r, 1));
}

}  // namespace

void axpy_avx2(uint8_t* dst, const uint8_t* src, size_t len, uint32_t c, uint32_t q) {
    const __m256i qv = _mm256_set1_epi16(static_cast<short>(q));
    const __m256i mv = _mm256_set1_epi16(static_cast<short>(65536u / q));
    const __m256i cv = _mm256_set1_epi16(static_cast<short>(c));
    size_t i = 0;
    for (; i + 16 <= len; i += 16) {
        __m256i d = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i)));
        __m256i s = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i)));
        __m256i x = _mm256_add_epi16(d, _mm256_mullo_epi16(s, cv));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), narrow16(reduce16(x, qv, mv)));
    }
    axpy_scalar(dst + i, src + i, len - i, c, q);
}

void scale_avx2(uint8_t* dst, size_t len, uint32_t c, uint32_t q) {
    const __m256i qv = _mm256_set1_epi16(static_cast<short>(q));
    const __m256i mv = _mm256_set1_epi16(static_cast<short>(65536u / q));
    const __m256i cv = _mm256_set1_epi16(static_cast<short>(c));
    size_t i = 0;
    for (; i + 16 <= len; i += 16) {
        __m256i d = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i)));
        __m256i x = _mm256_mullo_epi16(d, cv);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), narrow16(reduce16(x, qv, mv)));
    }
    scale_scalar(dst + i, len - i, c, q);
}

}  // namespace zkfault::kernels
