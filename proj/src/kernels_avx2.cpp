#include "steiner/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace steiner::kernels {

namespace {

// Reduce an exact integer-valued vector t (each lane < 2^53) mod p.
// floor(t * (1/p)) is off by at most one, fixed up with two blends.
__attribute__((target("avx2,fma"), always_inline)) inline __m256d
reduce_lanes(__m256d t, __m256d pd, __m256d invp) {
    __m256d q = _mm256_floor_pd(_mm256_mul_pd(t, invp));
    __m256d x = _mm256_fnmadd_pd(q, pd, t); // t - q*p, exact
    __m256d neg = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
    x = _mm256_blendv_pd(x, _mm256_add_pd(x, pd), neg);
    __m256d big = _mm256_cmp_pd(x, pd, _CMP_GE_OQ);
    x = _mm256_blendv_pd(x, _mm256_sub_pd(x, pd), big);
    return x;
}

} // namespace

__attribute__((target("avx2,fma")))
void axpy_mod_avx2(uint32_t* r, const uint32_t* s, uint32_t c, size_t n, uint32_t p) {
    const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
    const __m256d invp = _mm256_set1_pd(1.0 / static_cast<double>(p));
    const __m256d cd = _mm256_set1_pd(static_cast<double>(c % p));
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i s32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(s + i));
        __m128i r32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(r + i));
        __m256d sd = _mm256_cvtepi32_pd(s32);
        __m256d rd = _mm256_cvtepi32_pd(r32);
        __m256d t = _mm256_fmadd_pd(cd, sd, rd); // < 2^52 + 2^26, exact
        __m256d x = reduce_lanes(t, pd, invp);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(r + i), _mm256_cvtpd_epi32(x));
    }
    if (i < n)
        axpy_mod_scalar(r + i, s + i, c, n - i, p);
}

__attribute__((target("avx2,fma")))
void scale_mod_avx2(uint32_t* r, uint32_t c, size_t n, uint32_t p) {
    const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
    const __m256d invp = _mm256_set1_pd(1.0 / static_cast<double>(p));
    const __m256d cd = _mm256_set1_pd(static_cast<double>(c % p));
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i r32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(r + i));
        __m256d rd = _mm256_cvtepi32_pd(r32);
        __m256d t = _mm256_mul_pd(cd, rd);
        __m256d x = reduce_lanes(t, pd, invp);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(r + i), _mm256_cvtpd_epi32(x));
    }
    if (i < n)
        scale_mod_scalar(r + i, c, n - i, p);
}

} // namespace steiner::kernels

#endif
