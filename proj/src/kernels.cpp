#include "steiner/kernels.hpp"

namespace steiner::kernels {

namespace {

bool detect_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const bool have_avx2 = detect_avx2();

// The AVX2 path converts through doubles; products must stay below 2^52.
constexpr uint32_t kSimdModulusLimit = 1u << 26;

} // namespace

void axpy_mod_scalar(uint32_t* r, const uint32_t* s, uint32_t c, size_t n, uint32_t p) {
    for (size_t i = 0; i < n; ++i)
        r[i] = static_cast<uint32_t>((r[i] + static_cast<uint64_t>(c) * s[i]) % p);
}

void scale_mod_scalar(uint32_t* r, uint32_t c, size_t n, uint32_t p) {
    for (size_t i = 0; i < n; ++i)
        r[i] = static_cast<uint32_t>(static_cast<uint64_t>(c) * r[i] % p);
}

uint32_t dot_mod_scalar(const uint32_t* r, const uint32_t* s, size_t n, uint32_t p) {
    uint64_t acc = 0;
    for (size_t i = 0; i < n; ++i)
        acc = (acc + static_cast<uint64_t>(r[i]) * s[i]) % p;
    return static_cast<uint32_t>(acc);
}

bool simd_eligible(uint32_t p) {
    return have_avx2 && p < kSimdModulusLimit;
}

const char* active_backend() {
    return have_avx2 ? "avx2" : "scalar";
}

void axpy_mod(uint32_t* r, const uint32_t* s, uint32_t c, size_t n, uint32_t p) {
#if defined(__x86_64__) || defined(__i386__)
    if (simd_eligible(p)) {
        axpy_mod_avx2(r, s, c, n, p);
        return;
    }
#endif
    axpy_mod_scalar(r, s, c, n, p);
}

void scale_mod(uint32_t* r, uint32_t c, size_t n, uint32_t p) {
#if defined(__x86_64__) || defined(__i386__)
    if (simd_eligible(p)) {
        scale_mod_avx2(r, c, n, p);
        return;
    }
#endif
    scale_mod_scalar(r, c, n, p);
}

uint32_t dot_mod(const uint32_t* r, const uint32_t* s, size_t n, uint32_t p) {
    return dot_mod_scalar(r, s, n, p);
}

} // namespace steiner::kernels
