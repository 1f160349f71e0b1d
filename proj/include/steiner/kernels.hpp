#pragma once

#include <cstddef>
#include <cstdint>

// Prime-field row kernels. These are the inner loops of every F_p
// elimination, pencil evaluation and exhaustive scan. Scalar reference
// versions cover all p < 2^31; an AVX2 variant (selected at runtime)
// covers p < 2^26, where products stay exactly representable in doubles.
// Inputs and outputs are always reduced to [0, p).

namespace steiner::kernels {

/// r[i] = (r[i] + c * s[i]) mod p
void axpy_mod(uint32_t* r, const uint32_t* s, uint32_t c, size_t n, uint32_t p);

/// r[i] = (c * r[i]) mod p
void scale_mod(uint32_t* r, uint32_t c, size_t n, uint32_t p);

/// sum of r[i] * s[i] mod p
uint32_t dot_mod(const uint32_t* r, const uint32_t* s, size_t n, uint32_t p);

// Reference implementations, always available (equivalence tests compare
// the dispatched path against these).
void axpy_mod_scalar(uint32_t* r, const uint32_t* s, uint32_t c, size_t n, uint32_t p);
void scale_mod_scalar(uint32_t* r, uint32_t c, size_t n, uint32_t p);
uint32_t dot_mod_scalar(const uint32_t* r, const uint32_t* s, size_t n, uint32_t p);

/// Name of the backend the dispatcher resolved to ("scalar" or "avx2").
const char* active_backend();

/// True when the modulus is eligible for the SIMD path on this machine.
bool simd_eligible(uint32_t p);

#if defined(__x86_64__) || defined(__i386__)
void axpy_mod_avx2(uint32_t* r, const uint32_t* s, uint32_t c, size_t n, uint32_t p);
void scale_mod_avx2(uint32_t* r, uint32_t c, size_t n, uint32_t p);
#endif

} // namespace steiner::kernels
