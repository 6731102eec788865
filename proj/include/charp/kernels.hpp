#pragma once

// Data-parallel inner loops for arithmetic over prime fields F_p.
//
// Every kernel has a scalar reference implementation and, where the host
// supports it, an AVX2 variant. The variant is chosen once at runtime; the
// scalar path is always available for equivalence testing.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace charp::kernels {

enum class Isa { Scalar, Avx2 };

/// ISA selected for the current process. Honors CHARP_HEIGHTS_FORCE_SCALAR=1.
Isa active_isa();

/// Overrides the runtime selection. Requesting Avx2 on a host without it
/// falls back to Scalar. Returns the ISA actually installed.
Isa set_isa(Isa isa);

bool cpu_has_avx2();

std::string_view isa_name(Isa isa);

/// out[k] = sum_{i+j=k} a[i]*b[j] mod p for k < out.size().
/// Inputs must already be reduced into [0, p). out may not alias a or b.
void convolve_mod(std::span<const uint32_t> a, std::span<const uint32_t> b,
                  std::span<uint32_t> out, uint32_t p);

/// y[i] = (y[i] + c*x[i]) mod p for i < y.size(); x.size() >= y.size().
void axpy_mod(uint32_t c, std::span<const uint32_t> x, std::span<uint32_t> y,
              uint32_t p);

namespace scalar {
void convolve_mod(std::span<const uint32_t> a, std::span<const uint32_t> b,
                  std::span<uint32_t> out, uint32_t p);
void axpy_mod(uint32_t c, std::span<const uint32_t> x, std::span<uint32_t> y,
              uint32_t p);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define CHARP_HAVE_AVX2_KERNELS 1
namespace avx2 {
void convolve_mod(std::span<const uint32_t> a, std::span<const uint32_t> b,
                  std::span<uint32_t> out, uint32_t p);
void axpy_mod(uint32_t c, std::span<const uint32_t> x, std::span<uint32_t> y,
              uint32_t p);
}  // namespace avx2
#else
#define CHARP_HAVE_AVX2_KERNELS 0
#endif

}  // namespace charp::kernels
