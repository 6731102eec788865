#include "charp/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <vector>

#if CHARP_HAVE_AVX2_KERNELS
#include <immintrin.h>
#endif

namespace charp::kernels {

namespace {

// Rows of a that may be accumulated before a lane of width W overflows.
template <class W>
std::size_t rows_before_reduce(uint32_t p) {
  const W sq = static_cast<W>(p - 1) * static_cast<W>(p - 1);
  if (sq == 0) return std::numeric_limits<std::size_t>::max();
  const W room = std::numeric_limits<W>::max() - static_cast<W>(p);
  return static_cast<std::size_t>(room / sq);
}

Isa detect() {
  if (const char* env = std::getenv("CHARP_HEIGHTS_FORCE_SCALAR");
      env != nullptr && env[0] == '1') {
    return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& isa_slot() {
  static std::atomic<Isa> slot{detect()};
  return slot;
}

}  // namespace

bool cpu_has_avx2() {
#if CHARP_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return isa_slot().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) isa = Isa::Scalar;
  isa_slot().store(isa, std::memory_order_relaxed);
  return isa;
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

void convolve_mod(std::span<const uint32_t> a, std::span<const uint32_t> b,
                  std::span<uint32_t> out, uint32_t p) {
#if CHARP_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) {
    avx2::convolve_mod(a, b, out, p);
    return;
  }
#endif
  scalar::convolve_mod(a, b, out, p);
}

void axpy_mod(uint32_t c, std::span<const uint32_t> x, std::span<uint32_t> y,
              uint32_t p) {
#if CHARP_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) {
    avx2::axpy_mod(c, x, y, p);
    return;
  }
#endif
  scalar::axpy_mod(c, x, y, p);
}

// ---------------------------------------------------------------------------
// Scalar reference

namespace scalar {

void convolve_mod(std::span<const uint32_t> a, std::span<const uint32_t> b,
                  std::span<uint32_t> out, uint32_t p) {
  const std::size_t n = out.size();
  std::vector<uint64_t> acc(n, 0);
  const std::size_t budget = rows_before_reduce<uint64_t>(p);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    const uint64_t ai = a[i];
    if (ai == 0) continue;
    if (rows == budget) {
      for (auto& v : acc) v %= p;
      rows = 0;
    }
    const std::size_t len = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < len; ++j) acc[i + j] += ai * b[j];
    ++rows;
  }
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<uint32_t>(acc[k] % p);
}

void axpy_mod(uint32_t c, std::span<const uint32_t> x, std::span<uint32_t> y,
              uint32_t p) {
  const uint64_t cc = c;
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = static_cast<uint32_t>((y[i] + cc * x[i]) % p);
  }
}

}  // namespace scalar

// ---------------------------------------------------------------------------
// AVX2

#if CHARP_HAVE_AVX2_KERNELS
namespace avx2 {

namespace {

__attribute__((target("avx2"))) void conv_lanes32(
    std::span<const uint32_t> a, std::span<const uint32_t> b,
    std::span<uint32_t> out, uint32_t p, std::size_t budget) {
  const std::size_t n = out.size();
  std::vector<uint32_t> acc(n + 8, 0);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    const uint32_t ai = a[i];
    if (ai == 0) continue;
    if (rows == budget) {
      for (auto& v : acc) v %= p;
      rows = 0;
    }
    const std::size_t len = std::min(b.size(), n - i);
    const __m256i va = _mm256_set1_epi32(static_cast<int>(ai));
    uint32_t* dst = acc.data() + i;
    std::size_t j = 0;
    for (; j + 8 <= len; j += 8) {
      __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + j));
      __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
      vd = _mm256_add_epi32(vd, _mm256_mullo_epi32(va, vb));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), vd);
    }
    for (; j < len; ++j) dst[j] += ai * b[j];
    ++rows;
  }
  for (std::size_t k = 0; k < n; ++k) out[k] = acc[k] % p;
}

__attribute__((target("avx2"))) void conv_lanes64(
    std::span<const uint32_t> a, std::span<const uint32_t> b,
    std::span<uint32_t> out, uint32_t p, std::size_t budget) {
  const std::size_t n = out.size();
  std::vector<uint64_t> acc(n + 4, 0);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    const uint64_t ai = a[i];
    if (ai == 0) continue;
    if (rows == budget) {
      for (auto& v : acc) v %= p;
      rows = 0;
    }
    const std::size_t len = std::min(b.size(), n - i);
    const __m256i va = _mm256_set1_epi64x(static_cast<long long>(ai));
    uint64_t* dst = acc.data() + i;
    std::size_t j = 0;
    for (; j + 4 <= len; j += 4) {
      __m128i b32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b.data() + j));
      __m256i vb = _mm256_cvtepu32_epi64(b32);
      __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
      vd = _mm256_add_epi64(vd, _mm256_mul_epu32(va, vb));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), vd);
    }
    for (; j < len; ++j) dst[j] += ai * b[j];
    ++rows;
  }
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<uint32_t>(acc[k] % p);
}

}  // namespace

void convolve_mod(std::span<const uint32_t> a, std::span<const uint32_t> b,
                  std::span<uint32_t> out, uint32_t p) {
  const std::size_t budget32 = rows_before_reduce<uint32_t>(p);
  if (budget32 >= 1) {
    conv_lanes32(a, b, out, p, budget32);
  } else {
    conv_lanes64(a, b, out, p, rows_before_reduce<uint64_t>(p));
  }
}

__attribute__((target("avx2"))) void axpy_mod(uint32_t c,
                                              std::span<const uint32_t> x,
                                              std::span<uint32_t> y,
                                              uint32_t p) {
  // Vector path needs y + c*x < 2^31 so the int32 -> double conversion is exact.
  if (p >= (1u << 15)) {
    scalar::axpy_mod(c, x, y, p);
    return;
  }
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256d inv_p = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= y.size(); i += 8) {
    __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x.data() + i));
    __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y.data() + i));
    __m256i t = _mm256_add_epi32(vy, _mm256_mullo_epi32(vc, vx));
    __m256d lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(t));
    __m256d hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(t, 1));
    __m128i qlo = _mm256_cvttpd_epi32(_mm256_floor_pd(_mm256_mul_pd(lo, inv_p)));
    __m128i qhi = _mm256_cvttpd_epi32(_mm256_floor_pd(_mm256_mul_pd(hi, inv_p)));
    __m256i q = _mm256_set_m128i(qhi, qlo);
    __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, vp));
    // floor(t/p) may be off by one in either direction
    r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), vp));
    __m256i ge = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vp, _mm256_set1_epi32(1)));
    r = _mm256_sub_epi32(r, _mm256_and_si256(ge, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y.data() + i), r);
  }
  if (i < y.size()) scalar::axpy_mod(c, x.subspan(i), y.subspan(i), p);
}

}  // namespace avx2
#endif

}  // namespace charp::kernels
