// Compiled with -mavx2 (see src/CMakeLists.txt); only reached through
// dispatch() after a cpuid check.

#include <immintrin.h>

#include "dirac/kernels.hpp"

namespace dirac::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 8;
}

void batch_matvec(const std::int32_t* mats, std::size_t count, std::size_t dim, const std::int32_t* v,
                  std::int32_t* out) {
  const std::size_t vec_end = count - count % kLanes;
  for (std::size_t a = 0; a < dim; ++a) {
    std::int32_t* row_out = out + a * count;
    for (std::size_t e = 0; e < vec_end; e += kLanes) {
      __m256i acc = _mm256_setzero_si256();
      for (std::size_t b = 0; b < dim; ++b) {
        if (v[b] == 0) continue;
        const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mats + (a * dim + b) * count + e));
        acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(m, _mm256_set1_epi32(v[b])));
      }
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(row_out + e), acc);
    }
    for (std::size_t e = vec_end; e < count; ++e) {
      std::int32_t s = 0;
      for (std::size_t b = 0; b < dim; ++b) s += mats[(a * dim + b) * count + e] * v[b];
      row_out[e] = s;
    }
  }
}

std::ptrdiff_t first_form_within(const std::int32_t* coeffs, std::size_t count, std::size_t terms,
                                 const std::int32_t* mono, std::int32_t bound) {
  const std::size_t vec_end = count - count % kLanes;
  // cmpgt(bound + 1, q) <=> q <= bound; bound + 1 cannot overflow for the
  // bounds used by callers (they are far below INT32_MAX).
  const __m256i limit = _mm256_set1_epi32(bound + 1);
  for (std::size_t f = 0; f < vec_end; f += kLanes) {
    __m256i q = _mm256_setzero_si256();
    for (std::size_t t = 0; t < terms; ++t) {
      if (mono[t] == 0) continue;
      const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(coeffs + t * count + f));
      q = _mm256_add_epi32(q, _mm256_mullo_epi32(c, _mm256_set1_epi32(mono[t])));
    }
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(limit, q)));
    if (mask != 0) return static_cast<std::ptrdiff_t>(f + static_cast<std::size_t>(__builtin_ctz(mask)));
  }
  for (std::size_t f = vec_end; f < count; ++f) {
    std::int32_t q = 0;
    for (std::size_t t = 0; t < terms; ++t) q += coeffs[t * count + f] * mono[t];
    if (q <= bound) return static_cast<std::ptrdiff_t>(f);
  }
  return -1;
}

}  // namespace dirac::kernels::avx2
