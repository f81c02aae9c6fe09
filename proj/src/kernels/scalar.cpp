#include "dirac/kernels.hpp"

namespace dirac::kernels::scalar {

void batch_matvec(const std::int32_t* mats, std::size_t count, std::size_t dim, const std::int32_t* v,
                  std::int32_t* out) {
  for (std::size_t a = 0; a < dim; ++a) {
    std::int32_t* row_out = out + a * count;
    for (std::size_t e = 0; e < count; ++e) row_out[e] = 0;
    for (std::size_t b = 0; b < dim; ++b) {
      const std::int32_t vb = v[b];
      if (vb == 0) continue;
      const std::int32_t* m = mats + (a * dim + b) * count;
      for (std::size_t e = 0; e < count; ++e) row_out[e] += m[e] * vb;
    }
  }
}

std::ptrdiff_t first_form_within(const std::int32_t* coeffs, std::size_t count, std::size_t terms,
                                 const std::int32_t* mono, std::int32_t bound) {
  for (std::size_t f = 0; f < count; ++f) {
    std::int32_t q = 0;
    for (std::size_t t = 0; t < terms; ++t) q += coeffs[t * count + f] * mono[t];
    if (q <= bound) return static_cast<std::ptrdiff_t>(f);
  }
  return -1;
}

}  // namespace dirac::kernels::scalar
