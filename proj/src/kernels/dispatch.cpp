#include <cstdlib>

#include "dirac/kernels.hpp"

namespace dirac::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(DIRAC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

constexpr Table kScalar{Isa::Scalar, &scalar::batch_matvec, &scalar::first_form_within};
#if defined(DIRAC_HAVE_AVX2_KERNELS)
constexpr Table kAvx2{Isa::Avx2, &avx2::batch_matvec, &avx2::first_form_within};
#endif

}  // namespace

std::string_view name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa active_isa() {
  static const Isa isa = [] {
    if (const char* force = std::getenv("DIRAC_FORCE_SCALAR"); force && *force && *force != '0')
      return Isa::Scalar;
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
  }();
  return isa;
}

const Table& table(Isa isa) {
#if defined(DIRAC_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2 && cpu_has_avx2()) return kAvx2;
#endif
  (void)isa;
  return kScalar;
}

const Table& dispatch() { return table(active_isa()); }

}  // namespace dirac::kernels
