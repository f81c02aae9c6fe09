#pragma once

// Integer inner loops shared by the Weyl-group tables and the candidate
// enumeration. Each kernel has a portable scalar reference and an AVX2
// variant; dispatch() picks one at runtime.
//
// Layout is structure-of-arrays throughout: entry t of item e lives at
// data[t * count + e], so the vector variants only ever issue contiguous
// loads along the item axis.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace dirac::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view name(Isa isa);

/// Best ISA supported by this CPU, unless DIRAC_FORCE_SCALAR is set in the
/// environment.
Isa active_isa();

/// out[a * count + e] = sum_b mats[(a * dim + b) * count + e] * v[b]
///
/// Callers guarantee that every partial sum fits in int32.
using BatchMatvecFn = void (*)(const std::int32_t* mats, std::size_t count, std::size_t dim,
                               const std::int32_t* v, std::int32_t* out);

/// Index of the first form f in [0, count) with
///   sum_t coeffs[t * count + f] * mono[t] <= bound,
/// or -1 when none qualifies. Callers guarantee int32 headroom.
using FirstFormWithinFn = std::ptrdiff_t (*)(const std::int32_t* coeffs, std::size_t count,
                                             std::size_t terms, const std::int32_t* mono,
                                             std::int32_t bound);

namespace scalar {
void batch_matvec(const std::int32_t* mats, std::size_t count, std::size_t dim, const std::int32_t* v,
                  std::int32_t* out);
std::ptrdiff_t first_form_within(const std::int32_t* coeffs, std::size_t count, std::size_t terms,
                                 const std::int32_t* mono, std::int32_t bound);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define DIRAC_HAVE_AVX2_KERNELS 1
namespace avx2 {
void batch_matvec(const std::int32_t* mats, std::size_t count, std::size_t dim, const std::int32_t* v,
                  std::int32_t* out);
std::ptrdiff_t first_form_within(const std::int32_t* coeffs, std::size_t count, std::size_t terms,
                                 const std::int32_t* mono, std::int32_t bound);
}  // namespace avx2
#endif

struct Table {
  Isa isa;
  BatchMatvecFn batch_matvec;
  FirstFormWithinFn first_form_within;
};

/// Kernel table for the requested ISA; falls back to scalar when the CPU
/// lacks it.
const Table& table(Isa isa);
const Table& dispatch();

}  // namespace dirac::kernels
