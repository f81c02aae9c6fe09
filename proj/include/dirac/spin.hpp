#pragma once

// Spin norms and the tests built on them: the Dirac inequality, Vogan
// pencils, u-smallness and the Dirac index parity of spin lowest K-types.
//
// Weights passed in k-fundamental coordinates are converted through the
// real form; results carry k-fundamental coordinates unless noted.

#include <optional>
#include <string_view>
#include <vector>

#include "dirac/realform.hpp"

namespace dirac {

/// The dominant W(k)-conjugate {v}.
Weight prv_dominant(const Weight& v, const RealFormData& rf);

struct SpinNormTerm {
  std::size_t j = 0;
  Weight conjugate;  ///< {mu - rho_n^(j)}, k-fundamental
  /// w with {mu - rho_n^(j)} + rho_K = w Lambda, when Lambda was supplied and
  /// the two are W-conjugate.
  std::optional<WeylElement> w;
};

struct SpinNormResult {
  Rational norm_sq;
  /// One term per minimizing index, increasing j.
  std::vector<SpinNormTerm> minimizers;

  std::vector<std::size_t> argmin() const;
};

/// min_j |{mu - rho_n^(j)} + rho_K|^2. Throws DomainError unless mu is
/// k-dominant.
SpinNormResult spin_norm_sq(const Weight& mu, const RealFormData& rf,
                            const std::optional<Weight>& lambda = std::nullopt);

enum class DiracVerdict { Violated, Equality, StrictlyAbove };
std::string_view name(DiracVerdict v);

/// Compares a squared spin norm with |Lambda|^2.
DiracVerdict dirac_test(const Rational& spin_norm_sq, const Weight& lambda, const RootSystem& system);
DiracVerdict dirac_test(const Rational& spin_norm_sq, const Rational& lambda_norm_sq);

struct PencilOptions {
  /// Evaluate exactly n = 0..cap when set.
  std::optional<std::size_t> cap;
  /// Used for the default stopping window; |delta|^2 when absent.
  std::optional<Weight> lambda;
  /// Hard limit for the adaptive search.
  std::size_t max_steps = 4096;
};

struct PencilResult {
  Rational min_norm_sq;
  std::size_t argmin = 0;
  std::vector<Rational> values;  ///< spin norms of delta + n beta, n = 0, 1, ...
  /// The search ended while the sequence was still decreasing.
  bool inconclusive = false;
  /// Past the argmin every evaluated step was nondecreasing.
  bool tail_nondecreasing = true;
};

/// Minimum spin norm along delta + n beta, beta the configured highest
/// weight of p. Without a cap the search stops once
/// 2 (1 + ceil(|Lambda| / |beta|)) consecutive steps pass without a new
/// minimum.
PencilResult pencil_min_spin(const Weight& delta, const RealFormData& rf, const PencilOptions& options = {});

/// The g-dominant conjugate mu-hat of mu satisfies: 2 rho - mu-hat is a
/// nonnegative combination of simple roots.
bool usmall_test(const Weight& mu, const RealFormData& rf);

/// Mixed: the minimizing terms of one weight fall on both sides.
enum class Parity { Even, Odd, Mixed, Ambiguous };
std::string_view name(Parity p);

struct DiParityEntry {
  Weight mu;
  Parity parity = Parity::Ambiguous;
  /// Minimizing indices whose conjugate is W-conjugate to Lambda.
  std::vector<std::size_t> j_star;
  /// Index j' with rho_n^(j') the contragredient of rho_n^(j*), per j*.
  std::vector<std::size_t> j_dual;
  /// The K~-type {mu - rho_n^(j*)} for the first j*.
  Weight ktilde;
  /// One K~-type {mu - rho_n^(j*)} and its side per j*.
  std::vector<Weight> terms;
  std::vector<Parity> term_parity;
};

enum class DiVerdict { Cancels, DoesNotCancel, Ambiguous };
std::string_view name(DiVerdict v);

struct DiParityResult {
  std::vector<DiParityEntry> entries;
  /// Terms (mu, j*) on each side.
  std::size_t even = 0;
  std::size_t odd = 0;
  DiVerdict verdict = DiVerdict::Ambiguous;
};

/// Places each term {mu - rho_n^(j*)} of H_D in the even or odd part, by the
/// length of the W^1 element attached to the contragredient of rho_n^(j*).
/// Cancels when the two multisets of K~-types agree and are nonempty;
/// Ambiguous when some dual index cannot be resolved. Throws DomainError
/// when some mu does not attain |Lambda|^2.
DiParityResult di_parity(const std::vector<Weight>& spin_lkts, const Weight& lambda, const RealFormData& rf);

}  // namespace dirac
