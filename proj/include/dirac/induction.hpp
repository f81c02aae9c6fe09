#pragma once

// theta-stable parabolics from a grading element, the good range tests, the
// Huang-Pandzic condition and the transfer of K~-types from a Levi factor.

#include <optional>
#include <string_view>
#include <vector>

#include "dirac/realform.hpp"

namespace dirac {

/// q = l + u from the eigenvalues alpha(H) = B(alpha, H). H is stored in
/// g-fundamental coordinates (identified with t_f through the form).
struct ThetaParabolic {
  Weight H;
  std::vector<int> u;           ///< alpha(H) > 0
  std::vector<int> l;           ///< alpha(H) = 0, both signs
  std::vector<int> u_compact;   ///< Delta(u ∩ k)
  std::vector<int> u_noncompact;
  RootSubsystem l_positive;     ///< Delta(l) ∩ Delta^+(g)
  RootSubsystem lk_positive;    ///< Delta(l ∩ k) ∩ Delta^+(g)
  QVec rho_u;
  QVec rho_u_k;
  QVec rho_u_p;
  QVec rho_lk;                  ///< rho_{L∩K}

  std::size_t S() const { return u_compact.size(); }
};

/// H with alpha_j(H) = 1 for simple roots outside `support` and 0 inside,
/// so that Delta(l) is generated by the support. Indices are 0-based.
Weight grading_from_support(const std::vector<int>& support, const RootSystem& system);

ThetaParabolic build_parabolic(const Weight& H, const RealFormData& rf);

enum class RangeVerdict { Good, WeaklyGood, Neither };
std::string_view name(RangeVerdict v);

RangeVerdict range_test(const Weight& lambda_L, const ThetaParabolic& q, const RealFormData& rf);

/// {delta - rho_n^(j)} + rho_K = w Lambda, with delta a K-type.
struct HpWitness {
  Weight delta;  ///< k-fundamental
  std::size_t j = 0;
  WeylElement w;
};

/// Search order: W^1 in canonical order over the k-dominant points
/// w Lambda^+, then j increasing. Returns the first witness.
std::optional<HpWitness> hp_check(const Weight& lambda, const RealFormData& rf);

enum class TransferHypothesis { GoodRange, HpCondition, Conjugacy, Conclusion };
std::string_view name(TransferHypothesis h);

class TransferError : public DomainError {
 public:
  TransferError(TransferHypothesis h, const std::string& what) : DomainError(what), hypothesis_(h) {}
  TransferHypothesis hypothesis() const { return hypothesis_; }

 private:
  TransferHypothesis hypothesis_;
};

/// gamma_G = gamma_L + rho(u ∩ p), after checking the good range, the HP
/// condition for lambda_L + rho(u), and that gamma_L + rho_{L∩K} is
/// W(l)-conjugate to lambda_L. Throws TransferError naming the failed
/// hypothesis. The result is in k-fundamental coordinates.
Weight transfer_nonvanishing(const Weight& gamma_L, const Weight& lambda_L, const ThetaParabolic& q,
                             const RealFormData& rf);

/// (1 + theta) lambda / 2 + nu. theta acts on g-fundamental coordinates and
/// must square to the identity.
Weight inf_char_from_parameter(const Weight& lambda, const Weight& nu, const QMatrix& theta,
                               const RootSystem& system);

}  // namespace dirac
