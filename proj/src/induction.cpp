#include "dirac/induction.hpp"

namespace dirac {

std::string_view name(RangeVerdict v) {
  switch (v) {
    case RangeVerdict::Good: return "Good";
    case RangeVerdict::WeaklyGood: return "WeaklyGood";
    case RangeVerdict::Neither: return "Neither";
  }
  return "?";
}

std::string_view name(TransferHypothesis h) {
  switch (h) {
    case TransferHypothesis::GoodRange: return "good range";
    case TransferHypothesis::HpCondition: return "HP condition";
    case TransferHypothesis::Conjugacy: return "conjugacy";
    case TransferHypothesis::Conclusion: return "conclusion";
  }
  return "?";
}

Weight grading_from_support(const std::vector<int>& support, const RootSystem& system) {
  const auto r = static_cast<std::size_t>(system.rank());
  std::vector<bool> inside(r, false);
  for (int i : support) {
    if (i < 0 || static_cast<std::size_t>(i) >= r) throw DomainError("support index out of range");
    inside[static_cast<std::size_t>(i)] = true;
  }
  // B(alpha_i, zeta_j) = delta_ij |alpha_i|^2 / 2
  QVec h(r, Rational(0));
  for (std::size_t j = 0; j < r; ++j) {
    if (inside[j]) continue;
    const auto& a = system.roots()[j];
    h[j] = Rational(2) / (a.norm_sq * system.form_scale());
  }
  return gfund(h);
}

ThetaParabolic build_parabolic(const Weight& H, const RealFormData& rf) {
  const RootSystem& rs = rf.system();
  const auto r = static_cast<std::size_t>(rs.rank());
  ThetaParabolic q;
  q.H = gfund(rf.to_gfund(H));
  q.rho_u = QVec(r, Rational(0));
  q.rho_u_k = q.rho_u;
  q.rho_u_p = q.rho_u;
  std::vector<int> l_pos, lk_pos;
  const auto& roots = rs.roots();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const QVec z = to_q(roots[i].zeta);
    const Rational eig = rs.inner(z, q.H.coords);
    const int idx = static_cast<int>(i);
    if (eig > 0) {
      q.u.push_back(idx);
      const QVec half = Rational(1, 2) * z;
      q.rho_u = q.rho_u + half;
      if (rf.is_compact(i)) {
        q.u_compact.push_back(idx);
        q.rho_u_k = q.rho_u_k + half;
      } else {
        q.u_noncompact.push_back(idx);
        q.rho_u_p = q.rho_u_p + half;
      }
    } else if (eig == 0) {
      q.l.push_back(idx);
      if (roots[i].positive()) {
        l_pos.push_back(idx);
        if (rf.is_compact(i)) lk_pos.push_back(idx);
      }
    }
  }
  q.l_positive = RootSubsystem::from_positive(rs, l_pos);
  q.lk_positive = RootSubsystem::from_positive(rs, lk_pos);
  q.rho_lk = q.lk_positive.rho();
  return q;
}

RangeVerdict range_test(const Weight& lambda_L, const ThetaParabolic& q, const RealFormData& rf) {
  const QVec v = rf.to_gfund(lambda_L) + q.rho_u;
  bool good = true;
  for (int idx : q.u) {
    const Rational p = dot(v, rf.system().roots()[static_cast<std::size_t>(idx)].coroot);
    if (p < 0) return RangeVerdict::Neither;
    if (p == 0) good = false;
  }
  return good ? RangeVerdict::Good : RangeVerdict::WeaklyGood;
}

std::optional<HpWitness> hp_check(const Weight& lambda, const RealFormData& rf) {
  const RootSystem& rs = rf.system();
  const auto top = dominant_rep(gfund(rf.to_gfund(lambda)), rs);
  // The k-dominant points of W Lambda are exactly the w Lambda^+, w in W^1.
  // A witness needs x = w Lambda^+ with x - rho_K k-dominant; then
  // delta = x - rho_K + rho_n^(j) is the only candidate up to W(k), and the
  // other conjugates give the same lattice verdict.
  for (const auto& w : rf.w1()) {
    const QVec x = w.apply(top.weight.coords);
    if (!rf.k().is_regular_dominant(x)) continue;
    const QVec gamma = x - rf.rho_k();
    for (std::size_t j = 0; j < rf.rho_n().size(); ++j) {
      const QVec delta = rf.to_kfund(gamma + rf.rho_n()[j]);
      if (is_ktype(delta, rf)) return HpWitness{kfund(delta), j, rs.compose(w, top.w)};
    }
  }
  return std::nullopt;
}

Weight transfer_nonvanishing(const Weight& gamma_L, const Weight& lambda_L, const ThetaParabolic& q,
                             const RealFormData& rf) {
  const QVec lambda = rf.to_gfund(lambda_L);
  const QVec gamma = rf.to_gfund(gamma_L);
  const auto range = range_test(gfund(lambda), q, rf);
  if (range != RangeVerdict::Good)
    throw TransferError(TransferHypothesis::GoodRange,
                        "lambda_L + rho(u) is " + std::string(name(range)) + ", not in the good range");
  const QVec Lambda = lambda + q.rho_u;
  if (!hp_check(gfund(Lambda), rf))
    throw TransferError(TransferHypothesis::HpCondition,
                        "lambda_L + rho(u) = " + bracketed(Lambda) + " fails the HP condition");
  const QVec a = q.l_positive.descend(gamma + q.rho_lk).dominant;
  const QVec b = q.l_positive.descend(lambda).dominant;
  if (a != b)
    throw TransferError(TransferHypothesis::Conjugacy, "gamma_L + rho_{L∩K} is not W(l)-conjugate to lambda_L");
  const QVec gamma_G = gamma + q.rho_u_p;
  const QVec shifted = gamma_G + rf.rho_k();
  if (!rf.k().is_regular_dominant(shifted) || !is_integral(rf.to_kfund(shifted)))
    throw TransferError(TransferHypothesis::Conclusion,
                        "gamma_G + rho_K = " + bracketed(rf.to_kfund(shifted)) + " is not k-dominant regular integral");
  return kfund(rf.to_kfund(gamma_G));
}

Weight inf_char_from_parameter(const Weight& lambda, const Weight& nu, const QMatrix& theta,
                               const RootSystem& system) {
  const auto r = static_cast<std::size_t>(system.rank());
  if (theta.rows() != r || theta.cols() != r) throw DomainError("involution has the wrong size");
  if (!(theta * theta == QMatrix::identity(r))) throw DomainError("theta does not square to the identity");
  const QVec l = system.to_gfund(lambda);
  const QVec n = system.to_gfund(nu);
  return gfund(Rational(1, 2) * (l + theta * l) + n);
}

}  // namespace dirac
