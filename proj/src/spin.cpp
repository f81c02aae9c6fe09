#include "dirac/spin.hpp"

#include <set>

namespace dirac {

namespace {

/// Smallest k >= 0 with k^2 >= r.
mpz_class ceil_sqrt(const Rational& r) {
  if (r <= 0) return 0;
  mpz_class k = sqrt(mpz_class(r.get_num() / r.get_den()));
  while (Rational(k * k) < r) ++k;
  return k;
}

QVec pencil_direction(const RealFormData& rf) {
  const auto& beta = rf.preset().pencil_beta;
  if (beta.empty()) throw DomainError("no pencil direction configured for this group");
  return rf.from_kfund(to_q(beta));
}

}  // namespace

std::string_view name(DiracVerdict v) {
  switch (v) {
    case DiracVerdict::Violated: return "Violated";
    case DiracVerdict::Equality: return "Equality";
    case DiracVerdict::StrictlyAbove: return "StrictlyAbove";
  }
  return "?";
}

std::string_view name(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Mixed: return "mixed";
    case Parity::Ambiguous: return "ambiguous";
  }
  return "?";
}

std::string_view name(DiVerdict v) {
  switch (v) {
    case DiVerdict::Cancels: return "cancels";
    case DiVerdict::DoesNotCancel: return "does-not-cancel";
    case DiVerdict::Ambiguous: return "ambiguous";
  }
  return "?";
}

Weight prv_dominant(const Weight& v, const RealFormData& rf) {
  return kfund(rf.to_kfund(rf.k().descend(rf.to_gfund(v)).dominant));
}

std::vector<std::size_t> SpinNormResult::argmin() const {
  std::vector<std::size_t> out;
  for (const auto& t : minimizers) out.push_back(t.j);
  return out;
}

SpinNormResult spin_norm_sq(const Weight& mu, const RealFormData& rf, const std::optional<Weight>& lambda) {
  const QVec g = rf.to_gfund(mu);
  if (!rf.k().is_dominant(g)) throw DomainError("spin norm needs a k-dominant weight");
  const RootSystem& rs = rf.system();
  SpinNormResult result;
  std::vector<QVec> conjugates;
  bool first = true;
  for (std::size_t j = 0; j < rf.rho_n().size(); ++j) {
    QVec c = rf.k().descend(g - rf.rho_n()[j]).dominant;
    const Rational value = rs.norm_sq(c + rf.rho_k());
    if (first || value < result.norm_sq) {
      result.norm_sq = value;
      result.minimizers.clear();
      conjugates.clear();
      first = false;
    }
    if (value == result.norm_sq) {
      result.minimizers.push_back({j, kfund(rf.to_kfund(c)), std::nullopt});
      conjugates.push_back(std::move(c));
    }
  }
  if (lambda) {
    const auto target = dominant_rep(gfund(rf.to_gfund(*lambda)), rs);
    for (std::size_t t = 0; t < conjugates.size(); ++t) {
      const auto here = dominant_rep(gfund(conjugates[t] + rf.rho_k()), rs);
      // u x = d = v Lambda, so x = u^{-1} v Lambda.
      if (here.weight == target.weight) result.minimizers[t].w = rs.compose(rs.inverse(here.w), target.w);
    }
  }
  return result;
}

DiracVerdict dirac_test(const Rational& spin, const Rational& lambda_sq) {
  if (spin < lambda_sq) return DiracVerdict::Violated;
  if (spin == lambda_sq) return DiracVerdict::Equality;
  return DiracVerdict::StrictlyAbove;
}

DiracVerdict dirac_test(const Rational& spin, const Weight& lambda, const RootSystem& system) {
  return dirac_test(spin, system.norm_sq(system.to_gfund(lambda)));
}

PencilResult pencil_min_spin(const Weight& delta, const RealFormData& rf, const PencilOptions& options) {
  const QVec beta = pencil_direction(rf);
  const QVec start = rf.to_gfund(delta);
  const RootSystem& rs = rf.system();
  PencilResult out;
  auto eval = [&](std::size_t n) {
    const Rational v = spin_norm_sq(gfund(start + Rational(static_cast<unsigned long>(n)) * beta), rf).norm_sq;
    out.values.push_back(v);
    if (n == 0 || v < out.min_norm_sq) {
      out.min_norm_sq = v;
      out.argmin = n;
    }
  };
  if (options.cap) {
    for (std::size_t n = 0; n <= *options.cap; ++n) eval(n);
    const auto& v = out.values;
    out.inconclusive = v.size() >= 2 && v.back() < v[v.size() - 2];
  } else {
    const Rational reference = options.lambda ? rs.norm_sq(rf.to_gfund(*options.lambda)) : rs.norm_sq(start);
    const mpz_class window = 2 * (1 + ceil_sqrt(reference / rs.norm_sq(beta)));
    const auto w = static_cast<std::size_t>(window.get_ui());
    std::size_t n = 0;
    for (;; ++n) {
      if (n >= options.max_steps) {
        out.inconclusive = true;
        break;
      }
      eval(n);
      if (n - out.argmin >= w) break;
    }
  }
  for (std::size_t n = out.argmin + 1; n < out.values.size(); ++n)
    if (out.values[n] < out.values[n - 1]) out.tail_nondecreasing = false;
  return out;
}

bool usmall_test(const Weight& mu, const RealFormData& rf) {
  const RootSystem& rs = rf.system();
  const QVec hat = rs.positive_system().descend(rf.to_gfund(mu)).dominant;
  const QVec gap = rs.from_gfund(Rational(2) * rs.rho() - hat, Basis::SimpleRoot).coords;
  for (const auto& c : gap)
    if (c < 0) return false;
  return true;
}

DiParityResult di_parity(const std::vector<Weight>& spin_lkts, const Weight& lambda, const RealFormData& rf) {
  const RootSystem& rs = rf.system();
  const Rational target = rs.norm_sq(rf.to_gfund(lambda));
  DiParityResult out;
  bool unresolved = false;
  std::multiset<QVec> even_types, odd_types;
  for (const auto& mu : spin_lkts) {
    const auto sn = spin_norm_sq(mu, rf, lambda);
    if (sn.norm_sq != target)
      throw DomainError("weight " + bracketed(rf.convert(mu, Basis::KFund).coords) +
                        " does not attain the Dirac inequality with equality");
    DiParityEntry entry;
    entry.mu = mu;
    bool seen_even = false, seen_odd = false, missing = false;
    for (const auto& term : sn.minimizers) {
      if (!term.w) continue;
      if (entry.j_star.empty()) entry.ktilde = term.conjugate;
      entry.j_star.push_back(term.j);
      const QVec dual = rf.k().descend(-rf.rho_n()[term.j]).dominant;
      const auto jd = rf.rho_n_index(dual);
      if (!jd) {
        missing = true;
        continue;
      }
      entry.j_dual.push_back(*jd);
      const bool even = rf.w1()[*jd].length() % 2 == 0;
      entry.terms.push_back(term.conjugate);
      entry.term_parity.push_back(even ? Parity::Even : Parity::Odd);
      (even ? seen_even : seen_odd) = true;
      (even ? even_types : odd_types).insert(term.conjugate.coords);
      ++(even ? out.even : out.odd);
    }
    if (missing || entry.j_star.empty()) {
      entry.parity = Parity::Ambiguous;
      unresolved = true;
    } else {
      entry.parity = seen_even && seen_odd ? Parity::Mixed : seen_even ? Parity::Even : Parity::Odd;
    }
    out.entries.push_back(std::move(entry));
  }
  if (unresolved)
    out.verdict = DiVerdict::Ambiguous;
  else if (!even_types.empty() && even_types == odd_types)
    out.verdict = DiVerdict::Cancels;
  else
    out.verdict = DiVerdict::DoesNotCancel;
  return out;
}

}  // namespace dirac
