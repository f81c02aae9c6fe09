#include "dirac/series.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "dirac/induction.hpp"
#include "dirac/kernels.hpp"

namespace dirac {

namespace {

/// |Lambda - w Lambda|^2 as the symmetric matrix (I - w)^T G (I - w).
QMatrix defect_form(const WeylElement& w, const RootSystem& rs) {
  const std::size_t r = static_cast<std::size_t>(rs.rank());
  QMatrix m = QMatrix::identity(r);
  const QMatrix wq = to_q(w.matrix());
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) m(a, b) -= wq(a, b);
  return m.transpose() * rs.gram() * m;
}

/// The forms as integer coefficient rows over the monomials Lambda_i Lambda_j
/// (i <= j), all scaled by one common denominator.
struct ScaledForms {
  std::size_t count = 0;
  std::size_t terms = 0;
  std::vector<std::int32_t> coeffs;  // SoA: coeffs[t * count + f]
  std::int32_t bound = 0;
};

ScaledForms scale_forms(const std::vector<QMatrix>& forms, const Rational& bound, std::size_t r,
                        std::int64_t cap_max) {
  ScaledForms out;
  out.count = forms.size();
  out.terms = r * (r + 1) / 2;
  mpz_class den = bound.get_den();
  for (const auto& f : forms)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a; b < r; ++b) den = lcm(den, Rational(f(a, b)).get_den());
  std::vector<std::int64_t> wide(out.terms * out.count);
  std::int64_t worst = 0;
  const std::int64_t cap_sq = cap_max * cap_max;
  for (std::size_t f = 0; f < out.count; ++f) {
    std::size_t t = 0;
    std::int64_t row = 0;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a; b < r; ++b, ++t) {
        Rational c = forms[f](a, b) * den;
        if (a != b) c *= 2;
        if (!c.get_num().fits_sint_p()) throw DomainError("phi: form coefficient too large");
        const std::int64_t v = c.get_num().get_si();
        wide[t * out.count + f] = v;
        row += (v < 0 ? -v : v);
      }
    worst = std::max(worst, row);
  }
  const Rational scaled_bound = bound * den;
  const std::int64_t limit = std::numeric_limits<std::int32_t>::max();
  if (!scaled_bound.get_num().fits_sint_p() || scaled_bound.get_num() > limit || worst > limit / std::max<std::int64_t>(cap_sq, 1))
    throw DomainError("phi: scaled forms exceed 32-bit range; lower the norm bound or the caps");
  out.bound = static_cast<std::int32_t>(scaled_bound.get_num().get_si());
  out.coeffs.assign(wide.begin(), wide.end());
  return out;
}

std::string support_text(const std::vector<int>& s) {
  if (s.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

}  // namespace

bool lemma_filter(const IntVec& coords, const RealFormData& rf) {
  for (const auto& [i, j] : rf.preset().lemma_pairs) {
    const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
    if (a >= coords.size() || b >= coords.size()) throw DomainError("lemma pair out of range");
    if (coords[a] + coords[b] <= 0) return false;
  }
  return true;
}

std::vector<InfCharCandidate> omega_set(const std::vector<int>& support, const RealFormData& rf, bool require_zero) {
  const auto r = static_cast<std::size_t>(rf.system().rank());
  std::uint32_t mask = 0;
  for (int i : support) {
    if (i < 0 || static_cast<std::size_t>(i) >= r) throw DomainError("support index out of range");
    mask |= 1u << i;
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < r; ++i)
    if (mask >> i & 1u) free.push_back(i);
  std::vector<InfCharCandidate> out;
  // bit b of `bits` sets free[free.size() - 1 - b], so counting up is lexicographic
  for (std::uint32_t bits = 0; bits < (1u << free.size()); ++bits) {
    IntVec v(r, 1);
    for (std::size_t b = 0; b < free.size(); ++b) v[free[free.size() - 1 - b]] = (bits >> b) & 1u;
    if (require_zero && std::find(v.begin(), v.end(), 0) == v.end()) continue;
    if (!lemma_filter(v, rf)) continue;
    if (!hp_check(gfund(to_q(v)), rf)) continue;
    out.push_back({v, mask, true, false, true});
  }
  return out;
}

std::vector<WeylElement> full_support_involutions(const RootSystem& system) {
  std::vector<WeylElement> out;
  const auto full = (1u << system.rank()) - 1u;
  for (auto& w : involutions(system)) {
    std::uint32_t seen = 0;
    for (int g : w.word()) seen |= 1u << g;
    if (seen == full) out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::int64_t> phi_caps(const RealFormData& rf, const std::vector<WeylElement>& invs,
                                   const Rational& bound) {
  const RootSystem& rs = rf.system();
  const auto r = static_cast<std::size_t>(rs.rank());
  std::vector<std::int64_t> caps(r, 0);
  for (const auto& w : invs) {
    const QMatrix f = defect_form(w, rs);
    for (std::size_t i = 0; i < r; ++i) {
      // The form is monotone on the nonnegative orthant, so coordinate i
      // alone bounds it from below.
      if (f(i, i) == 0)
        throw DomainError("coordinate " + std::to_string(i + 1) + " is unbounded: an involution fixes zeta_" +
                          std::to_string(i + 1));
      const Rational ratio = bound / f(i, i);
      mpz_class k = sqrt(mpz_class(ratio.get_num() / ratio.get_den()));
      while (Rational((k + 1) * (k + 1)) <= ratio) ++k;
      caps[i] = std::max<std::int64_t>(caps[i], k.get_si());
    }
  }
  return caps;
}

PhiResult enumerate_phi(const RealFormData& rf, const std::vector<WeylElement>& invs, const PhiOptions& options) {
  const RootSystem& rs = rf.system();
  const auto r = static_cast<std::size_t>(rs.rank());
  const Rational bound = options.norm_bound ? *options.norm_bound : Rational(4) * rs.norm_sq(rs.rho());
  PhiResult result;
  if (invs.empty()) return result;
  const bool supplied_caps = options.caps.has_value();
  result.caps = supplied_caps ? *options.caps : phi_caps(rf, invs, bound);
  if (result.caps.size() != r) throw DomainError("phi: expected one cap per coordinate");
  std::vector<QMatrix> forms;
  forms.reserve(invs.size());
  for (const auto& w : invs) forms.push_back(defect_form(w, rs));
  const std::int64_t cap_max = *std::max_element(result.caps.begin(), result.caps.end());
  const ScaledForms sf = scale_forms(forms, bound, r, cap_max);
  const auto first_within = kernels::dispatch().first_form_within;

  const auto lead = static_cast<std::size_t>(result.caps[0] + 1);
  std::vector<std::vector<InfCharCandidate>> parts(lead);
  std::vector<std::uint64_t> scanned(lead, 0);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    std::vector<std::int32_t> mono(sf.terms);
    IntVec v(r, 0);
    for (std::size_t p; (p = next.fetch_add(1)) < lead;) {
      auto passes = [&] {
        std::size_t t = 0;
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = a; b < r; ++b) mono[t++] = static_cast<std::int32_t>(v[a] * v[b]);
        return first_within(sf.coeffs.data(), sf.count, sf.terms, mono.data(), sf.bound) >= 0;
      };
      std::fill(v.begin(), v.end(), 0);
      v[0] = static_cast<std::int64_t>(p);
      if (!passes()) continue;
      // Depth-first over coordinates 1..r-1 in lexicographic order. Raising a
      // coordinate only raises every form, so the first failure ends a level.
      auto recurse = [&](auto&& self, std::size_t d) -> void {
        if (d == r) {
          ++scanned[p];
          if (std::find(v.begin(), v.end(), 0) == v.end() || !lemma_filter(v, rf)) return;
          InfCharCandidate c{v, 0, true, true, false};
          if (options.with_hp) c.hp_pass = hp_check(gfund(to_q(v)), rf).has_value();
          parts[p].push_back(std::move(c));
          return;
        }
        for (std::int64_t x = 0; x <= result.caps[d]; ++x) {
          v[d] = x;
          if (x > 0 && !passes()) break;
          self(self, d + 1);
        }
        v[d] = 0;
      };
      recurse(recurse, 1);
    }
  };
  unsigned n = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, lead));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t p = 0; p < lead; ++p) {
    result.scanned += scanned[p];
    for (auto& c : parts[p]) result.members.push_back(std::move(c));
  }
  if (supplied_caps) {
    for (std::size_t i = 0; i < r; ++i) {
      const bool hit = std::any_of(result.members.begin(), result.members.end(),
                                   [&](const InfCharCandidate& c) { return c.coords[i] == result.caps[i]; });
      if (hit)
        result.warnings.push_back("coordinate " + std::to_string(i + 1) + " reaches its cap " +
                                  std::to_string(result.caps[i]) + "; the cap may be too small");
    }
  }
  return result;
}

void CountTable::set(std::vector<int> support, std::uint64_t count) {
  std::sort(support.begin(), support.end());
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= rank_)
      throw DomainError("support index " + std::to_string(support[i]) + " out of range");
    if (i && support[i] == support[i - 1]) throw DomainError("repeated support index " + std::to_string(support[i]));
  }
  if (levels_.count(static_cast<int>(support.size())))
    throw DomainError("level " + std::to_string(support.size()) + " already has a total");
  entries_[support] = count;
}

void CountTable::set_level(int size, std::uint64_t count) {
  if (size < 0 || size >= rank_) throw DomainError("level " + std::to_string(size) + " out of range");
  for (const auto& [s, n] : entries_)
    if (static_cast<int>(s.size()) == size)
      throw DomainError("level " + std::to_string(size) + " already has per-subset counts");
  levels_[size] = count;
}

CountTable CountTable::read_tsv(std::istream& in, int rank) {
  CountTable table(rank);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto where = "line " + std::to_string(lineno) + ": ";
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw DomainError(where + "expected two tab-separated columns");
    const std::string first = line.substr(0, tab), second = line.substr(tab + 1);
    if (!header) {
      if (first != "support" || second != "count") throw DomainError(where + "expected header support<TAB>count");
      header = true;
      continue;
    }
    std::vector<int> support;
    std::optional<int> level;
    if (!first.empty() && first[0] == '#') {
      try {
        std::size_t used = 0;
        level = std::stoi(first.substr(1), &used);
        if (used + 1 != first.size()) throw std::invalid_argument(first);
      } catch (const std::logic_error&) {
        throw DomainError(where + "bad level '" + first + "'");
      }
    } else if (first != "-") {
      std::stringstream ss(first);
      for (std::string item; std::getline(ss, item, ',');) {
        try {
          std::size_t used = 0;
          support.push_back(std::stoi(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
          throw DomainError(where + "bad support index '" + item + "'");
        }
      }
    }
    std::uint64_t count = 0;
    try {
      std::size_t used = 0;
      if (second.empty() || second[0] == '-') throw std::invalid_argument(second);
      count = std::stoull(second, &used);
      if (used != second.size()) throw std::invalid_argument(second);
    } catch (const std::logic_error&) {
      throw DomainError(where + "bad count '" + second + "'");
    }
    try {
      if (level)
        table.set_level(*level, count);
      else
        table.set(support, count);
    } catch (const DomainError& e) {
      throw DomainError(where + e.what());
    }
  }
  return table;
}

void CountTable::write_tsv(std::ostream& out) const {
  out << "support\tcount\n";
  for (const auto& [i, n] : levels_) out << '#' << i << '\t' << n << '\n';
  for (const auto& [s, n] : entries_) out << support_text(s) << '\t' << n << '\n';
}

StringCount count_strings(const CountTable& table) {
  StringCount out;
  out.N.assign(static_cast<std::size_t>(table.rank()), 0);
  for (const auto& [s, n] : table.entries()) {
    // the full support does not start a string
    if (s.size() >= out.N.size()) continue;
    out.N[s.size()] += n;
  }
  for (const auto& [i, n] : table.levels()) out.N[static_cast<std::size_t>(i)] += n;
  out.total = std::accumulate(out.N.begin(), out.N.end(), std::uint64_t{0});
  return out;
}

std::string format_candidate_tsv(const InfCharCandidate& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.coords.size(); ++i) os << (i ? "\t" : "") << c.coords[i];
  os << '\t' << (c.lemma_pass ? 1 : 0) << '\t' << (c.norm_pass ? 1 : 0) << '\t' << (c.hp_pass ? 1 : 0);
  return os.str();
}

}  // namespace dirac
