#include "dirac/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "dirac/kernels.hpp"

namespace dirac {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string key_of(const IntVec& v) { return format(v); }

QVec unit(std::size_t n, std::size_t i, const Rational& value = 1) {
  QVec v(n, Rational(0));
  v[i] = value;
  return v;
}

/// Simple roots, Bourbaki planches (rows, ambient coordinates).
std::vector<QVec> bourbaki_simple_roots(char family, int rank) {
  const auto n = static_cast<std::size_t>(rank);
  const Rational half(1, 2);
  std::vector<QVec> out;
  auto e_minus = [](std::size_t dim, std::size_t i, std::size_t j) {
    QVec v(dim, Rational(0));
    v[i] = 1;
    v[j] = -1;
    return v;
  };
  switch (family) {
    case 'A':
      for (std::size_t i = 0; i < n; ++i) out.push_back(e_minus(n + 1, i, i + 1));
      break;
    case 'B':
    case 'C':
    case 'D':
      for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(e_minus(n, i, i + 1));
      if (family == 'B') out.push_back(unit(n, n - 1));
      if (family == 'C') out.push_back(unit(n, n - 1, 2));
      if (family == 'D') {
        QVec v(n, Rational(0));
        v[n - 2] = 1;
        v[n - 1] = 1;
        out.push_back(v);
      }
      break;
    case 'E': {
      QVec a1(8, -half);
      a1[0] = half;
      a1[7] = half;
      out.push_back(a1);
      QVec a2(8, Rational(0));
      a2[0] = 1;
      a2[1] = 1;
      out.push_back(a2);
      for (std::size_t k = 3; k <= n; ++k) out.push_back(e_minus(8, k - 2, k - 3));
      break;
    }
    case 'F': {
      out.push_back(e_minus(4, 1, 2));
      out.push_back(e_minus(4, 2, 3));
      out.push_back(unit(4, 3));
      out.push_back(QVec{half, -half, -half, -half});
      break;
    }
    case 'G': {
      out.push_back(e_minus(3, 0, 1));
      out.push_back(QVec{Rational(-2), Rational(1), Rational(1)});
      break;
    }
    default:
      break;
  }
  return out;
}

std::vector<QVec> knapp_f4_simple_roots() {
  const Rational half(1, 2);
  return {QVec{half, -half, -half, -half}, QVec{0, 0, 0, 1}, QVec{0, 0, 1, -1}, QVec{0, 1, -1, 0}};
}

bool valid_type(char family, int rank) {
  switch (family) {
    case 'A': return rank >= 1;
    case 'B':
    case 'C': return rank >= 2;
    case 'D': return rank >= 3;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

bool checked_fma(std::int64_t acc, std::int64_t a, std::int64_t b, std::int64_t& out) {
  std::int64_t prod = 0;
  if (__builtin_mul_overflow(a, b, &prod)) return false;
  return !__builtin_add_overflow(acc, prod, &out);
}

}  // namespace

// --- names -----------------------------------------------------------------

std::string_view name(Basis basis) {
  switch (basis) {
    case Basis::GFund: return "gfund";
    case Basis::KFund: return "kfund";
    case Basis::SimpleRoot: return "root";
    case Basis::Ambient: return "ambient";
  }
  return "?";
}

Basis parse_basis(std::string_view text) {
  const auto t = lower(text);
  if (t == "gfund" || t == "g") return Basis::GFund;
  if (t == "kfund" || t == "k") return Basis::KFund;
  if (t == "root" || t == "simpleroot" || t == "simple-root") return Basis::SimpleRoot;
  if (t == "ambient") return Basis::Ambient;
  throw DomainError("unknown basis '" + std::string(text) + "'");
}

std::string_view name(Realization r) {
  switch (r) {
    case Realization::Bourbaki: return "bourbaki";
    case Realization::R8E6: return "R8-E6";
    case Realization::KnappF4: return "Knapp-F4";
  }
  return "?";
}

Realization parse_realization(std::string_view text) {
  const auto t = lower(text);
  if (t == "bourbaki" || t == "default") return Realization::Bourbaki;
  if (t == "r8-e6") return Realization::R8E6;
  if (t == "knapp-f4") return Realization::KnappF4;
  throw DomainError("unknown realization '" + std::string(text) + "'");
}

std::string format_word(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string out;
  for (int i : word) out += "s" + std::to_string(i + 1);
  return out;
}

std::vector<int> parse_word(std::string_view text) {
  std::vector<int> out;
  std::string t(text);
  if (t == "e" || t.empty()) return out;
  std::string digits;
  auto flush = [&] {
    if (digits.empty()) return;
    const int label = std::stoi(digits);
    if (label < 1) throw DomainError("generator labels are 1-based: '" + t + "'");
    out.push_back(label - 1);
    digits.clear();
  };
  for (char c : t) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else if (c == 's' || c == ',' || c == ' ') {
      flush();
    } else {
      throw DomainError("malformed word '" + t + "'");
    }
  }
  flush();
  return out;
}

// --- RootSubsystem -----------------------------------------------------------

RootSubsystem RootSubsystem::from_positive(const RootSystem& parent, std::vector<int> positive,
                                           std::optional<std::vector<int>> simple_order) {
  RootSubsystem s;
  s.dim_ = static_cast<std::size_t>(parent.rank());
  const auto& roots = parent.roots();
  std::set<std::string> members;
  for (int idx : positive) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= roots.size()) throw DomainError("root index out of range");
    members.insert(key_of(roots[static_cast<std::size_t>(idx)].coeffs));
  }
  std::vector<int> indecomposable;
  for (int a : positive) {
    const auto& ca = roots[static_cast<std::size_t>(a)].coeffs;
    bool decomposes = false;
    for (int b : positive) {
      if (b == a) continue;
      const auto& cb = roots[static_cast<std::size_t>(b)].coeffs;
      IntVec diff(ca.size());
      for (std::size_t i = 0; i < ca.size(); ++i) diff[i] = ca[i] - cb[i];
      if (members.count(key_of(diff))) {
        decomposes = true;
        break;
      }
    }
    if (!decomposes) indecomposable.push_back(a);
  }
  if (simple_order) {
    auto given = *simple_order;
    auto sorted_given = given;
    auto sorted_found = indecomposable;
    std::sort(sorted_given.begin(), sorted_given.end());
    std::sort(sorted_found.begin(), sorted_found.end());
    if (sorted_given != sorted_found)
      throw DomainError("configured simple roots do not match the indecomposable positive roots");
    s.simple_ = std::move(given);
  } else {
    s.simple_ = std::move(indecomposable);
  }
  s.positive_ = std::move(positive);
  s.rho_ = QVec(s.dim_, Rational(0));
  for (int idx : s.positive_) {
    s.positive_roots_.push_back(roots[static_cast<std::size_t>(idx)]);
    s.rho_ = s.rho_ + Rational(1, 2) * to_q(roots[static_cast<std::size_t>(idx)].zeta);
  }
  for (int idx : s.simple_) s.simple_roots_.push_back(roots[static_cast<std::size_t>(idx)]);
  return s;
}

QVec RootSubsystem::simple_pairings(const QVec& v) const {
  QVec out(simple_roots_.size());
  for (std::size_t i = 0; i < simple_roots_.size(); ++i) out[i] = simple_pairing(v, i);
  return out;
}

bool RootSubsystem::is_dominant(const QVec& v) const {
  for (std::size_t i = 0; i < simple_roots_.size(); ++i)
    if (simple_pairing(v, i) < 0) return false;
  return true;
}

bool RootSubsystem::is_regular_dominant(const QVec& v) const {
  for (std::size_t i = 0; i < simple_roots_.size(); ++i)
    if (simple_pairing(v, i) <= 0) return false;
  return true;
}

bool RootSubsystem::is_dominant_integral(const QVec& v) const {
  for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
    const Rational p = simple_pairing(v, i);
    if (p < 0 || p.get_den() != 1) return false;
  }
  return true;
}

bool RootSubsystem::contains(int root_index) const {
  return std::find(positive_.begin(), positive_.end(), root_index) != positive_.end();
}

QVec RootSubsystem::reflect(const QVec& v, std::size_t i) const {
  const Rational p = simple_pairing(v, i);
  if (p == 0) return v;
  QVec out = v;
  const auto& z = simple_roots_[i].zeta;
  for (std::size_t a = 0; a < out.size(); ++a)
    if (z[a] != 0) out[a] -= p * static_cast<long>(z[a]);
  return out;
}

IntMatrix RootSubsystem::simple_reflection(std::size_t i) const {
  IntMatrix m = IntMatrix::identity(dim_);
  const auto& z = simple_roots_[i].zeta;
  const auto& c = simple_roots_[i].coroot;
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = 0; b < dim_; ++b) m(a, b) -= z[a] * c[b];
  return m;
}

RootSubsystem::Descent RootSubsystem::descend(const QVec& v) const {
  Descent d;
  const mpz_class den = common_denominator(v);
  // Integer fast path on the scaled numerators; falls back to exact
  // rationals if anything would overflow int64.
  if (den.fits_slong_p()) {
    IntVec num(v.size());
    bool fits = true;
    for (std::size_t a = 0; a < v.size() && fits; ++a) {
      mpz_class scaled = v[a].get_num() * (den / v[a].get_den());
      fits = scaled.fits_slong_p();
      if (fits) num[a] = scaled.get_si();
    }
    while (fits) {
      bool moved = false;
      for (std::size_t i = 0; i < simple_roots_.size() && fits; ++i) {
        const auto& c = simple_roots_[i].coroot;
        std::int64_t p = 0;
        for (std::size_t a = 0; a < num.size() && fits; ++a) fits = checked_fma(p, num[a], c[a], p);
        if (!fits || p >= 0) continue;
        const auto& z = simple_roots_[i].zeta;
        for (std::size_t a = 0; a < num.size() && fits; ++a) fits = checked_fma(num[a], -p, z[a], num[a]);
        d.steps.push_back(static_cast<int>(i));
        moved = true;
        break;
      }
      if (!fits) break;
      if (!moved) {
        d.dominant.resize(num.size());
        for (std::size_t a = 0; a < num.size(); ++a) {
          d.dominant[a] = Rational(mpz_class(static_cast<long>(num[a])), den);
          d.dominant[a].canonicalize();
        }
        return d;
      }
    }
    d.steps.clear();
  }
  QVec cur = v;
  while (true) {
    bool moved = false;
    for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
      if (simple_pairing(cur, i) < 0) {
        cur = reflect(cur, i);
        d.steps.push_back(static_cast<int>(i));
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  d.dominant = std::move(cur);
  return d;
}

// --- WeylGroupTable ------------------------------------------------------------

std::size_t WeylGroupTable::KeyHash::operator()(const IntVec& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : v) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

WeylGroupTable WeylGroupTable::generate(const RootSubsystem& frame, std::size_t dim) {
  WeylGroupTable t;
  t.dim_ = dim;
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < frame.rank(); ++i) gens.push_back(frame.simple_reflection(i));
  t.probe_ = to_int(Rational(2) * frame.rho());
  if (frame.rank() == 0) t.probe_.assign(dim, 0);

  std::vector<IntMatrix> mats{IntMatrix::identity(dim)};
  std::vector<IntVec> keys{t.probe_};
  t.index_.emplace(t.probe_, 0);
  t.lengths_.push_back(0);
  t.parent_.push_back(0);
  t.generator_.push_back(0);
  for (std::size_t e = 0; e < mats.size(); ++e) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      IntVec key = gens[g] * keys[e];
      if (t.index_.count(key)) continue;
      const auto idx = static_cast<std::uint32_t>(mats.size());
      t.index_.emplace(key, idx);
      mats.push_back(gens[g] * mats[e]);
      keys.push_back(std::move(key));
      t.lengths_.push_back(t.lengths_[e] + 1);
      t.parent_.push_back(static_cast<std::uint32_t>(e));
      t.generator_.push_back(static_cast<std::uint8_t>(g));
    }
  }
  const std::size_t count = mats.size();
  t.soa_.assign(dim * dim * count, 0);
  for (std::size_t e = 0; e < count; ++e) {
    for (std::size_t a = 0; a < dim; ++a) {
      std::int64_t l1 = 0;
      for (std::size_t b = 0; b < dim; ++b) {
        const auto x = mats[e](a, b);
        if (x > std::numeric_limits<std::int32_t>::max() || x < std::numeric_limits<std::int32_t>::min())
          throw DomainError("Weyl group matrix entry exceeds int32");
        t.soa_[(a * dim + b) * count + e] = static_cast<std::int32_t>(x);
        l1 += x < 0 ? -x : x;
      }
      t.max_row_l1_ = std::max(t.max_row_l1_, l1);
    }
  }
  return t;
}

IntMatrix WeylGroupTable::matrix(std::size_t e) const {
  IntMatrix m(dim_, dim_);
  const std::size_t count = size();
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = 0; b < dim_; ++b) m(a, b) = soa_[(a * dim_ + b) * count + e];
  return m;
}

std::vector<int> WeylGroupTable::word(std::size_t e) const {
  std::vector<int> w;
  while (e != 0) {
    w.push_back(generator_[e]);
    e = parent_[e];
  }
  return w;
}

std::optional<std::size_t> WeylGroupTable::find(const IntMatrix& m) const {
  const auto it = index_.find(m * probe_);
  if (it == index_.end()) return std::nullopt;
  if (!(matrix(it->second) == m)) return std::nullopt;
  return it->second;
}

std::vector<std::int64_t> WeylGroupTable::orbit_images(const IntVec& v) const {
  if (v.size() != dim_) throw DomainError("orbit_images: dimension mismatch");
  const std::size_t count = size();
  std::int64_t vmax = 0;
  for (auto x : v) vmax = std::max(vmax, x < 0 ? -x : x);
  std::vector<std::int64_t> out(dim_ * count);
  if (vmax < (std::int64_t{1} << 31) / std::max<std::int64_t>(max_row_l1_, 1)) {
    std::vector<std::int32_t> v32(v.begin(), v.end());
    std::vector<std::int32_t> out32(dim_ * count);
    kernels::dispatch().batch_matvec(soa_.data(), count, dim_, v32.data(), out32.data());
    std::copy(out32.begin(), out32.end(), out.begin());
    return out;
  }
  if (vmax >= std::numeric_limits<std::int64_t>::max() / std::max<std::int64_t>(max_row_l1_, 1))
    throw DomainError("orbit_images: coordinates too large");
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = 0; b < dim_; ++b) {
      const std::int32_t* m = soa_.data() + (a * dim_ + b) * count;
      for (std::size_t e = 0; e < count; ++e) out[a * count + e] += static_cast<std::int64_t>(m[e]) * v[b];
    }
  return out;
}

// --- RootSystem ------------------------------------------------------------------

std::shared_ptr<const RootSystem> RootSystem::build(char family, int rank, Realization realization,
                                                    const Rational& form_scale) {
  family = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
  if (!valid_type(family, rank))
    throw DomainError(std::string("invalid root system type ") + family + std::to_string(rank));
  if (realization == Realization::R8E6 && !(family == 'E' && rank == 6))
    throw DomainError("realization R8-E6 applies only to E6");
  if (realization == Realization::KnappF4 && !(family == 'F' && rank == 4))
    throw DomainError("realization Knapp-F4 applies only to F4");
  if (form_scale <= 0) throw DomainError("form scale must be positive");

  std::shared_ptr<RootSystem> rs(new RootSystem());
  rs->family_ = family;
  rs->rank_ = rank;
  rs->realization_ = realization;
  rs->form_scale_ = form_scale;
  const auto simple =
      realization == Realization::KnappF4 ? knapp_f4_simple_roots() : bourbaki_simple_roots(family, rank);
  rs->ambient_ = QMatrix(simple.size(), simple.front().size());
  for (std::size_t i = 0; i < simple.size(); ++i)
    for (std::size_t j = 0; j < simple[i].size(); ++j) rs->ambient_(i, j) = simple[i][j];
  rs->finish();
  return rs;
}

std::shared_ptr<const RootSystem> RootSystem::with_form_scale(const Rational& scale) const {
  return build(family_, rank_, realization_, form_scale_ * scale);
}

void RootSystem::finish() {
  const auto r = static_cast<std::size_t>(rank_);
  QVec sq(r);
  for (std::size_t i = 0; i < r; ++i) sq[i] = dot(ambient_.row(i), ambient_.row(i));
  cartan_ = IntMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const Rational c = Rational(2) * dot(ambient_.row(i), ambient_.row(j)) / sq[j];
      if (c.get_den() != 1) throw DomainError("realization does not give an integral Cartan matrix");
      cartan_(i, j) = c.get_num().get_si();
    }
  cartan_inverse_ = dirac::inverse(to_q(cartan_));
  zeta_ambient_ = cartan_inverse_ * ambient_;
  const QMatrix simple_gram = ambient_ * ambient_.transpose();

  // Closure of the simple roots under simple reflections, in coefficient
  // space: s_i(a) = a - <a, alpha_i^vee> alpha_i.
  std::set<IntVec> seen;
  std::deque<IntVec> queue;
  for (std::size_t i = 0; i < r; ++i) {
    IntVec e(r, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    const IntVec a = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t p = 0;
      for (std::size_t j = 0; j < r; ++j) p += a[j] * cartan_(j, i);
      if (p == 0) continue;
      IntVec b = a;
      b[i] -= p;
      if (seen.insert(b).second) queue.push_back(b);
    }
  }
  std::vector<IntVec> positive;
  for (const auto& a : seen)
    if (std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x >= 0; })) positive.push_back(a);
  std::sort(positive.begin(), positive.end(), [](const IntVec& x, const IntVec& y) {
    const auto hx = std::accumulate(x.begin(), x.end(), std::int64_t{0});
    const auto hy = std::accumulate(y.begin(), y.end(), std::int64_t{0});
    if (hx != hy) return hx < hy;
    return x > y;
  });
  if (positive.size() * 2 != seen.size()) throw DomainError("root closure is not symmetric");

  auto make_root = [&](const IntVec& c) {
    Root root;
    root.coeffs = c;
    root.zeta.assign(r, 0);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < r; ++i) root.zeta[j] += c[i] * cartan_(i, j);
    root.norm_sq = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (c[i] && c[j]) root.norm_sq += simple_gram(i, j) * static_cast<long>(c[i] * c[j]);
    root.coroot.assign(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      const Rational x = Rational(static_cast<long>(c[i])) * sq[i] / root.norm_sq;
      if (x.get_den() != 1) throw DomainError("non-integral coroot coefficient");
      root.coroot[i] = x.get_num().get_si();
    }
    root.height = static_cast<int>(std::accumulate(c.begin(), c.end(), std::int64_t{0}));
    return root;
  };
  roots_.clear();
  for (const auto& c : positive) roots_.push_back(make_root(c));
  for (const auto& c : positive) {
    IntVec neg(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
    roots_.push_back(make_root(neg));
  }
  root_index_.clear();
  for (std::size_t i = 0; i < roots_.size(); ++i) root_index_.emplace(key_of(roots_[i].coeffs), i);

  std::vector<int> pos_idx(positive.size());
  std::iota(pos_idx.begin(), pos_idx.end(), 0);
  std::vector<int> simple_idx(r);
  std::iota(simple_idx.begin(), simple_idx.end(), 0);
  positive_system_ = RootSubsystem::from_positive(*this, pos_idx, simple_idx);

  gram_ = zeta_ambient_ * zeta_ambient_.transpose();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram_(i, j) *= form_scale_;
}

std::string RootSystem::label() const { return std::string(1, family_) + std::to_string(rank_); }

std::optional<std::size_t> RootSystem::find_root(const IntVec& coeffs) const {
  const auto it = root_index_.find(key_of(coeffs));
  if (it == root_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootSystem::negative_of(std::size_t root_index) const {
  const std::size_t n = num_positive();
  return root_index < n ? root_index + n : root_index - n;
}

const Root& RootSystem::highest_root() const { return roots_[num_positive() - 1]; }

Rational RootSystem::inner(const QVec& a, const QVec& b) const {
  const auto r = static_cast<std::size_t>(rank_);
  if (a.size() != r || b.size() != r) throw DomainError("inner: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j)
      if (b[j] != 0) s += a[i] * gram_(i, j) * b[j];
  }
  return s;
}

QVec RootSystem::to_gfund(const Weight& w) const {
  const auto r = static_cast<std::size_t>(rank_);
  switch (w.basis) {
    case Basis::GFund:
      if (w.coords.size() != r) throw DomainError("expected " + std::to_string(r) + " g-fundamental coordinates");
      return w.coords;
    case Basis::SimpleRoot: {
      if (w.coords.size() != r) throw DomainError("expected " + std::to_string(r) + " simple-root coordinates");
      QVec out(r, Rational(0));
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) out[j] += w.coords[i] * static_cast<long>(cartan_(i, j));
      return out;
    }
    case Basis::Ambient: {
      if (w.coords.size() != ambient_dim())
        throw DomainError("expected " + std::to_string(ambient_dim()) + " ambient coordinates");
      QVec out(r);
      for (std::size_t j = 0; j < r; ++j) {
        const auto a = ambient_.row(j);
        out[j] = Rational(2) * dot(w.coords, a) / dot(a, a);
      }
      if (zeta_ambient_.transpose() * out != w.coords) throw DomainError("ambient vector is not in the span of the roots");
      return out;
    }
    case Basis::KFund:
      throw DomainError("k-fundamental coordinates need a real form");
  }
  return {};
}

Weight RootSystem::from_gfund(const QVec& v, Basis target) const {
  const auto r = static_cast<std::size_t>(rank_);
  if (v.size() != r) throw DomainError("from_gfund: dimension mismatch");
  switch (target) {
    case Basis::GFund: return {v, Basis::GFund};
    case Basis::SimpleRoot: {
      QVec out(r, Rational(0));
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) out[j] += v[i] * cartan_inverse_(i, j);
      return {out, Basis::SimpleRoot};
    }
    case Basis::Ambient: return {zeta_ambient_.transpose() * v, Basis::Ambient};
    case Basis::KFund: throw DomainError("k-fundamental coordinates need a real form");
  }
  return {};
}

std::uint64_t RootSystem::weyl_order() const {
  const int n = rank_;
  switch (family_) {
    case 'A': return factorial(n + 1);
    case 'B':
    case 'C': return (std::uint64_t{1} << n) * factorial(n);
    case 'D': return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case 'E': return n == 6 ? 51840ull : n == 7 ? 2903040ull : 696729600ull;
    case 'F': return 1152;
    case 'G': return 12;
    default: return 0;
  }
}

const WeylGroupTable& RootSystem::weyl_table() const {
  if (!has_weyl_table()) throw DomainError("Weyl group tables are cached only for rank <= 6");
  std::call_once(table_once_, [this] {
    auto t = std::make_unique<WeylGroupTable>(
        WeylGroupTable::generate(positive_system_, static_cast<std::size_t>(rank_)));
    if (t->size() != weyl_order())
      throw DomainError("generated Weyl group order " + std::to_string(t->size()) + " disagrees with " +
                        std::to_string(weyl_order()));
    table_ = std::move(t);
  });
  return *table_;
}

IntMatrix RootSystem::simple_reflection(int i) const {
  if (i < 0 || i >= rank_) throw DomainError("simple reflection index out of range");
  return positive_system_.simple_reflection(static_cast<std::size_t>(i));
}

IntMatrix RootSystem::reflection(std::size_t root_index) const {
  const auto r = static_cast<std::size_t>(rank_);
  const auto& root = roots_.at(root_index);
  IntMatrix m = IntMatrix::identity(r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) m(a, b) -= root.zeta[a] * root.coroot[b];
  return m;
}

std::size_t RootSystem::inversion_count(const IntMatrix& m) const {
  const IntVec image = m * IntVec(static_cast<std::size_t>(rank_), 1);
  std::size_t count = 0;
  for (std::size_t i = 0; i < num_positive(); ++i) {
    std::int64_t p = 0;
    for (std::size_t a = 0; a < image.size(); ++a) p += image[a] * roots_[i].coroot[a];
    if (p < 0) ++count;
  }
  return count;
}

WeylElement RootSystem::identity() const {
  WeylElement w;
  w.matrix_ = IntMatrix::identity(static_cast<std::size_t>(rank_));
  return w;
}

WeylElement RootSystem::element(const IntMatrix& m) const {
  const auto r = static_cast<std::size_t>(rank_);
  if (m.rows() != r || m.cols() != r) throw DomainError("Weyl element matrix has the wrong size");
  // Greedy left descents of w rho give the lexicographically least reduced
  // word of w.
  IntVec v = m * IntVec(r, 1);
  WeylElement w;
  w.matrix_ = m;
  IntMatrix rebuilt = IntMatrix::identity(r);
  while (true) {
    std::size_t i = 0;
    while (i < r && v[i] >= 0) ++i;
    if (i == r) break;
    const auto p = v[i];
    for (std::size_t a = 0; a < r; ++a) v[a] -= p * cartan_(i, a);
    w.word_.push_back(static_cast<int>(i));
    rebuilt = rebuilt * simple_reflection(static_cast<int>(i));
  }
  if (!(rebuilt == m)) throw DomainError("matrix is not a Weyl group element");
  return w;
}

WeylElement RootSystem::element_from_word(const std::vector<int>& word) const {
  IntMatrix m = IntMatrix::identity(static_cast<std::size_t>(rank_));
  for (int i : word) {
    if (i < 0 || i >= rank_) throw DomainError("generator s" + std::to_string(i + 1) + " out of range");
    m = m * simple_reflection(i);
  }
  return element(m);
}

WeylElement RootSystem::compose(const WeylElement& a, const WeylElement& b) const {
  return element(a.matrix() * b.matrix());
}

WeylElement RootSystem::inverse(const WeylElement& a) const {
  std::vector<int> rev(a.word().rbegin(), a.word().rend());
  return element_from_word(rev);
}

// --- free operations -----------------------------------------------------------

RootSystemPtr build_root_system(char family, int rank, Realization realization) {
  return RootSystem::build(family, rank, realization);
}

DominantRep dominant_rep(const Weight& v, const RootSystem& system) {
  return dominant_rep(v, system, system.positive_system());
}

DominantRep dominant_rep(const Weight& v, const RootSystem& system, const RootSubsystem& chamber) {
  const auto d = chamber.descend(system.to_gfund(v));
  IntMatrix m = IntMatrix::identity(static_cast<std::size_t>(system.rank()));
  for (int step : d.steps) m = chamber.simple_reflection(static_cast<std::size_t>(step)) * m;
  return {gfund(d.dominant), system.element(m)};
}

mpz_class weyl_dim(const Weight& mu, const RootSystem& system) {
  return weyl_dim(mu, system, system.positive_system());
}

mpz_class weyl_dim(const Weight& mu, const RootSystem& system, const RootSubsystem& frame) {
  const QVec v = system.to_gfund(mu);
  if (!frame.is_dominant_integral(v)) throw DomainError("weyl_dim needs a dominant integral weight");
  const QVec shifted = v + frame.rho();
  Rational num = 1;
  Rational den = 1;
  for (std::size_t i = 0; i < frame.num_positive(); ++i) {
    const auto& c = frame.positive_root(i).coroot;
    num *= dot(shifted, c);
    den *= dot(frame.rho(), c);
  }
  const Rational d = num / den;
  if (d.get_den() != 1 || d <= 0) throw DomainError("Weyl dimension formula gave a non-positive-integer value");
  return d.get_num();
}

std::vector<WeylElement> involutions(const RootSystem& system) {
  const auto r = static_cast<std::size_t>(system.rank());
  const std::size_t npos = system.num_positive();
  const auto& roots = system.roots();
  // orthogonal[i][j]: <beta_j, beta_i^vee> == 0
  std::vector<std::vector<char>> orthogonal(npos, std::vector<char>(npos, 0));
  for (std::size_t i = 0; i < npos; ++i)
    for (std::size_t j = 0; j < npos; ++j) {
      std::int64_t p = 0;
      for (std::size_t a = 0; a < r; ++a) p += roots[j].zeta[a] * roots[i].coroot[a];
      orthogonal[i][j] = p == 0;
    }
  std::vector<IntMatrix> reflections;
  for (std::size_t i = 0; i < npos; ++i) reflections.push_back(system.reflection(i));

  std::map<IntVec, IntMatrix> found;
  const IntVec rho(r, 1);
  std::vector<std::size_t> chosen;
  // Depth-first over sets of mutually orthogonal positive roots, each set
  // listed once in increasing index order.
  auto visit = [&](auto&& self, std::size_t start, const IntMatrix& product) -> void {
    found.emplace(product * rho, product);
    for (std::size_t i = start; i < npos; ++i) {
      bool ok = true;
      for (auto c : chosen) ok = ok && orthogonal[c][i];
      if (!ok) continue;
      chosen.push_back(i);
      self(self, i + 1, product * reflections[i]);
      chosen.pop_back();
    }
  };
  visit(visit, 0, IntMatrix::identity(r));

  std::vector<WeylElement> out;
  out.reserve(found.size());
  for (const auto& [key, m] : found) out.push_back(system.element(m));
  std::sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.word() < b.word();
  });
  return out;
}

}  // namespace dirac
