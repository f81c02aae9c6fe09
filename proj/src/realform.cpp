#include "dirac/realform.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dirac {

namespace {

using json = nlohmann::json;

constexpr std::string_view kBuiltinPresets =
#include "presets.inc"
    ;

std::vector<int> to_zero_based(const json& labels, const std::string& where, int rank) {
  std::vector<int> out;
  for (const auto& l : labels) {
    const int v = l.get<int>();
    if (v < 1 || v > rank) throw DomainError(where + ": label " + std::to_string(v) + " out of range");
    out.push_back(v - 1);
  }
  return out;
}

IntVec int_list(const json& j) {
  IntVec out;
  for (const auto& x : j) out.push_back(x.get<std::int64_t>());
  return out;
}

GroupPreset parse_one(const std::string& name, const json& j) {
  static const std::set<std::string> known{"description", "family",       "rank",        "realization", "noncompact",
                                           "k_simple",    "ktype_parity", "pencil_beta", "lemma_pairs", "fold",
                                           "scattered_count", "nu_norm_sq"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw DomainError("preset '" + name + "': unknown key '" + key + "'");
  GroupPreset p;
  p.name = name;
  try {
    p.description = j.value("description", "");
    const auto family = j.at("family").get<std::string>();
    if (family.size() != 1) throw DomainError("preset '" + name + "': family must be one letter");
    p.family = family[0];
    p.rank = j.at("rank").get<int>();
    p.realization = parse_realization(j.value("realization", "bourbaki"));
    p.noncompact = to_zero_based(j.value("noncompact", json::array()), "preset '" + name + "' noncompact", p.rank);
    for (const auto& row : j.value("k_simple", json::array())) {
      p.k_simple.push_back(int_list(row));
      if (p.k_simple.back().size() != static_cast<std::size_t>(p.rank))
        throw DomainError("preset '" + name + "': k_simple rows need " + std::to_string(p.rank) + " entries");
    }
    p.ktype_parity = int_list(j.value("ktype_parity", json::array()));
    p.pencil_beta = int_list(j.value("pencil_beta", json::array()));
    for (const auto& pair : j.value("lemma_pairs", json::array())) {
      const auto ij = to_zero_based(pair, "preset '" + name + "' lemma_pairs", p.rank);
      if (ij.size() != 2) throw DomainError("preset '" + name + "': lemma_pairs entries are pairs");
      p.lemma_pairs.emplace_back(ij[0], ij[1]);
    }
    p.fold = to_zero_based(j.value("fold", json::array()), "preset '" + name + "' fold", p.rank);
    if (j.contains("scattered_count")) p.scattered_count = j.at("scattered_count").get<std::size_t>();
    for (const auto& q : j.value("nu_norm_sq", json::array())) p.nu_norm_sq.push_back(parse_rational(q.get<std::string>()));
  } catch (const json::exception& e) {
    throw DomainError("preset '" + name + "': " + e.what());
  }
  return p;
}

std::size_t matrix_rank(std::vector<QVec> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool VoganDiagram::equal_rank() const {
  for (std::size_t i = 0; i < pairing.size(); ++i)
    if (pairing[i] != static_cast<int>(i)) return false;
  return true;
}

// --- presets ---------------------------------------------------------------

std::string_view builtin_presets_json() { return kBuiltinPresets; }

std::map<std::string, GroupPreset> parse_presets(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("preset file: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("preset file: top level must be an object");
  std::map<std::string, GroupPreset> out;
  for (const auto& [name, value] : doc.items()) out.emplace(name, parse_one(name, value));
  return out;
}

std::map<std::string, GroupPreset> load_presets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open preset file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presets(ss.str());
}

const std::map<std::string, GroupPreset>& builtin_presets() {
  static const auto presets = parse_presets(kBuiltinPresets);
  return presets;
}

// --- RealFormData ------------------------------------------------------------

bool painted_compact(const IntVec& coeffs, const std::vector<bool>& noncompact) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (noncompact[i]) s += coeffs[i];
  return s % 2 == 0;
}

RealFormPtr RealFormData::build(const GroupPreset& preset) {
  VoganDiagram d;
  d.system = RootSystem::build(preset.family, preset.rank, preset.realization);
  d.noncompact.assign(static_cast<std::size_t>(preset.rank), false);
  for (int i : preset.noncompact) d.noncompact[static_cast<std::size_t>(i)] = true;
  return build(d, preset);
}

RealFormPtr RealFormData::build(const VoganDiagram& diagram, const GroupPreset& preset) {
  if (!diagram.system) throw DomainError("Vogan diagram without a root system");
  if (!diagram.equal_rank())
    throw DomainError("diagram has complex pairs; only restricted_system handles that case");
  const RootSystem& rs = *diagram.system;
  const auto r = static_cast<std::size_t>(rs.rank());
  if (diagram.noncompact.size() != r) throw DomainError("painting needs one tag per simple root");

  std::shared_ptr<RealFormData> rf(new RealFormData());
  rf->diagram_ = diagram;
  rf->preset_ = preset;
  const auto& roots = rs.roots();
  rf->compact_flag_.assign(roots.size(), 0);
  std::vector<int> positive_compact;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const bool c = painted_compact(roots[i].coeffs, diagram.noncompact);
    rf->compact_flag_[i] = c;
    (c ? rf->compact_ : rf->noncompact_).push_back(static_cast<int>(i));
    if (c && roots[i].positive()) positive_compact.push_back(static_cast<int>(i));
  }

  std::optional<std::vector<int>> order;
  if (!preset.k_simple.empty()) {
    order.emplace();
    for (const auto& coeffs : preset.k_simple) {
      const auto idx = rs.find_root(coeffs);
      if (!idx || !roots[*idx].positive() || !rf->compact_flag_[*idx])
        throw DomainError("configured k-simple root " + bracketed(coeffs) + " is not a positive compact root");
      order->push_back(static_cast<int>(*idx));
    }
  }
  rf->k_ = RootSubsystem::from_positive(rs, positive_compact, order);

  // k-fundamental coordinates: pairings with the k-simple coroots, then
  // g-fundamental coordinates spanning the centre.
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < rf->k_.rank(); ++i) rows.push_back(to_q(rf->k_.simple_root(i).coroot));
  for (std::size_t a = 0; a < r && rows.size() < r; ++a) {
    QVec e(r, Rational(0));
    e[a] = 1;
    rows.push_back(e);
    if (matrix_rank(rows) < rows.size()) rows.pop_back();
  }
  rf->to_k_ = QMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rf->to_k_(i, j) = rows[i][j];
  rf->from_k_ = inverse(rf->to_k_);

  // W^1: closed under removing the last letter of a reduced word, so a
  // breadth-first walk by right multiplication reaches all of it.
  const QVec rho = rs.rho();
  const IntVec rho_int(r, 1);
  std::vector<IntMatrix> found{IntMatrix::identity(r)};
  std::set<IntVec> seen{rho_int};
  for (std::size_t e = 0; e < found.size(); ++e) {
    for (std::size_t i = 0; i < r; ++i) {
      IntMatrix next = found[e] * rs.simple_reflection(static_cast<int>(i));
      IntVec image = next * rho_int;
      if (seen.count(image)) continue;
      if (!rf->k_.is_dominant(to_q(image))) continue;
      seen.insert(image);
      found.push_back(std::move(next));
    }
  }
  for (const auto& m : found) rf->w1_.push_back(rs.element(m));
  std::sort(rf->w1_.begin(), rf->w1_.end(), [](const WeylElement& a, const WeylElement& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.word() < b.word();
  });
  for (const auto& w : rf->w1_) rf->rho_n_.push_back(w.apply(rho) - rf->k_.rho());

  if (!preset.ktype_parity.empty() && preset.ktype_parity.size() != r)
    throw DomainError("ktype_parity needs " + std::to_string(r) + " entries");
  if (!preset.pencil_beta.empty() && preset.pencil_beta.size() != r)
    throw DomainError("pencil_beta needs " + std::to_string(r) + " entries");
  if (!preset.fold.empty()) {
    if (preset.fold.size() != r) throw DomainError("fold needs " + std::to_string(r) + " entries");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (rs.cartan()(static_cast<std::size_t>(preset.fold[i]), static_cast<std::size_t>(preset.fold[j])) !=
            rs.cartan()(i, j))
          throw DomainError("fold is not a diagram automorphism");
  }
  return rf;
}

QVec RealFormData::to_kfund(const QVec& v) const { return to_k_ * v; }
QVec RealFormData::from_kfund(const QVec& v) const { return from_k_ * v; }

QVec RealFormData::to_gfund(const Weight& w) const {
  if (w.basis != Basis::KFund) return system().to_gfund(w);
  if (w.coords.size() != to_k_.rows())
    throw DomainError("expected " + std::to_string(to_k_.rows()) + " k-fundamental coordinates");
  return from_kfund(w.coords);
}

Weight RealFormData::convert(const Weight& w, Basis target) const {
  const QVec g = to_gfund(w);
  if (target == Basis::KFund) return kfund(to_kfund(g));
  return system().from_gfund(g, target);
}

std::optional<std::size_t> RealFormData::rho_n_index(const QVec& v) const {
  for (std::size_t j = 0; j < rho_n_.size(); ++j)
    if (rho_n_[j] == v) return j;
  return std::nullopt;
}

const WeylGroupTable& RealFormData::k_weyl_table() const {
  std::call_once(k_table_once_, [this] {
    k_table_ = std::make_unique<WeylGroupTable>(
        WeylGroupTable::generate(k_, static_cast<std::size_t>(system().rank())));
  });
  return *k_table_;
}

bool RealFormData::k_dominant_kfund(const QVec& c) const {
  for (std::size_t i = 0; i < k_.rank(); ++i)
    if (c[i] < 0) return false;
  return true;
}

const std::vector<WeylElement>& coset_reps_W1(const RealFormData& rf) { return rf.w1(); }

std::vector<Weight> rho_n_list(const RealFormData& rf) {
  std::vector<Weight> out;
  for (const auto& v : rf.rho_n()) out.push_back(kfund(rf.to_kfund(v)));
  return out;
}

bool is_ktype(const QVec& c, const RealFormData& rf) {
  if (!is_integral(c) || !rf.k_dominant_kfund(c)) return false;
  const auto& parity = rf.preset().ktype_parity;
  if (parity.empty()) return true;
  mpz_class s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i].get_num() * parity[i];
  return mpz_even_p(s.get_mpz_t()) != 0;
}

bool ktype_test(const Weight& mu, const RealFormData& rf) {
  const QVec c = rf.convert(mu, Basis::KFund).coords;
  if (!is_integral(c)) throw DomainError("K-type test needs integral k-fundamental coordinates, got " + bracketed(c));
  return is_ktype(c, rf);
}

Weight contragredient(const Weight& mu, const RealFormData& rf) {
  // -w_0 mu is the dominant conjugate of -mu.
  const QVec g = rf.to_gfund(mu);
  const QVec dual = rf.k().descend(-g).dominant;
  return rf.convert(gfund(dual), mu.basis);
}

Weight basis_change(const Weight& mu, Basis target, const RealFormData& rf) {
  if (mu.basis == target) {
    (void)rf.to_gfund(mu);  // dimension check
    return mu;
  }
  return rf.convert(mu, target);
}

// --- restricted roots --------------------------------------------------------

RestrictedRootData restricted_system(const VoganDiagram& diagram) {
  if (!diagram.system) throw DomainError("Vogan diagram without a root system");
  const RootSystem& rs = *diagram.system;
  const auto r = static_cast<std::size_t>(rs.rank());
  RestrictedRootData out;
  out.system = diagram.system;
  out.sigma = diagram.pairing;
  if (out.sigma.empty()) {
    out.sigma.resize(r);
    for (std::size_t i = 0; i < r; ++i) out.sigma[i] = static_cast<int>(i);
  }
  if (out.sigma.size() != r) throw DomainError("pairing needs one entry per simple root");
  for (std::size_t i = 0; i < r; ++i) {
    const int s = out.sigma[i];
    if (s < 0 || static_cast<std::size_t>(s) >= r || out.sigma[static_cast<std::size_t>(s)] != static_cast<int>(i))
      throw DomainError("pairing is not an involution");
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (rs.cartan()(static_cast<std::size_t>(out.sigma[i]), static_cast<std::size_t>(out.sigma[j])) !=
          rs.cartan()(i, j))
        throw DomainError("pairing is not a diagram automorphism");

  out.theta = IntMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i) out.theta(static_cast<std::size_t>(out.sigma[i]), i) = 1;

  for (const auto& root : rs.roots()) {
    const QVec z = to_q(root.zeta);
    out.restriction.push_back(Rational(1, 2) * (z + out.theta * z));
  }
  std::set<QVec> seen;
  for (const auto& v : out.restriction)
    if (seen.insert(v).second) out.roots.push_back(v);
  for (const auto& v : out.roots)
    if (!seen.count(Rational(2) * v)) out.reduced.push_back(v);

  // Fixed nodes first (compact, then painted), then one entry per pair.
  std::vector<std::size_t> fixed;
  for (bool painted : {false, true})
    for (std::size_t i = 0; i < r; ++i)
      if (out.sigma[i] == static_cast<int>(i) && (i < diagram.noncompact.size() && diagram.noncompact[i]) == painted)
        fixed.push_back(i);
  for (auto i : fixed) {
    IntVec c(r, 0);
    c[i] = 1;
    out.coroots.push_back(c);
    QVec z(r, Rational(0));
    z[i] = 1;
    out.fundamental.push_back(z);
  }
  for (std::size_t j = 0; j < r; ++j) {
    const auto s = static_cast<std::size_t>(out.sigma[j]);
    if (s <= j) continue;
    IntVec c(r, 0);
    c[j] = 1;
    c[s] = 1;
    out.coroots.push_back(c);
    QVec z(r, Rational(0));
    z[j] = Rational(1, 2);
    z[s] = Rational(1, 2);
    out.fundamental.push_back(z);
  }
  return out;
}

bool restricted_integral(const Weight& mu, const RestrictedRootData& rrd) {
  const QVec v = rrd.system->to_gfund(mu);
  if (rrd.theta * v != v) throw DomainError("weight is not theta-fixed");
  for (const auto& c : rrd.coroots)
    if (dot(v, c).get_den() != 1) return false;
  return true;
}

}  // namespace dirac
