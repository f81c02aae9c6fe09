// Acceptance run: one PASS/FAIL line per criterion. Criterion 11 is
// informational and does not affect the exit code.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "dirac/induction.hpp"
#include "dirac/series.hpp"
#include "dirac/spin.hpp"
#include "dirac/tables.hpp"
#include "properties.hpp"

using namespace dirac;

namespace {

const std::string kData = std::string(DIRAC_SOURCE_DIR) + "/data";

RealFormPtr fresh(const std::string& name) { return RealFormData::build(builtin_presets().at(name)); }

QVec qv(std::initializer_list<Rational> xs) { return QVec(xs); }

/// atlas lists F4 coordinates in the reverse of Knapp's order.
QVec from_atlas_f4(QVec v) {
  std::reverse(v.begin(), v.end());
  return v;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // 0 for no limit
  std::function<Outcome()> run;
  bool informational = false;
};

Outcome coset_count() {
  Outcome o;
  const auto rs = build_root_system('E', 6, Realization::R8E6);
  o.require(rs->weyl_table().size() == 51840, "|W(E6)| = 51840");
  const auto rf = fresh("e6_2");
  o.require(rf->w1().size() == 36, "#W^1 = 36");
  o.require(rf->system().weyl_order() / rf->k_weyl_order() == 36, "|W| / |W(k)| = 36");
  o.note("#W^1 = " + std::to_string(rf->w1().size()));
  return o;
}

Outcome dimensions() {
  Outcome o;
  const auto rf = fresh("e6_2");
  const Weight beta = kfund(IntVec{0, 0, 1, 0, 0, 1});
  const mpz_class dim = weyl_dim(gfund(rf->to_gfund(beta)), rf->system(), rf->k());
  o.require(dim == 40, "dim E_beta = 40");
  o.require(rf->compact_roots().size() == 32, "|Delta(k)| = 32");
  const std::size_t dim_k = rf->compact_roots().size() + 6;
  o.require(dim_k == 38, "dim k = 38");
  o.require(rf->noncompact_roots().size() == 40, "dim p = 40");
  o.note("dim E_beta = " + dim.get_str() + ", dim k = " + std::to_string(dim_k));
  return o;
}

Outcome f4_fixtures() {
  Outcome o;
  const auto rf = fresh("f4_split");
  const auto& rs = rf->system();
  // a w1 + b w2 + c w3 + d w4 = a xi1 + b xi2 + c xi3 + (-a/2 - b - 3c/2 + d/2) xi4,
  // as the matrix of the linear map in (a, b, c, d)
  QMatrix expected = QMatrix::identity(4);
  expected(3, 0) = Rational(-1, 2);
  expected(3, 1) = -1;
  expected(3, 2) = Rational(-3, 2);
  expected(3, 3) = Rational(1, 2);
  o.require(rf->kfund_to_gfund() == expected, "k-fundamental to g-fundamental identity");
  o.require(rf->gfund_to_kfund() * rf->kfund_to_gfund() == QMatrix::identity(4), "inverse change of basis");
  const auto sn = spin_norm_sq(kfund(IntVec{0, 1, 0, 8}), *rf);
  const Weight lambda = gfund(from_atlas_f4(qv({0, 1, 0, 1})));
  const Rational lsq = rs.norm_sq(lambda.coords);
  o.require(sn.norm_sq == 15, "spin norm 15");
  o.require(lsq == 11, "|Lambda|^2 = 11");
  o.require(dirac_test(sn.norm_sq, lambda, rs) == DiracVerdict::StrictlyAbove, "StrictlyAbove");
  o.require(rs.find_root(IntVec{2, 4, 3, 2}).has_value(), "gamma_4 is a root");
  o.require(rf->k().rank() == 4 && rf->k().simple_root(3).coeffs == IntVec{2, 4, 3, 2}, "gamma_4 is k-simple");
  // independent count: |W(F4)| = 1152, W(k) of type C3 x A1 has order 48 * 2
  o.require(rf->w1().size() == 12 && 1152 / (48 * 2) == 12, "s = 12");
  o.note("spin norm " + format(sn.norm_sq) + " > |Lambda|^2 = " + format(lsq) + ", s = " + std::to_string(rf->w1().size()));
  return o;
}

Outcome range_fixtures() {
  Outcome o;
  const auto rf = fresh("f4_split");
  const auto q = build_parabolic(grading_from_support({2}, rf->system()), *rf);
  o.require(q.rho_u == from_atlas_f4(qv({Rational(3, 2), 0, 2, 1})), "rho(u) = [3,0,4,2]/2");
  const auto good = range_test(gfund(from_atlas_f4(qv({Rational(-1, 2), 1, -1, 0}))), q, *rf);
  const auto weak = range_test(gfund(from_atlas_f4(qv({Rational(-3, 2), 1, -2, 0}))), q, *rf);
  o.require(good == RangeVerdict::Good, "first parameter Good");
  o.require(weak == RangeVerdict::WeaklyGood, "second parameter WeaklyGood");
  o.note(std::string(name(good)) + ", " + std::string(name(weak)));
  return o;
}

Outcome pencil_fixture() {
  Outcome o;
  const auto rf = fresh("e6_2");
  const Weight lambda = gfund(IntVec{0, 0, 1, 1, 0, 2});
  PencilOptions opt;
  opt.lambda = lambda;
  const auto p = pencil_min_spin(kfund(IntVec{0, 3, 0, 0, 0, 0}), *rf, opt);
  const Rational lsq = rf->system().norm_sq(lambda.coords);
  o.require(lsq == 36, "|Lambda|^2 = 36");
  o.require(p.min_norm_sq == 42, "minimum 42");
  o.require(!p.inconclusive && p.tail_nondecreasing, "conclusive search");
  o.require(dirac_test(p.min_norm_sq, lambda, rf->system()) == DiracVerdict::StrictlyAbove, "StrictlyAbove");
  o.note("min " + format(p.min_norm_sq) + " > " + format(lsq) + " over " + std::to_string(p.values.size()) + " steps");
  return o;
}

Outcome binary_enumeration() {
  Outcome o;
  const auto rf = fresh("e6_2");
  const std::set<IntVec> listed{
      {0, 0, 1, 1, 0, 1}, {0, 0, 1, 1, 1, 0}, {0, 0, 1, 1, 1, 1}, {0, 1, 1, 0, 1, 0}, {0, 1, 1, 0, 1, 1},
      {0, 1, 1, 1, 0, 1}, {0, 1, 1, 1, 1, 0}, {0, 1, 1, 1, 1, 1}, {1, 0, 0, 1, 0, 1}, {1, 0, 0, 1, 1, 0},
      {1, 0, 0, 1, 1, 1}, {1, 0, 1, 1, 0, 1}, {1, 0, 1, 1, 1, 0}, {1, 0, 1, 1, 1, 1}, {1, 1, 0, 1, 0, 1},
      {1, 1, 0, 1, 1, 0}, {1, 1, 0, 1, 1, 1}, {1, 1, 1, 0, 1, 0}, {1, 1, 1, 0, 1, 1}, {1, 1, 1, 1, 0, 1},
      {1, 1, 1, 1, 1, 0}};
  const auto got = omega_set({0, 1, 2, 3, 4, 5}, *rf, true);
  std::set<IntVec> coords;
  for (const auto& c : got) coords.insert(c.coords);
  o.require(got.size() == 21 && coords == listed, "the 21 listed vectors");
  o.note(std::to_string(got.size()) + " vectors");
  return o;
}

Outcome string_counting() {
  Outcome o;
  std::ifstream in(kData + "/e6_2_strings.tsv");
  o.require(static_cast<bool>(in), "data/e6_2_strings.tsv readable");
  if (!in) return o;
  const auto sc = count_strings(CountTable::read_tsv(in, 6));
  o.require(sc.N == std::vector<std::uint64_t>{36, 60, 80, 115, 151, 134}, "N_0..N_5 = 36,60,80,115,151,134");
  o.require(sc.total == 576, "total 576");
  o.note("N_5 = " + std::to_string(sc.N.size() == 6 ? sc.N[5] : 0) + ", total " + std::to_string(sc.total));
  return o;
}

Outcome table_validation() {
  Outcome o;
  const auto rf = fresh("e6_2");
  const auto records = ingest_tables(kData + "/e6_2_tables.tsv", *rf);
  const auto report = validate(records, *rf);
  std::map<std::string, std::pair<int, int>> tally;  // check -> (pass, total)
  for (const auto& c : report.results) {
    auto& t = tally[c.check];
    t.first += c.pass;
    ++t.second;
  }
  for (const char* check : {"spin_norm", "parity", "usmall", "nu_norm_sq"}) {
    const auto& t = tally[check];
    o.require(t.second > 0 && t.first == t.second, std::string(check) + " on every record");
  }
  std::size_t lkts = 0;
  for (const auto& r : records) lkts += r.spin_lkts.size();
  o.note(std::to_string(records.size()) + " records, " + std::to_string(lkts) + " spin LKTs, " +
         std::to_string(report.failures()) + " failed checks of " + std::to_string(report.results.size()));
  return o;
}

Outcome cancellation() {
  Outcome o;
  const auto rf = fresh("e6_2");
  const auto& rs = rf->system();
  const auto list = rho_n_list(*rf);
  const std::vector<Weight> lkts{kfund(IntVec{2, 0, 2, 1, 0, 2}), kfund(IntVec{2, 1, 1, 0, 1, 4}),
                                 kfund(IntVec{3, 0, 1, 1, 1, 1}), kfund(IntVec{3, 1, 0, 0, 2, 3})};
  for (const auto& mu : lkts)
    o.require(std::find(list.begin(), list.end(), mu) != list.end(), bracketed(mu.coords) + " in rho_n list");
  for (const auto& [text, len] : {std::pair{"s2s4s5s6s3s4s5s1", 8u}, std::pair{"s2s4s5s6s3s4s5s2s1", 9u}}) {
    const auto word = parse_word(text);
    const auto w = rs.element_from_word(word);
    o.require(word.size() == len && w.length() == len, std::string(text) + " reduced of length " + std::to_string(len));
    o.require(std::find(rf->w1().begin(), rf->w1().end(), w) != rf->w1().end(), std::string(text) + " in W^1");
  }
  const auto four = di_parity(lkts, gfund(IntVec{1, 0, 0, 1, 0, 1}), *rf);
  int even = 0, odd = 0;
  for (const auto& e : four.entries) {
    even += e.parity == Parity::Even;
    odd += e.parity == Parity::Odd;
  }
  o.require(even == 2 && odd == 2, "2-2 split");
  o.require(four.verdict == DiVerdict::Cancels, "four K-types cancel");
  const auto pair = di_parity({kfund(IntVec{1, 1, 1, 1, 1, 1}), kfund(IntVec{2, 0, 2, 0, 2, 2})},
                              gfund(IntVec{0, 1, 1, 0, 1, 0}), *rf);
  o.require(pair.verdict == DiVerdict::Cancels, "pair cancels");
  o.note(std::to_string(even) + "-" + std::to_string(odd) + " " + std::string(name(four.verdict)) + "; pair " +
         std::string(name(pair.verdict)));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  int weights = 0, parabolics = 0, hp = 0;
  for (const char* g : {"e6_2", "f4_split", "sl2r"}) {
    const auto rf = fresh(g);
    const auto a = property::oracle_agreement(*rf, property::kWeightsPerGroup, 1009);
    o.require(a.prv_mismatch == 0, std::string(g) + " prv_dominant");
    o.require(a.spin_mismatch == 0, std::string(g) + " spin_norm_sq");
    o.require(a.dominant_mismatch == 0, std::string(g) + " dominant_rep");
    weights += a.trials;
    const auto p = property::parabolic_split(*rf, property::kParabolicsPerGroup, 1013);
    o.require(p.failures == 0, std::string(g) + " rho(u) split");
    parabolics += p.trials;
  }
  for (const char* g : {"e6_2", "f4_split"}) {
    const auto h = property::hp_invariance(*fresh(g), property::kHpTrialsPerGroup, 1019);
    o.require(h.failures == 0, std::string(g) + " hp_check invariance");
    hp += h.trials;
  }
  o.note(std::to_string(weights) + " weights, " + std::to_string(parabolics) + " parabolics, " + std::to_string(hp) +
         " HP orbit pairs");
  return o;
}

Outcome phi_count() {
  Outcome o;
  const auto rf = fresh("e6_2");
  const auto r = enumerate_phi(*rf, full_support_involutions(rf->system()));
  const auto delta = static_cast<long long>(r.members.size()) - 58061;
  o.require(delta == 0, "|Phi| = 58061");
  o.note("|Phi| = " + std::to_string(r.members.size()) + " against 58061, delta " + std::to_string(delta));
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "coset count", 30, coset_count},
      {2, "dimension checks", 0, dimensions},
      {3, "F4 fixtures", 5, f4_fixtures},
      {4, "range fixtures", 0, range_fixtures},
      {5, "pencil fixture", 10, pencil_fixture},
      {6, "binary HP enumeration", 0, binary_enumeration},
      {7, "string counting", 0, string_counting},
      {8, "table validation", 120, table_validation},
      {9, "cancellation fixtures", 0, cancellation},
      {10, "oracle equivalence", 300, oracle_equivalence},
      {11, "Phi enumeration (informational)", 600, phi_count, true},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.note("over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit");
    }
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << ": " << o.detail << " [" << t.str()
              << " s]" << std::endl;
    if (!c.informational) all = all && o.pass;
  }
  return all ? 0 : 1;
}
