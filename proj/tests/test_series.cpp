#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "dirac/induction.hpp"
#include "dirac/series.hpp"
#include "oracles.hpp"

using namespace dirac;

namespace {

RealFormPtr e6() { return RealFormData::build(builtin_presets().at("e6_2")); }

const std::set<IntVec>& listed_binary() {
  static const std::set<IntVec> v{
      {0, 0, 1, 1, 0, 1}, {0, 0, 1, 1, 1, 0}, {0, 0, 1, 1, 1, 1}, {0, 1, 1, 0, 1, 0}, {0, 1, 1, 0, 1, 1},
      {0, 1, 1, 1, 0, 1}, {0, 1, 1, 1, 1, 0}, {0, 1, 1, 1, 1, 1}, {1, 0, 0, 1, 0, 1}, {1, 0, 0, 1, 1, 0},
      {1, 0, 0, 1, 1, 1}, {1, 0, 1, 1, 0, 1}, {1, 0, 1, 1, 1, 0}, {1, 0, 1, 1, 1, 1}, {1, 1, 0, 1, 0, 1},
      {1, 1, 0, 1, 1, 0}, {1, 1, 0, 1, 1, 1}, {1, 1, 1, 0, 1, 0}, {1, 1, 1, 0, 1, 1}, {1, 1, 1, 1, 0, 1},
      {1, 1, 1, 1, 1, 0}};
  return v;
}

std::set<IntVec> coords_of(const std::vector<InfCharCandidate>& cs) {
  std::set<IntVec> out;
  for (const auto& c : cs) out.insert(c.coords);
  return out;
}

const PhiResult& phi_full() {
  static const PhiResult r = [] {
    const auto rf = e6();
    return enumerate_phi(*rf, full_support_involutions(rf->system()));
  }();
  return r;
}

}  // namespace

TEST_CASE("lemma filter") {
  const auto rf = e6();
  CHECK(lemma_filter({1, 0, 0, 1, 0, 1}, *rf));
  CHECK_FALSE(lemma_filter({0, 1, 0, 1, 1, 1}, *rf));
  for (int bits = 0; bits < 64; ++bits) {
    IntVec v(6);
    for (int i = 0; i < 6; ++i) v[static_cast<std::size_t>(i)] = (bits >> i) & 1;
    const auto [a, b, c, d, e, f] = std::tuple(v[0], v[1], v[2], v[3], v[4], v[5]);
    const bool truth = (a || c) && (b || d) && (c || d) && (d || e) && (e || f);
    CHECK(lemma_filter(v, *rf) == truth);
  }
}

TEST_CASE("binary sets") {
  const auto rf = e6();
  const auto full = omega_set({0, 1, 2, 3, 4, 5}, *rf, true);
  CHECK(full.size() == 21);
  CHECK(coords_of(full) == listed_binary());
  for (const auto& c : full) {
    CHECK(lemma_filter(c.coords, *rf));
    CHECK(c.support == 63u);
  }
  const auto none = omega_set({}, *rf);
  REQUIRE(none.size() == 1);
  CHECK(none[0].coords == IntVec(6, 1));
  // without the zero restriction the all-ones vector joins
  CHECK(omega_set({0, 1, 2, 3, 4, 5}, *rf).size() == 22);
  // coordinates outside S are exactly 1
  for (const auto& c : omega_set({1, 3}, *rf))
    for (std::size_t i : {0u, 2u, 4u, 5u}) CHECK(c.coords[i] == 1);
  // lexicographic order
  CHECK(std::is_sorted(full.begin(), full.end(), [](const auto& x, const auto& y) { return x.coords < y.coords; }));
  CHECK_THROWS_AS(omega_set({6}, *rf), DomainError);
}

TEST_CASE("involutions with full support") {
  const auto rf = e6();
  const auto fs = full_support_involutions(rf->system());
  CHECK(fs.size() == 571);
  for (const auto& w : fs) {
    CHECK(w.matrix() * w.matrix() == IntMatrix::identity(6));
    std::set<int> gens(w.word().begin(), w.word().end());
    CHECK(gens.size() == 6);
  }
}

TEST_CASE("Phi under the full-support relaxation") {
  const auto rf = e6();
  const auto& r = phi_full();
  MESSAGE("|Phi| = " << r.members.size() << " (58061 expected)");
  CHECK(r.members.size() == 58061);
  CHECK(r.warnings.empty());
  std::set<IntVec> members = coords_of(r.members);
  CHECK(members.size() == r.members.size());
  CHECK(std::is_sorted(r.members.begin(), r.members.end(),
                       [](const auto& x, const auto& y) { return x.coords < y.coords; }));
  CHECK_FALSE(members.count(IntVec(6, 1)));

  std::set<IntVec> max_one;
  for (const auto& v : members)
    if (*std::max_element(v.begin(), v.end()) == 1) max_one.insert(v);
  CHECK(max_one == listed_binary());
  for (const auto& v : coords_of(omega_set({0, 1, 2, 3, 4, 5}, *rf, true))) CHECK(members.count(v));

  // the diagram automorphism preserves every filter
  const auto& fold = rf->preset().fold;
  for (const auto& v : members) {
    IntVec u(6);
    for (std::size_t i = 0; i < 6; ++i) u[i] = v[static_cast<std::size_t>(fold[i])];
    if (!members.count(u)) {
      FAIL("fold image missing");
      break;
    }
  }
  for (const auto& c : r.members) {
    REQUIRE(c.lemma_pass);
    REQUIRE(c.norm_pass);
    REQUIRE(*std::min_element(c.coords.begin(), c.coords.end()) == 0);
  }
}

TEST_CASE("Phi agrees with a direct scan under a small bound") {
  const auto rf = e6();
  const auto& rs = rf->system();
  auto fs = full_support_involutions(rs);
  fs.resize(60);
  PhiOptions opt;
  opt.norm_bound = Rational(120);
  opt.caps = std::vector<std::int64_t>(6, 5);
  opt.threads = 3;
  const auto r = enumerate_phi(*rf, fs, opt);
  // integer oracle: 3 G is integral for E6 with the shipped form
  const QMatrix& gram = rs.gram();
  std::vector<IntMatrix> moves;
  for (const auto& w : fs) {
    IntMatrix m = IntMatrix::identity(6);
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b) m(a, b) -= w.matrix()(a, b);
    moves.push_back(m);
  }
  IntMatrix G(6, 6);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      const Rational g3 = 3 * gram(a, b);
      REQUIRE(g3.get_den() == 1);
      G(a, b) = g3.get_num().get_si();
    }
  std::set<IntVec> expected;
  IntVec v(6, 0);
  auto scan = [&](auto&& self, std::size_t d) -> void {
    if (d == 6) {
      if (*std::min_element(v.begin(), v.end()) != 0 || !lemma_filter(v, *rf)) return;
      for (const auto& m : moves) {
        const IntVec x = m * v;
        const IntVec gx = G * x;
        std::int64_t n = 0;
        for (std::size_t a = 0; a < 6; ++a) n += x[a] * gx[a];
        if (n <= 3 * 120) {
          expected.insert(v);
          return;
        }
      }
      return;
    }
    for (std::int64_t x = 0; x <= r.caps[d]; ++x) {
      v[d] = x;
      self(self, d + 1);
    }
    v[d] = 0;
  };
  scan(scan, 0);
  CHECK(coords_of(r.members) == expected);
  CHECK(!expected.empty());

  // single-threaded run gives the same sequence
  opt.threads = 1;
  const auto r1 = enumerate_phi(*rf, fs, opt);
  CHECK(coords_of(r1.members) == coords_of(r.members));

  // supersets of involutions never shrink the result
  auto fewer = fs;
  fewer.resize(25);
  PhiOptions o2;
  o2.norm_bound = Rational(120);
  o2.caps = r.caps;
  const auto small = coords_of(enumerate_phi(*rf, fewer, o2).members);
  const auto big = coords_of(r.members);
  CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
}

TEST_CASE("supplied caps that bind raise a warning") {
  const auto rf = e6();
  PhiOptions opt;
  opt.caps = std::vector<std::int64_t>(6, 2);
  auto fs = full_support_involutions(rf->system());
  const auto r = enumerate_phi(*rf, fs, opt);
  CHECK_FALSE(r.warnings.empty());
  for (const auto& c : r.members)
    for (auto x : c.coords) CHECK(x <= 2);
}

TEST_CASE("HP-passing members are integral") {
  const auto rf = e6();
  const auto& r = phi_full();
  std::mt19937_64 rng(83);
  int passing = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& c = r.members[rng() % r.members.size()];
    if (const auto w = hp_check(gfund(to_q(c.coords)), *rf)) {
      ++passing;
      CHECK(is_integral(w->delta.coords));
    }
  }
  MESSAGE(passing << " of 200 sampled members pass the HP condition");
}

TEST_CASE("string counts") {
  std::ifstream in(std::string(DIRAC_SOURCE_DIR) + "/data/e6_2_strings.tsv");
  REQUIRE(in);
  const auto table = CountTable::read_tsv(in, 6);
  const auto sc = count_strings(table);
  CHECK(sc.N == std::vector<std::uint64_t>{36, 60, 80, 115, 151, 134});
  CHECK(sc.total == 576);
  std::uint64_t n5 = 0;
  for (const auto& [s, n] : table.entries())
    if (s.size() == 5) n5 += n;
  CHECK(n5 == 2 * 45 + 29 + 2 * 7 + 1);

  std::ostringstream out;
  table.write_tsv(out);
  std::ifstream again(std::string(DIRAC_SOURCE_DIR) + "/data/e6_2_strings.tsv");
  std::stringstream original;
  original << again.rdbuf();
  CHECK(out.str() == original.str());

  CHECK(count_strings(CountTable(6)).total == 0);
  // the full support is not a string start
  CountTable t(6);
  t.set({0, 1, 2, 3, 4, 5}, 9);
  t.set({2}, 4);
  CHECK(count_strings(t).total == 4);
}

TEST_CASE("count table errors") {
  CountTable t(6);
  CHECK_THROWS_AS(t.set({6}, 1), DomainError);
  CHECK_THROWS_AS(t.set({1, 1}, 1), DomainError);
  t.set({1, 2}, 3);
  CHECK_THROWS_AS(t.set_level(2, 5), DomainError);
  t.set_level(3, 5);
  CHECK_THROWS_AS(t.set({0, 1, 2}, 1), DomainError);
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return CountTable::read_tsv(in, 6);
  };
  CHECK_THROWS_AS(parse("support\tcount\n0,x\t3\n"), DomainError);
  CHECK_THROWS_AS(parse("support\tcount\n0\t-3\n"), DomainError);
  CHECK_THROWS_AS(parse("wrong\theader\n"), DomainError);
  CHECK_THROWS_AS(parse("support\tcount\n0\t1\t2\n"), DomainError);
  try {
    parse("support\tcount\n0,1\t2\n0,9\t1\n");
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
