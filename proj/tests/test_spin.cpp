#include <random>

#include "doctest.h"
#include "dirac/spin.hpp"
#include "oracles.hpp"

using namespace dirac;

namespace {

RealFormPtr preset(const std::string& name) { return RealFormData::build(builtin_presets().at(name)); }

QVec kq(std::initializer_list<int> xs) {
  QVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("prv_dominant") {
  const auto rf = preset("e6_2");
  const Weight mu = kfund(kq({1, 0, 2, 0, 3, 1}));
  CHECK(prv_dominant(mu, *rf) == mu);
  for (std::size_t j = 0; j < rf->rho_n().size(); ++j) {
    const Weight rn = kfund(rf->to_kfund(rf->rho_n()[j]));
    CHECK(prv_dominant(gfund(rf->to_gfund(rn) - rf->rho_n()[j]), *rf).coords == QVec(6, Rational(0)));
  }
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const QVec v = to_q(oracle::random_intvec(rng, 6, -8, 8));
    const Weight once = prv_dominant(kfund(v), *rf);
    CHECK(prv_dominant(once, *rf) == once);
  }
}

TEST_CASE("spin norm fixtures") {
  SUBCASE("F4 bottom layer") {
    const auto rf = preset("f4_split");
    const auto sn = spin_norm_sq(kfund(kq({0, 1, 0, 8})), *rf);
    CHECK(sn.norm_sq == 15);
    // atlas's [0,1,0,1] in Knapp's order
    const Weight lambda = gfund(kq({1, 0, 1, 0}));
    CHECK(rf->system().norm_sq(lambda.coords) == 11);
    CHECK(dirac_test(sn.norm_sq, lambda, rf->system()) == DiracVerdict::StrictlyAbove);
  }
  SUBCASE("rho_n^(j) reaches |rho_K|^2") {
    const auto rf = preset("e6_2");
    const Rational rho_k_sq = rf->system().norm_sq(rf->rho_k());
    for (std::size_t j = 0; j < rf->rho_n().size(); ++j) {
      const auto sn = spin_norm_sq(gfund(rf->rho_n()[j]), *rf);
      CHECK(sn.norm_sq == rho_k_sq);
      const auto am = sn.argmin();
      CHECK(std::find(am.begin(), am.end(), j) != am.end());
    }
  }
  SUBCASE("E6(2) equality cases") {
    const auto rf = preset("e6_2");
    const Weight lambda = gfund(kq({1, 0, 0, 1, 0, 1}));
    CHECK(rf->system().norm_sq(lambda.coords) == 18);
    for (const auto& mu : {kq({2, 0, 2, 1, 0, 2}), kq({2, 1, 1, 0, 1, 4}), kq({0, 0, 1, 0, 0, 9}), kq({1, 1, 1, 1, 1, 3})}) {
      const auto sn = spin_norm_sq(kfund(mu), *rf, lambda);
      CHECK(sn.norm_sq == 18);
      CHECK(dirac_test(sn.norm_sq, lambda, rf->system()) == DiracVerdict::Equality);
    }
    const Weight minimal = gfund(kq({1, 1, 1, 0, 1, 1}));
    CHECK(rf->system().norm_sq(minimal.coords) == 42);
    const int expected[] = {58, 42, 42, 42, 42, 60};
    for (int n = 0; n <= 5; ++n)
      CHECK(spin_norm_sq(kfund(kq({0, 0, n, 0, 0, 2 + n})), *rf).norm_sq == expected[n]);
  }
  SUBCASE("non-dominant input is rejected") {
    const auto rf = preset("e6_2");
    CHECK_THROWS_AS(spin_norm_sq(kfund(kq({-1, 0, 0, 0, 0, 0})), *rf), DomainError);
  }
}

TEST_CASE("spin norm witnesses") {
  const auto rf = preset("e6_2");
  const auto& rs = rf->system();
  std::mt19937_64 rng(43);
  int with_witness = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Weight lambda = gfund(to_q(oracle::random_intvec(rng, 6, 0, 2)));
    const Weight mu = kfund(to_q(oracle::random_intvec(rng, 6, 0, 4)));
    const auto sn = spin_norm_sq(mu, *rf, lambda);
    for (const auto& t : sn.minimizers) {
      const QVec x = rf->to_gfund(t.conjugate) + rf->rho_k();
      CHECK(rs.norm_sq(x) == sn.norm_sq);
      if (t.w) {
        ++with_witness;
        CHECK(t.w->apply(lambda.coords) == x);
      } else {
        CHECK_FALSE(dominant_rep(gfund(x), rs).weight == dominant_rep(lambda, rs).weight);
      }
    }
  }
  CHECK(with_witness > 0);
}

TEST_CASE("dirac_test") {
  CHECK(dirac_test(Rational(5), Rational(7)) == DiracVerdict::Violated);
  CHECK(dirac_test(Rational(7), Rational(7)) == DiracVerdict::Equality);
  CHECK(dirac_test(Rational(8), Rational(7)) == DiracVerdict::StrictlyAbove);
  CHECK(dirac_test(Rational(0), Rational(0)) != DiracVerdict::Violated);
  CHECK(dirac_test(Rational(3), Rational(0)) != DiracVerdict::Violated);
  // invariance under rescaling the form
  const auto rs = build_root_system('E', 6);
  const auto scaled = rs->with_form_scale(Rational(5, 3));
  const QVec lambda{1, 0, 0, 1, 0, 1};
  for (int s : {17, 18, 19}) {
    const Rational spin(s);
    CHECK(dirac_test(spin, gfund(lambda), *rs) ==
          dirac_test(Rational(5, 3) * spin, gfund(lambda), *scaled));
  }
}

TEST_CASE("pencil") {
  const auto rf = preset("e6_2");
  SUBCASE("from [0,3,0,0,0,0]") {
    const Weight lambda = gfund(kq({0, 0, 1, 1, 0, 2}));
    CHECK(rf->system().norm_sq(lambda.coords) == 36);
    PencilOptions opt;
    opt.lambda = lambda;
    const auto p = pencil_min_spin(kfund(kq({0, 3, 0, 0, 0, 0})), *rf, opt);
    CHECK(p.min_norm_sq == 42);
    CHECK(p.argmin == 0);
    CHECK_FALSE(p.inconclusive);
    CHECK(p.tail_nondecreasing);
    const std::vector<Rational> head{42, 42, 42, 52, 66, 88, 114, 144};
    REQUIRE(p.values.size() >= head.size());
    for (std::size_t n = 0; n < head.size(); ++n) CHECK(p.values[n] == head[n]);
    CHECK(dirac_test(p.min_norm_sq, lambda, rf->system()) == DiracVerdict::StrictlyAbove);
  }
  SUBCASE("equality start") {
    const Weight mu = kfund(kq({2, 0, 2, 1, 0, 2}));
    const auto p = pencil_min_spin(mu, *rf);
    CHECK(p.min_norm_sq <= 18);
    CHECK(p.values[0] == 18);
  }
  SUBCASE("a short cap is flagged while still decreasing") {
    // the minimal representation's pencil from [0,0,0,0,0,2] starts at 58
    // and drops to 42
    PencilOptions opt;
    opt.cap = 1;
    const auto p = pencil_min_spin(kfund(kq({0, 0, 0, 0, 0, 2})), *rf, opt);
    CHECK(p.inconclusive);
    CHECK(p.min_norm_sq == 42);
    opt.cap = 7;
    CHECK_FALSE(pencil_min_spin(kfund(kq({0, 0, 0, 0, 0, 2})), *rf, opt).inconclusive);
    PencilOptions tiny;
    tiny.max_steps = 1;
    CHECK(pencil_min_spin(kfund(kq({0, 0, 0, 0, 0, 2})), *rf, tiny).inconclusive);
  }
  SUBCASE("no direction configured") {
    GroupPreset p = builtin_presets().at("f4_split");
    p.pencil_beta.clear();
    const auto bare = RealFormData::build(p);
    CHECK_THROWS_AS(pencil_min_spin(kfund(kq({0, 0, 0, 0})), *bare), DomainError);
  }
}

TEST_CASE("u-small") {
  const auto rf = preset("e6_2");
  CHECK(usmall_test(kfund(kq({0, 0, 0, 0, 0, 0})), *rf));
  CHECK(usmall_test(gfund(Rational(2) * rf->rho()), *rf));
  CHECK_FALSE(usmall_test(gfund(Rational(2) * rf->rho() + kq({1, 0, 0, 0, 0, 0})), *rf));
  CHECK_FALSE(usmall_test(kfund(kq({0, 0, 0, 0, 0, 40})), *rf));
  // W-invariance of the test
  std::mt19937_64 rng(47);
  const auto& table = rf->system().weyl_table();
  for (int trial = 0; trial < 100; ++trial) {
    const QVec v = to_q(oracle::random_intvec(rng, 6, -3, 3));
    const auto m = table.matrix(rng() % table.size());
    CHECK(usmall_test(gfund(v), *rf) == usmall_test(gfund(m * v), *rf));
  }
}

TEST_CASE("Dirac index parity") {
  const auto rf = preset("e6_2");
  SUBCASE("four trivial K~-types") {
    const std::vector<Weight> lkts{kfund(kq({2, 0, 2, 1, 0, 2})), kfund(kq({2, 1, 1, 0, 1, 4})),
                                   kfund(kq({3, 0, 1, 1, 1, 1})), kfund(kq({3, 1, 0, 0, 2, 3}))};
    const auto r = di_parity(lkts, gfund(kq({1, 0, 0, 1, 0, 1})), *rf);
    REQUIRE(r.entries.size() == 4);
    CHECK(r.entries[0].parity == Parity::Even);
    CHECK(r.entries[1].parity == Parity::Even);
    CHECK(r.entries[2].parity == Parity::Odd);
    CHECK(r.entries[3].parity == Parity::Odd);
    CHECK(r.verdict == DiVerdict::Cancels);
    for (const auto& e : r.entries) CHECK(e.ktilde.coords == QVec(6, Rational(0)));
    // the dual indices carry these two reduced words
    const auto& rs = rf->system();
    const auto w22 = rs.element_from_word(parse_word("s2s4s5s6s3s4s5s1"));
    const auto w26 = rs.element_from_word(parse_word("s2s4s5s6s3s4s5s2s1"));
    CHECK(rf->w1()[r.entries[0].j_dual[0]] == w22);
    CHECK(rf->w1()[r.entries[2].j_dual[0]] == w26);
  }
  SUBCASE("pair from a weakly good string") {
    const std::vector<Weight> lkts{kfund(kq({1, 1, 1, 1, 1, 1})), kfund(kq({2, 0, 2, 0, 2, 2}))};
    const auto r = di_parity(lkts, gfund(kq({0, 1, 1, 0, 1, 0})), *rf);
    CHECK(r.even == 1);
    CHECK(r.odd == 1);
    CHECK(r.verdict == DiVerdict::Cancels);
  }
  SUBCASE("single entry never cancels") {
    const auto r = di_parity({kfund(kq({2, 0, 2, 1, 0, 2}))}, gfund(kq({1, 0, 0, 1, 0, 1})), *rf);
    CHECK(r.verdict == DiVerdict::DoesNotCancel);
  }
  SUBCASE("terms of both parities at a singular Lambda") {
    // Lambda = [1,1,1,0,1,1] is singular; the middle two weights have
    // minimizing indices of both parities.
    std::vector<Weight> lkts;
    for (int n = 1; n <= 4; ++n) lkts.push_back(kfund(kq({0, 0, n, 0, 0, 2 + n})));
    const auto r = di_parity(lkts, gfund(kq({1, 1, 1, 0, 1, 1})), *rf);
    CHECK(r.entries[0].parity == Parity::Odd);
    CHECK(r.entries[1].parity == Parity::Mixed);
    CHECK(r.entries[2].parity == Parity::Mixed);
    CHECK(r.entries[3].parity == Parity::Even);
    CHECK(r.even == r.odd);
    CHECK(r.verdict == DiVerdict::Cancels);
  }
  SUBCASE("inequality not attained") {
    CHECK_THROWS_AS(di_parity({kfund(kq({0, 0, 0, 0, 0, 2}))}, gfund(kq({1, 1, 1, 0, 1, 1})), *rf), DomainError);
  }
}
