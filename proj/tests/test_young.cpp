#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "folap/young.hpp"

using namespace folap;

TEST_CASE("power family closed forms") {
  auto yf = YoungFunction::power(4.0);
  CHECK(yf.A(2.0) == 16.0);
  CHECK(yf.a(2.0) == 32.0);
  CHECK(yf.a_prime(2.0) == 48.0);
  CHECK(yf.A(0.0) == 0.0);
  CHECK(yf.a(0.0) == 0.0);
  CHECK(yf.name() == "power(4)");

  // even/odd extension is bit-exact
  for (double t : {0.7301, 2.0, 13.37, 1e-8}) {
    CHECK(yf.A(-t) == yf.A(t));
    CHECK(yf.a(-t) == -yf.a(t));
    CHECK(yf.a_prime(-t) == yf.a_prime(t));
  }

  auto y3 = YoungFunction::power(3.0);
  CHECK(y3.A(2.0) == 8.0);
  CHECK(y3.a(2.0) == 12.0);
}

TEST_CASE("factory validation") {
  CHECK_THROWS_AS(YoungFunction::power(1.0), DomainError);
  CHECK_THROWS_AS(YoungFunction::power(0.5), DomainError);
  CHECK_THROWS_AS(YoungFunction::sum_of_powers(1.0, 1.0, 1.0, 5.0), DomainError);
  CHECK_THROWS_AS(YoungFunction::sum_of_powers(-1.0, 3.0, 1.0, 5.0), DomainError);
  CHECK_THROWS_AS(YoungFunction::sum_of_powers(0.0, 3.0, 0.0, 5.0), DomainError);
  CHECK_THROWS_AS(YoungFunction::power_log(1.0), DomainError);
}

TEST_CASE("sum of powers, raw and normalized") {
  auto raw = YoungFunction::sum_of_powers(1.0, 3.0, 1.0, 5.0);
  CHECK(raw.A(1.0) == 2.0);
  CHECK(raw.a(1.0) == 8.0);
  CHECK(raw.a_prime(1.0) == 26.0);
  CHECK(raw.name() == "sum_of_powers(1,3,1,5)");

  auto nrm = YoungFunction::sum_of_powers_normalized(1.0, 3.0, 1.0, 5.0);
  CHECK(nrm.A(1.0) == 1.0);
  CHECK(nrm.a(1.0) == 4.0);
  CHECK(nrm.a_prime(1.0) == 13.0);
  CHECK(nrm.name() == "sum_of_powers_normalized(1,3,1,5)");
}

TEST_CASE("power-log values") {
  auto yf = YoungFunction::power_log(3.0);
  CHECK(yf.A(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // a(1) = (3 log 2 + 1/2) / log 2
  CHECK(yf.a(1.0) == doctest::Approx(3.0 + 0.5 / std::log(2.0)).epsilon(1e-14));
  CHECK(yf.A(0.0) == 0.0);
  CHECK(yf.a(0.0) == 0.0);
}

TEST_CASE("growth indices") {
  auto y4 = YoungFunction::power(4.0);
  CHECK(y4.indices().p_fn == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(y4.indices().q_fn == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(y4.indices().p_dd == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(y4.indices().q_dd == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(y4.indices().admissible_for(0.5));
  CHECK_FALSE(y4.indices().admissible_for(0.0));
  CHECK_FALSE(y4.indices().admissible_for(1.0));

  // p = 2.5 clears s = 0.5 (1/(1-s) = 2) but not s = 0.65 (1/(1-s) ~ 2.86)
  auto y25 = YoungFunction::power(2.5);
  CHECK(y25.indices().admissible_for(0.5));
  CHECK_FALSE(y25.indices().admissible_for(0.65));

  auto pl = YoungFunction::power_log(3.0);
  CHECK(pl.indices().p_fn > 3.0);
  CHECK(pl.indices().p_fn < 3.2);
  CHECK(pl.indices().q_fn <= 4.0 + 1e-6);
  CHECK(pl.indices().q_fn > 3.9);
  CHECK(pl.indices().admissible_for(0.5));
  CHECK_FALSE(pl.indices().admissible_for(0.7));

  // mixture: ratio runs from p at 0 to q at infinity
  auto sp = YoungFunction::sum_of_powers_normalized(1.0, 3.0, 1.0, 5.0);
  CHECK(sp.indices().p_wide() == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(sp.indices().q_wide() == doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("index estimation validation") {
  auto yf = YoungFunction::power(4.0);
  CHECK_THROWS_AS(estimate_indices(yf, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(estimate_indices(yf, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(estimate_indices(yf, 1e-4, 1e4, 1), DomainError);
}

TEST_CASE("argument scaling") {
  auto yf = YoungFunction::power(4.0);
  auto sc = yf.scaled(16.0, 0.5);  // sigma = 16^0.5 = 4
  CHECK(sc.scale() == 4.0);
  CHECK(sc.A(4.0) == 4.0);        // sigma * A(1)
  CHECK(sc.a(4.0) == 4.0);        // a(1)
  CHECK(sc.a_prime(4.0) == 3.0);  // a'(1) / 4
  CHECK(sc.name().find("sigma") != std::string::npos);

  // indices are invariant under argument scaling (copied, not re-estimated)
  CHECK(sc.indices().p_fn == yf.indices().p_fn);
  CHECK(sc.indices().q_fn == yf.indices().q_fn);

  // scalings compose multiplicatively
  CHECK(yf.scaled(4.0, 0.5).scaled(4.0, 0.5).scale() == 4.0);

  CHECK_THROWS_AS(yf.scaled(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(yf.scaled(1.0, 1.5), DomainError);
}

TEST_CASE("power terms of the density") {
  auto y4 = YoungFunction::power(4.0);
  auto t4 = y4.power_terms();
  REQUIRE(t4.size() == 1);
  CHECK(t4[0].coef == 4.0);
  CHECK(t4[0].exp == 3.0);

  auto raw = YoungFunction::sum_of_powers(1.0, 3.0, 1.0, 5.0).power_terms();
  REQUIRE(raw.size() == 2);
  CHECK(raw[0].coef == 3.0);
  CHECK(raw[0].exp == 2.0);
  CHECK(raw[1].coef == 5.0);
  CHECK(raw[1].exp == 4.0);

  auto nrm = YoungFunction::sum_of_powers_normalized(1.0, 3.0, 1.0, 5.0).power_terms();
  REQUIRE(nrm.size() == 2);
  CHECK(nrm[0].coef == 1.5);
  CHECK(nrm[1].coef == 2.5);

  CHECK(YoungFunction::power_log(3.0).power_terms().empty());

  // scaled density a(t/2) = (4/8) t^3
  auto sc = y4.scaled(4.0, 0.5).power_terms();
  REQUIRE(sc.size() == 1);
  CHECK(sc[0].coef == 0.5);
  CHECK(sc[0].exp == 3.0);
}

TEST_CASE("eval dispatcher") {
  auto yf = YoungFunction::power(4.0);
  CHECK(eval(yf, EvalWhich::A, 2.0) == yf.A(2.0));
  CHECK(eval(yf, EvalWhich::a, 2.0) == yf.a(2.0));
  CHECK(eval(yf, EvalWhich::a_prime, 2.0) == yf.a_prime(2.0));
}

TEST_CASE("complementary function") {
  // A = t^2: a^-1(s) = s/2, so conj(2) = 1
  CHECK(complementary(YoungFunction::power(2.0), 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  // A = t^4: conj(4) = int_0^4 (s/4)^(1/3) ds = 3
  auto y4 = YoungFunction::power(4.0);
  CHECK(complementary(y4, 4.0) == doctest::Approx(3.0).epsilon(1e-9));
  // conj(1) = 4^(-1/3) - 4^(-4/3) = 0.75 * 4^(-1/3)
  CHECK(complementary(y4, 1.0) == doctest::Approx(0.4724703937105774).epsilon(1e-10));
  CHECK(complementary(y4, 0.0) == 0.0);
  CHECK_THROWS_AS(complementary(y4, -1.0), DomainError);
}

TEST_CASE("young inequality holds on random samples") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e3));
  for (auto yf : {YoungFunction::power(4.0), YoungFunction::power_log(3.0)}) {
    for (int k = 0; k < 1000; ++k) {
      double s = std::exp(logu(rng));
      double t = std::exp(logu(rng));
      auto chk = check_young_inequality(yf, s, t);
      CHECK(chk.holds);
      CHECK(chk.lhs <= chk.rhs * (1.0 + 1e-12) + 1e-12);
    }
    // s = a(t) is the equality case
    auto eq = check_young_inequality(yf, yf.a(1.7), 1.7);
    CHECK(eq.holds);
    CHECK(eq.equality);
  }
}

TEST_CASE("doubling constant") {
  auto d4 = check_delta2(YoungFunction::power(4.0));
  CHECK(d4.holds);
  CHECK(d4.C == 16.0);  // A(2t)/A(t) is exactly 2^4 for the pure power

  auto d3 = check_delta2(YoungFunction::power(3.0));
  CHECK(d3.holds);
  CHECK(d3.C == 8.0);

  CHECK(check_delta2(YoungFunction::power_log(3.0)).holds);
  CHECK(check_delta2(YoungFunction::sum_of_powers_normalized(1.0, 3.0, 1.0, 5.0)).holds);

  CHECK_THROWS_AS(check_delta2(YoungFunction::power(4.0), {0.0, 1.0}), DomainError);
}

TEST_CASE("index sandwich at scattered points") {
  std::vector<YoungFunction> fams{
      YoungFunction::power(3.0), YoungFunction::power(4.0),
      YoungFunction::sum_of_powers_normalized(1.0, 3.0, 1.0, 5.0),
      YoungFunction::power_log(3.0)};
  for (const auto& yf : fams) {
    for (double t : {0.037, 0.37, 1.0, 4.2, 120.0}) {
      auto sw = sandwich_check(yf, t);
      CHECK(sw.ok_A);
      CHECK(sw.ok_a);
      CHECK(sw.ok_a_prime);
    }
  }
  CHECK_THROWS_AS(sandwich_check(fams[0], 0.0), DomainError);
}

static std::vector<std::pair<double, double>> increment_pairs() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> logu(std::log(1e-2), std::log(3.0));
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<std::pair<double, double>> ps;
  for (int k = 0; k < 400; ++k) {
    double r = std::exp(logu(rng)) * (coin(rng) ? 1.0 : -1.0);
    double t = std::exp(logu(rng)) * (coin(rng) ? 1.0 : -1.0);
    ps.emplace_back(r, t);
  }
  ps.emplace_back(0.01, 1.0);  // small shift near t = 1 probes a'(1)
  return ps;
}

TEST_CASE("increment lemmas") {
  auto pairs = increment_pairs();
  for (auto yf : {YoungFunction::power(3.0), YoungFunction::power(4.0),
                  YoungFunction::sum_of_powers_normalized(1.0, 3.0, 1.0, 5.0),
                  YoungFunction::power_log(3.0)}) {
    auto chk = check_increment_lemmas(yf, pairs);
    CHECK(chk.inf_ratio > 0.0);
    CHECK(chk.shift_margin >= -1e-12);
  }

  // the unnormalized mixture has a'(1) = 26 > q(q-1) = 20, so the shift bound
  // fails for small shifts near t = 1; normalization restores it
  auto raw = check_increment_lemmas(YoungFunction::sum_of_powers(1.0, 3.0, 1.0, 5.0), pairs);
  CHECK(raw.shift_margin < 0.0);
}
