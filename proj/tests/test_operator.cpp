#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "folap/fields.hpp"
#include "folap/nonlocal.hpp"
#include "folap/young.hpp"

using namespace folap;

TEST_CASE("scheme construction") {
  CHECK_THROWS_AS(QuadratureScheme::for_spacing(0.0), DomainError);

  auto sch = QuadratureScheme::for_spacing(0.01);
  CHECK(sch.min_radius() <= 0.01 / 4.0);
  CHECK(sch.min_radius() > 0.0);

  auto ref = sch.refined();
  CHECK(ref.near_count == 2 * sch.near_count);
  CHECK(ref.far_count == 2 * sch.far_count);
  CHECK(ref.angular_count == 2 * sch.angular_count);
  CHECK(ref.truncation_radius == 2.0 * sch.truncation_radius);
  CHECK(ref.grading == doctest::Approx(std::sqrt(sch.grading)).epsilon(1e-15));
  // sqrt grading with doubled count keeps the same inner radius
  CHECK(ref.min_radius() == doctest::Approx(sch.min_radius()).epsilon(1e-12));
}

TEST_CASE("validation") {
  auto yf = YoungFunction::power(4.0);
  auto u = distance_field(Domain::ball({0.0, 0.0}, 1.0, 1));
  QuadratureScheme sch;
  CHECK_THROWS_WITH_AS(eval_pointwise(yf, u, {0.0, 0.0}, 0.0, sch),
                       "s must lie in (0,1)", DomainError);
  CHECK_THROWS_AS(eval_pointwise(yf, u, {0.0, 0.0}, 1.0, sch), DomainError);
  // p = 2.5 is too weak for s = 0.7
  CHECK_THROWS_AS(eval_pointwise(YoungFunction::power(2.5), u, {0.0, 0.0}, 0.7, sch),
                  AdmissibilityError);

  auto u2 = distance_field(Domain::ball({0.0, 0.0}, 1.0, 2));
  QuadratureScheme coarse;
  coarse.angular_count = 2;
  CHECK_THROWS_AS(eval_pointwise(yf, u2, {0.0, 0.0}, 0.5, coarse), DomainError);
}

// distance function on the unit interval ball, power p = 4, s = 1/2, at the
// center: the near integrand is the constant 8 on (0,1] and the closed-form
// tail equals 4, so the operator value is 12 (hand integral)
TEST_CASE("pinned value at the center of the interval") {
  auto yf = YoungFunction::power(4.0);
  auto u = distance_field(Domain::ball({0.0, 0.0}, 1.0, 1));
  auto ev = eval_pointwise(yf, u, {0.0, 0.0}, 0.5, QuadratureScheme{});
  CHECK(ev.value == doctest::Approx(12.0).epsilon(1e-13));
  CHECK(ev.near_field == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(ev.far_field == 4.0);  // compact support: tail in closed form
  CHECK(ev.tail_bound == 0.0);
  CHECK(ev.value == ev.near_field + ev.far_field);
}

// same construction on the disk: the angular factor 2 pi makes the value 12 pi
TEST_CASE("pinned value at the center of the disk") {
  auto yf = YoungFunction::power(4.0);
  auto u = distance_field(Domain::ball({0.0, 0.0}, 1.0, 2));
  auto ev = eval_pointwise(yf, u, {0.0, 0.0}, 0.5, QuadratureScheme{});
  CHECK(ev.value == doctest::Approx(12.0 * M_PI).epsilon(1e-13));
  CHECK(ev.far_field == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  CHECK(ev.tail_bound == 0.0);
  // the integrand is radially exact here, so refinement changes nothing
  auto ref = eval_pointwise(yf, u, {0.0, 0.0}, 0.5, QuadratureScheme{}.refined());
  CHECK(ref.value == doctest::Approx(ev.value).epsilon(1e-12));
}

TEST_CASE("translation is bit-identical") {
  auto yf = YoungFunction::power(4.0);
  auto u = distance_field(Domain::ball({0.0, 0.0}, 1.0, 1));
  auto us = u.shifted({0.25, 0.0});
  QuadratureScheme sch;
  for (double x : {0.0, 0.125, -0.625}) {
    auto a = eval_pointwise(yf, u, {x, 0.0}, 0.5, sch);
    auto b = eval_pointwise(yf, us, {x + 0.25, 0.0}, 0.5, sch);
    CHECK(b.value == a.value);
    CHECK(b.near_field == a.near_field);
    CHECK(b.far_field == a.far_field);
    CHECK(b.tail_bound == a.tail_bound);
  }
}

TEST_CASE("sign flip and dyadic amplitude equivariance") {
  auto yf = YoungFunction::power(4.0);
  auto u = distance_field(Domain::ball({0.0, 0.0}, 1.0, 1));
  QuadratureScheme sch;
  auto base = eval_pointwise(yf, u, {0.3, 0.0}, 0.5, sch);

  auto neg = eval_pointwise(yf, u.scaled_by(-1.0), {0.3, 0.0}, 0.5, sch);
  CHECK(neg.value == -base.value);

  // a is 3-homogeneous for p = 4; doubling commutes with rounding
  auto dbl = eval_pointwise(yf, u.scaled_by(2.0), {0.3, 0.0}, 0.5, sch);
  CHECK(dbl.value == 8.0 * base.value);
}

TEST_CASE("tail bound closed form") {
  auto yf = YoungFunction::power(4.0);
  // (n w_n / 2s) a(2 K sup) R^{-s} with n=1: 2 * a(2) * 1 = 64
  CHECK(tail_bound_value(yf, 1.0, 1.0, 1.0, 1, 0.5) == 64.0);
  CHECK(tail_bound_value(yf, 1.0, 1.0, 1.0, 2, 0.5) ==
        doctest::Approx(M_PI * 64.0).epsilon(1e-15));
  CHECK_THROWS_AS(tail_bound_value(yf, 1.0, 1.0, 0.0, 1, 0.5), DomainError);
  CHECK_THROWS_AS(tail_bound_value(yf, 1.0, 1.0, 1.0, 1, 0.0), DomainError);
}

TEST_CASE("truncation tail for non-compact fields") {
  auto yf = YoungFunction::power(4.0);
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 1);
  auto u = analytic_field([](const Point&) { return 1.0; }, dom,
                          /*zero_extension=*/false, 0.0, 1.0);
  QuadratureScheme sch;
  auto ev = eval_pointwise(yf, u, {0.0, 0.0}, 0.5, sch);
  CHECK(ev.value == 0.0);  // constant field: all differences vanish
  CHECK(ev.tail_bound == tail_bound_value(yf, 1.0, 1.0, sch.truncation_radius, 1, 0.5));
  CHECK(ev.tail_bound > 0.0);

  sch.tail_policy = QuadratureScheme::TailPolicy::Ignore;
  CHECK(eval_pointwise(yf, u, {0.0, 0.0}, 0.5, sch).tail_bound == 0.0);
}

TEST_CASE("refinement agreement away from symmetry") {
  auto yf = YoungFunction::power(4.0);
  auto u = distance_field(Domain::ball({0.0, 0.0}, 1.0, 1));
  QuadratureScheme sch;
  auto a = eval_pointwise(yf, u, {0.3, 0.0}, 0.5, sch);
  auto b = eval_pointwise(yf, u, {0.3, 0.0}, 0.5, sch.refined());
  CHECK(std::fabs(a.value - b.value) <= 5e-3 * std::fabs(b.value));
}

TEST_CASE("weak pairing basics") {
  auto yf = YoungFunction::power(4.0);
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 1);
  auto g = Grid::make(dom, 0.05);
  auto u = distance_field(dom);

  auto zero = analytic_field([](const Point&) { return 0.0; }, dom, true, 0.0, 0.0);
  CHECK(eval_weak_pairing(yf, u, zero, dom, *g, 0.5) == 0.0);
  CHECK(eval_weak_pairing(yf, u, u, dom, *g, 0.5) > 0.0);

  // constants are in the kernel of the pairing
  auto cst = analytic_field([](const Point&) { return 1.0; }, dom, false, 0.0, 1.0);
  CHECK(eval_weak_pairing(yf, cst, u, dom, *g, 0.5) == 0.0);

  // the test function must vanish outside
  CHECK_THROWS_AS(eval_weak_pairing(yf, u, cst, dom, *g, 0.5), DomainError);
}

TEST_CASE("amplitude sweep is exactly homogeneous for dyadic steps") {
  auto yf = YoungFunction::power(4.0);
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 1);
  auto g = Grid::make(dom, 0.125);
  auto u = distance_field(dom);
  QuadratureScheme sch;

  std::vector<double> cs;
  for (int k = 0; k <= 8; ++k) cs.push_back(std::ldexp(1.0, -k));
  auto sw = continuity_sweep(yf, u, cs, dom, *g, 0.5, sch);
  REQUIRE(sw.sup_value.size() == cs.size());
  CHECK(sw.sup_value[0] == doctest::Approx(12.0).epsilon(1e-13));
  for (std::size_t k = 0; k < cs.size(); ++k) {
    // c^(p-1) scaling is exact because halving commutes with rounding
    CHECK(sw.sup_value[k] == std::ldexp(sw.sup_value[0], -3 * int(k)));
    CHECK(sw.arg_node[k] == sw.arg_node[0]);
    CHECK(sw.tail[k] == 0.0);
    if (k > 0) CHECK(sw.majorant[k] <= sw.majorant[k - 1]);
  }

  CHECK_THROWS_AS(continuity_sweep(yf, u, {0.5, 1.0}, dom, *g, 0.5, sch), DomainError);

  auto z = continuity_sweep(yf, u, {1.0, 0.0}, dom, *g, 0.5, sch);
  CHECK(z.sup_value[1] == 0.0);
  CHECK(z.arg_node[1] == -1);
}

TEST_CASE("pointwise bound survives weak testing") {
  auto yf = YoungFunction::power(4.0);
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 1);
  auto g = Grid::make(dom, 0.25);
  auto u = distance_field(dom);
  QuadratureScheme sch;
  std::vector<Field> tests{u};

  auto margins = pointwise_implies_weak_margins(yf, u, 13.0, dom, *g, tests, 0.5, sch);
  REQUIRE(margins.size() == 1);
  CHECK(margins[0] >= 0.0);

  CHECK_THROWS_AS(pointwise_implies_weak_margins(yf, u, -1.0, dom, *g, tests, 0.5, sch),
                  DomainError);
}

TEST_CASE("small-scale search") {
  auto yf = YoungFunction::power(4.0);
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 1);
  auto g = Grid::make(dom, 0.25);
  auto u = distance_field(dom);
  QuadratureScheme sch;

  // sup scales as c^3 from 12, so the first passing c is 1/16
  auto [c, sup] = find_small_scale(yf, u, 0.02, dom, *g, 0.5, sch);
  CHECK(c == 0.0625);
  CHECK(sup <= 0.02);

  CHECK_THROWS_AS(find_small_scale(yf, u, 1e-300, dom, *g, 0.5, sch), NumericError);
  CHECK_THROWS_AS(find_small_scale(yf, u, 0.0, dom, *g, 0.5, sch), DomainError);
}
