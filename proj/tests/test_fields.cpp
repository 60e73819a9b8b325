#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "folap/fields.hpp"

using namespace folap;

TEST_CASE("domain factories and validation") {
  CHECK_THROWS_AS(Domain::ball({0.0, 0.0}, 0.0, 1), DomainError);
  CHECK_THROWS_AS(Domain::ball({0.0, 0.0}, 1.0, 3), DomainError);
  CHECK_THROWS_AS(Domain::interval(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Domain::box({0.0, 0.0}, {1.0, 0.0}), DomainError);
  CHECK_FALSE(Domain::ball({0.0, 0.0}, 1.0, 2).describe().empty());
}

TEST_CASE("interval geometry") {
  auto d = Domain::interval(0.0, 1.0);
  CHECK(d.contains({0.0, 0.0}));  // closure
  CHECK(d.contains({1.0, 0.0}));
  CHECK_FALSE(d.contains({-1e-9, 0.0}));
  CHECK(d.distance({0.25, 0.0}) == 0.25);
  CHECK(d.distance({0.5, 0.0}) == d.inradius());
  CHECK(d.distance({2.0, 0.0}) == 0.0);
  CHECK(d.measure() == 1.0);
  CHECK(d.cover_radius({0.3, 0.0}) == 0.7);
  CHECK(d.ray_exit({0.25, 0.0}, {1.0, 0.0}) == 0.75);
  CHECK(d.ray_exit({0.25, 0.0}, {-1.0, 0.0}) == 0.25);
  CHECK(d.ray_exit({2.0, 0.0}, {-1.0, 0.0}) == 0.0);  // starts outside

  // a 1-d ball is the same interval
  auto b = Domain::ball({0.5, 0.0}, 0.5, 1);
  CHECK(b.distance({0.25, 0.0}) == 0.25);
  CHECK(b.measure() == 1.0);
}

TEST_CASE("planar geometry") {
  auto b = Domain::ball({0.0, 0.0}, 1.0, 2);
  CHECK(b.contains({0.6, 0.8}));
  CHECK(b.distance({0.6, 0.8}) == doctest::Approx(0.0));
  CHECK(b.distance({0.0, 0.0}) == 1.0);
  CHECK(b.inradius() == 1.0);
  CHECK(b.measure() == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(b.cover_radius({0.6, 0.8}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(b.ray_exit({0.0, 0.0}, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(b.ray_exit({0.5, 0.0}, {1.0, 0.0}) == doctest::Approx(0.5));
  CHECK(b.ray_exit({0.5, 0.0}, {-1.0, 0.0}) == doctest::Approx(1.5));

  auto bx = Domain::box({0.0, 0.0}, {2.0, 1.0});
  CHECK(bx.measure() == 2.0);
  CHECK(bx.distance({1.0, 0.5}) == 0.5);
  CHECK(bx.ray_exit({0.5, 0.5}, {1.0, 0.0}) == doctest::Approx(1.5));
}

TEST_CASE("grid on an interval") {
  CHECK_THROWS_AS(Grid::make(Domain::interval(0.0, 1.0), 0.0), DomainError);

  auto g = Grid::make(Domain::interval(0.0, 1.0), 0.25);
  REQUIRE(g->npts[0] == 5);
  CHECK(g->step[0] == 0.25);
  CHECK(g->nodes.front()[0] == 0.0);
  CHECK(g->nodes.back()[0] == 1.0);  // last node pinned to the box edge

  std::vector<double> want_cell{0.125, 0.25, 0.25, 0.25, 0.125};
  REQUIRE(g->cell.size() == want_cell.size());
  double total = 0.0;
  for (std::size_t i = 0; i < want_cell.size(); ++i) {
    CHECK(g->cell[i] == want_cell[i]);
    total += g->cell[i];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));  // trapezoid telescopes

  CHECK(g->dist[0] == 0.0);
  CHECK(g->dist[2] == 0.5);
  REQUIRE(g->interior.size() == 3);
  CHECK(g->interior[0] == 1);
  CHECK(g->interior[2] == 3);
}

TEST_CASE("grid on a disk") {
  auto g = Grid::make(Domain::ball({0.0, 0.0}, 1.0, 2), 0.5);
  REQUIRE(g->npts[0] == 5);
  REQUIRE(g->npts[1] == 5);
  CHECK(g->nodes[g->id(1, 2)][0] == -0.5);
  CHECK(g->nodes[g->id(1, 2)][1] == 0.0);
  CHECK(g->cell[g->id(0, 0)] == 0.0);  // corner sits outside the disk
  CHECK(g->dist[g->id(2, 2)] == 1.0);
  CHECK(g->interior.size() == 9);  // |x|_2 < 1 on the 0.5-lattice
}

TEST_CASE("inner region strictness") {
  auto g = Grid::make(Domain::ball({0.0, 0.0}, 1.0, 1), 0.1);
  auto ids = inner_region(*g, 0.3);
  // 0 < 1-|x| < 0.3 picks x = +-0.8, +-0.9; the node at distance exactly 0.3
  // stays out (strict with a guard band)
  CHECK(ids.size() == 4);
  for (int id : ids) {
    CHECK(g->dist[id] > 0.0);
    CHECK(g->dist[id] < 0.3);
  }
  CHECK_THROWS_AS(inner_region(*g, 0.0), DomainError);
}

TEST_CASE("distance dominates the paraboloid on the unit ball") {
  auto g1 = Grid::make(Domain::ball({0.0, 0.0}, 1.0, 1), 0.05);
  double m1 = lower_bound_margin(*g1);
  CHECK(m1 >= 0.0);
  CHECK(m1 < 0.02);
  auto g2 = Grid::make(Domain::ball({0.0, 0.0}, 1.0, 2), 0.25);
  CHECK(lower_bound_margin(*g2) >= 0.0);
  auto bad = Grid::make(Domain::ball({0.0, 0.0}, 2.0, 1), 0.1);
  CHECK_THROWS_AS(lower_bound_margin(*bad), DomainError);
}

TEST_CASE("analytic field with zero extension") {
  auto dom = Domain::interval(-1.0, 1.0);
  auto u = analytic_field([](const Point& x) { return x[0] * x[0]; }, dom,
                          /*zero_extension=*/true, 2.0, 1.0);
  CHECK(u({0.5, 0.0}) == 0.25);
  CHECK(u({2.0, 0.0}) == 0.0);

  auto v = analytic_field([](const Point& x) { return x[0] * x[0]; }, dom,
                          /*zero_extension=*/false, 2.0, 1.0);
  CHECK(v({2.0, 0.0}) == 4.0);
}

TEST_CASE("grid samples interpolate") {
  auto g = Grid::make(Domain::interval(0.0, 1.0), 0.25);
  CHECK_THROWS_AS(grid_field(g, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(grid_field(nullptr, {}), DomainError);

  std::vector<double> vals(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) vals[i] = g->nodes[i][0];
  auto u = grid_field(g, vals);
  CHECK(u({0.5, 0.0}) == 0.5);      // node hit
  CHECK(u({0.375, 0.0}) == 0.375);  // linear interpolation is exact on linears
  CHECK(u({1.5, 0.0}) == 0.0);      // zero extension outside the domain
  CHECK(u.sup == 1.0);

  auto g2 = Grid::make(Domain::box({0.0, 0.0}, {1.0, 1.0}), 0.5);
  std::vector<double> vals2(g2->size());
  for (std::size_t i = 0; i < g2->size(); ++i) vals2[i] = g2->nodes[i][0] + g2->nodes[i][1];
  auto w = grid_field(g2, vals2);
  CHECK(w({0.25, 0.25}) == 0.5);  // bilinear reproduces x + y
}

TEST_CASE("distance field") {
  auto u = distance_field(Domain::ball({0.0, 0.0}, 1.0, 1));
  CHECK(u({0.0, 0.0}) == 1.0);
  CHECK(u({0.25, 0.0}) == 0.75);
  CHECK(u({1.5, 0.0}) == 0.0);
  CHECK(u.sup == 1.0);
  CHECK(u.lipschitz == 1.0);
}

TEST_CASE("translation is bit-identical") {
  auto u = distance_field(Domain::ball({0.0, 0.0}, 1.0, 1));
  auto us = u.shifted({0.25, 0.0});
  for (double x : {-0.875, -0.3125, 0.0, 0.09, 0.7071}) {
    CHECK(us({x + 0.25, 0.0}) == u({x, 0.0}));
  }
  // shifts accumulate
  auto us2 = us.shifted({0.5, 0.0});
  CHECK(us2({0.75, 0.0}) == u({0.0, 0.0}));
}

TEST_CASE("amplitude scaling") {
  auto u = distance_field(Domain::ball({0.0, 0.0}, 1.0, 1));
  auto v = u.scaled_by(2.0);
  CHECK(v({0.3, 0.0}) == 2.0 * u({0.3, 0.0}));
  CHECK(v.sup == 2.0 * u.sup);
  auto nv = u.scaled_by(-1.0);
  CHECK(nv({0.3, 0.0}) == -u({0.3, 0.0}));
  CHECK(nv.sup == u.sup);
  CHECK(u.scaled_by(2.0).scaled_by(3.0)({0.5, 0.0}) == 6.0 * u({0.5, 0.0}));
}
