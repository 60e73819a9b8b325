#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "folap/errors.hpp"

namespace folap {

// ambient dimension is 1 or 2; 1-d points ignore the second slot
using Point = std::array<double, 2>;

double dot(const Point& a, const Point& b, int dim);
double dist(const Point& a, const Point& b, int dim);

struct Domain {
  enum class Kind { Ball, Interval, Box };
  Kind kind = Kind::Interval;
  int dim = 1;
  Point center{{0.0, 0.0}};
  double radius = 1.0;
  Point lo{{0.0, 0.0}};
  Point hi{{1.0, 0.0}};

  static Domain ball(const Point& c, double R, int dim);
  static Domain interval(double a, double b);
  static Domain box(const Point& lo, const Point& hi);

  bool contains(const Point& x) const;     // closure
  double distance(const Point& x) const;   // dist(x, complement); 0 outside
  double inradius() const;
  double measure() const;
  // radius beyond which the whole domain sits inside the ball around x
  double cover_radius(const Point& x) const;
  // sup{ t >= 0 : x + t*dir in closure } for unit dir; 0 when x is outside
  double ray_exit(const Point& x, const Point& dir) const;
  std::string describe() const;
};

// uniform tensor grid over the bounding box of the domain.  Nodes include both
// endpoints per axis (the last node is pinned to the exact box edge), cell
// carries trapezoid measures, interior lists nodes with distance > 0.
struct Grid {
  Domain domain;
  int dim = 1;
  double h = 0.0;                       // requested spacing
  std::array<double, 2> step{{0.0, 0.0}};
  std::array<int, 2> npts{{0, 1}};
  Point origin{{0.0, 0.0}};
  std::vector<Point> nodes;             // row-major, x fastest
  std::vector<double> cell;             // trapezoid cell measure
  std::vector<double> dist;             // distance to the complement
  std::vector<int> interior;            // ids with dist > 0

  static std::shared_ptr<const Grid> make(const Domain& d, double h);
  int id(int i, int j = 0) const { return j * npts[0] + i; }
  std::size_t size() const { return nodes.size(); }
};

// nodes with 0 < dist < rho (strict, with a tiny relative guard band so that
// fp jitter in node coordinates cannot flip the boundary cases)
std::vector<int> inner_region(const Grid& g, double rho);

// min over contained nodes of d(x) - (1-|x|^2)/2 for the unit ball
double lower_bound_margin(const Grid& g);

// scalar field with zero extension outside its support.  `rule`/samples live
// in local coordinates; evaluation first subtracts `shift`, so translates of a
// field reuse bit-identical arithmetic.
struct Field {
  enum class Source { Analytic, GridSamples };
  Source source = Source::Analytic;
  std::function<double(const Point&)> rule;
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
  Domain support;
  bool zero_extension = true;
  double lipschitz = 0.0;  // estimate, not a certified constant
  double sup = 0.0;        // estimate of the sup norm
  Point shift{{0.0, 0.0}};
  double amplitude = 1.0;

  double operator()(const Point& x) const { return eval_local(to_local(x)); }
  Point to_local(const Point& x) const { return {x[0] - shift[0], x[1] - shift[1]}; }
  double eval_local(const Point& x) const;
  Field shifted(const Point& delta) const;
  Field scaled_by(double c) const;  // multiplies amplitude (and the estimates)
};

Field analytic_field(std::function<double(const Point&)> rule, const Domain& support,
                     bool zero_extension, double lipschitz, double sup);
Field grid_field(std::shared_ptr<const Grid> g, std::vector<double> node_values,
                 bool zero_extension = true);
Field distance_field(const Domain& dom);

}  // namespace folap
