#include "folap/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace folap {

double dot(const Point& a, const Point& b, int dim) {
  double s = a[0] * b[0];
  if (dim > 1) s += a[1] * b[1];
  return s;
}

double dist(const Point& a, const Point& b, int dim) {
  double dx = a[0] - b[0];
  if (dim == 1) return std::fabs(dx);
  double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

Domain Domain::ball(const Point& c, double R, int dim) {
  if (!(R > 0.0)) throw DomainError("ball radius must be positive");
  if (dim != 1 && dim != 2) throw DomainError("dimension must be 1 or 2");
  Domain d;
  d.kind = Kind::Ball;
  d.dim = dim;
  d.center = c;
  d.radius = R;
  d.lo = {c[0] - R, dim > 1 ? c[1] - R : 0.0};
  d.hi = {c[0] + R, dim > 1 ? c[1] + R : 0.0};
  return d;
}

Domain Domain::interval(double a, double b) {
  if (!(a < b)) throw DomainError("interval endpoints must satisfy a < b");
  Domain d;
  d.kind = Kind::Interval;
  d.dim = 1;
  d.lo = {a, 0.0};
  d.hi = {b, 0.0};
  d.center = {0.5 * (a + b), 0.0};
  d.radius = 0.5 * (b - a);
  return d;
}

Domain Domain::box(const Point& lo, const Point& hi) {
  if (!(lo[0] < hi[0]) || !(lo[1] < hi[1]))
    throw DomainError("box corners must satisfy lo < hi componentwise");
  Domain d;
  d.kind = Kind::Box;
  d.dim = 2;
  d.lo = lo;
  d.hi = hi;
  d.center = {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
  d.radius = 0.5 * std::min(hi[0] - lo[0], hi[1] - lo[1]);
  return d;
}

bool Domain::contains(const Point& x) const {
  switch (kind) {
    case Kind::Ball:
      return dist(x, center, dim) <= radius;
    case Kind::Interval:
      return lo[0] <= x[0] && x[0] <= hi[0];
    case Kind::Box:
      return lo[0] <= x[0] && x[0] <= hi[0] && lo[1] <= x[1] && x[1] <= hi[1];
  }
  return false;
}

double Domain::distance(const Point& x) const {
  double d = 0.0;
  switch (kind) {
    case Kind::Ball:
      d = radius - dist(x, center, dim);
      break;
    case Kind::Interval:
      d = std::min(x[0] - lo[0], hi[0] - x[0]);
      break;
    case Kind::Box:
      d = std::min(std::min(x[0] - lo[0], hi[0] - x[0]),
                   std::min(x[1] - lo[1], hi[1] - x[1]));
      break;
  }
  return d > 0.0 ? d : 0.0;
}

double Domain::inradius() const {
  switch (kind) {
    case Kind::Ball:
      return radius;
    case Kind::Interval:
      return 0.5 * (hi[0] - lo[0]);
    case Kind::Box:
      return 0.5 * std::min(hi[0] - lo[0], hi[1] - lo[1]);
  }
  return 0.0;
}

double Domain::measure() const {
  switch (kind) {
    case Kind::Ball:
      return dim == 1 ? 2.0 * radius : M_PI * radius * radius;
    case Kind::Interval:
      return hi[0] - lo[0];
    case Kind::Box:
      return (hi[0] - lo[0]) * (hi[1] - lo[1]);
  }
  return 0.0;
}

double Domain::cover_radius(const Point& x) const {
  if (kind == Kind::Ball) return dist(x, center, dim) + radius;
  double worst = 0.0;
  for (int cx = 0; cx < 2; ++cx)
    for (int cy = 0; cy < (dim > 1 ? 2 : 1); ++cy) {
      Point corner{cx ? hi[0] : lo[0], cy ? hi[1] : lo[1]};
      worst = std::max(worst, dist(x, corner, dim));
    }
  return worst;
}

double Domain::ray_exit(const Point& x, const Point& dir) const {
  if (!contains(x)) return 0.0;
  if (kind == Kind::Ball) {
    Point rel{x[0] - center[0], dim > 1 ? x[1] - center[1] : 0.0};
    double b = dot(rel, dir, dim);
    double cc = dot(rel, rel, dim) - radius * radius;  // <= 0 inside
    double disc = b * b - cc;
    return -b + std::sqrt(disc > 0.0 ? disc : 0.0);
  }
  double t = std::numeric_limits<double>::infinity();
  int nd = (kind == Kind::Interval) ? 1 : 2;
  for (int k = 0; k < nd; ++k) {
    if (dir[k] > 0.0)
      t = std::min(t, (hi[k] - x[k]) / dir[k]);
    else if (dir[k] < 0.0)
      t = std::min(t, (lo[k] - x[k]) / dir[k]);
  }
  return t < 0.0 ? 0.0 : t;
}

std::string Domain::describe() const {
  char buf[128];
  switch (kind) {
    case Kind::Ball:
      if (dim == 1)
        std::snprintf(buf, sizeof buf, "ball(center=%g, R=%g, n=1)", center[0], radius);
      else
        std::snprintf(buf, sizeof buf, "ball(center=(%g,%g), R=%g, n=2)", center[0],
                      center[1], radius);
      break;
    case Kind::Interval:
      std::snprintf(buf, sizeof buf, "interval(%g, %g)", lo[0], hi[0]);
      break;
    case Kind::Box:
      std::snprintf(buf, sizeof buf, "box((%g,%g)..(%g,%g))", lo[0], lo[1], hi[0], hi[1]);
      break;
  }
  return buf;
}

std::shared_ptr<const Grid> Grid::make(const Domain& d, double h) {
  if (!(h > 0.0)) throw DomainError("grid spacing must be positive");
  auto g = std::make_shared<Grid>();
  g->domain = d;
  g->dim = d.dim;
  g->h = h;
  std::array<std::vector<double>, 2> axis;
  for (int k = 0; k < d.dim; ++k) {
    double lo = d.lo[k], hi = d.hi[k];
    int n = static_cast<int>(std::llround((hi - lo) / h)) + 1;
    if (n < 2) n = 2;
    double st = (hi - lo) / (n - 1);
    axis[k].resize(n);
    for (int i = 0; i < n; ++i) axis[k][i] = lo + i * st;
    axis[k][n - 1] = hi;  // pin the far edge so trapezoid sums telescope to the box
    g->step[k] = st;
    g->npts[k] = n;
  }
  if (d.dim == 1) {
    axis[1] = {0.0};
    g->npts[1] = 1;
    g->step[1] = 0.0;
  }
  g->origin = {axis[0][0], axis[1][0]};
  std::size_t total = static_cast<std::size_t>(g->npts[0]) * g->npts[1];
  g->nodes.reserve(total);
  g->cell.reserve(total);
  g->dist.reserve(total);
  for (int j = 0; j < g->npts[1]; ++j) {
    double wy = 1.0;
    if (d.dim > 1) {
      wy = (j == 0 || j == g->npts[1] - 1) ? 0.5 * g->step[1] : g->step[1];
    }
    for (int i = 0; i < g->npts[0]; ++i) {
      double wx = (i == 0 || i == g->npts[0] - 1) ? 0.5 * g->step[0] : g->step[0];
      Point p{axis[0][i], axis[1][j]};
      double di = d.distance(p);
      g->nodes.push_back(p);
      g->cell.push_back(d.contains(p) ? wx * wy : 0.0);
      g->dist.push_back(di);
      if (di > 0.0) g->interior.push_back(g->id(i, j));
    }
  }
  return g;
}

std::vector<int> inner_region(const Grid& g, double rho) {
  if (!(rho > 0.0)) throw DomainError("inner region width must be positive");
  std::vector<int> out;
  // relative guard band: node coordinates carry O(ulp) jitter, and the strict
  // upper comparison must not flip on it
  double cap = rho * (1.0 - 1e-12);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.dist[i] > 0.0 && g.dist[i] < cap) out.push_back(static_cast<int>(i));
  if (out.empty())
    std::fprintf(stderr, "warning: inner region of width %g holds no grid node "
                         "(mesh too coarse)\n", rho);
  return out;
}

double lower_bound_margin(const Grid& g) {
  const Domain& d = g.domain;
  if (d.kind != Domain::Kind::Ball || d.radius != 1.0)
    throw DomainError("the distance lower bound is specific to the unit ball");
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    double r = dist(g.nodes[i], d.center, d.dim);
    worst = std::min(worst, g.dist[i] - 0.5 * (1.0 - r * r));
  }
  return worst;
}

double Field::eval_local(const Point& x) const {
  if (zero_extension && !support.contains(x)) return 0.0;
  if (source == Source::Analytic) return amplitude * rule(x);
  const Grid& g = *grid;
  int idx[2] = {0, 0};
  double frac[2] = {0.0, 0.0};
  for (int k = 0; k < g.dim; ++k) {
    double fx = (x[k] - g.origin[k]) / g.step[k];
    double r = std::nearbyint(fx);
    if (std::fabs(fx - r) < 1e-9) fx = r;  // exact value at (jittered) node planes
    int i0 = static_cast<int>(std::floor(fx));
    if (i0 < 0) i0 = 0;
    if (i0 > g.npts[k] - 2) i0 = g.npts[k] - 2;
    double t = fx - i0;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    idx[k] = i0;
    frac[k] = t;
  }
  double v;
  if (g.dim == 1) {
    int i = idx[0];
    v = values[i] * (1.0 - frac[0]) + values[i + 1] * frac[0];
  } else {
    int i = idx[0], j = idx[1];
    double tx = frac[0], ty = frac[1];
    double v00 = values[g.id(i, j)], v10 = values[g.id(i + 1, j)];
    double v01 = values[g.id(i, j + 1)], v11 = values[g.id(i + 1, j + 1)];
    v = (v00 * (1.0 - tx) + v10 * tx) * (1.0 - ty) + (v01 * (1.0 - tx) + v11 * tx) * ty;
  }
  return amplitude * v;
}

Field Field::shifted(const Point& delta) const {
  Field f = *this;
  f.shift = {shift[0] + delta[0], shift[1] + delta[1]};
  return f;
}

Field Field::scaled_by(double c) const {
  Field f = *this;
  f.amplitude = amplitude * c;
  f.sup = sup * std::fabs(c);
  f.lipschitz = lipschitz * std::fabs(c);
  return f;
}

Field analytic_field(std::function<double(const Point&)> rule, const Domain& support,
                     bool zero_extension, double lipschitz, double sup) {
  Field f;
  f.source = Field::Source::Analytic;
  f.rule = std::move(rule);
  f.support = support;
  f.zero_extension = zero_extension;
  f.lipschitz = lipschitz;
  f.sup = sup;
  return f;
}

Field grid_field(std::shared_ptr<const Grid> g, std::vector<double> node_values,
                 bool zero_extension) {
  if (!g) throw DomainError("grid field needs a grid");
  if (node_values.size() != g->size())
    throw DomainError("grid field needs one value per grid node");
  Field f;
  f.source = Field::Source::GridSamples;
  f.grid = g;
  f.values = std::move(node_values);
  f.support = g->domain;
  f.zero_extension = zero_extension;
  for (double v : f.values) f.sup = std::max(f.sup, std::fabs(v));
  // adjacent difference quotients along each axis
  double lip = 0.0;
  for (int j = 0; j < g->npts[1]; ++j)
    for (int i = 0; i < g->npts[0]; ++i) {
      if (i + 1 < g->npts[0])
        lip = std::max(lip, std::fabs(f.values[g->id(i + 1, j)] - f.values[g->id(i, j)]) /
                                g->step[0]);
      if (j + 1 < g->npts[1])
        lip = std::max(lip, std::fabs(f.values[g->id(i, j + 1)] - f.values[g->id(i, j)]) /
                                g->step[1]);
    }
  f.lipschitz = lip;
  return f;
}

Field distance_field(const Domain& dom) {
  Field f = analytic_field([dom](const Point& x) { return dom.distance(x); }, dom,
                           /*zero_extension=*/true, /*lipschitz=*/1.0,
                           /*sup=*/dom.inradius());
  return f;
}

}  // namespace folap
