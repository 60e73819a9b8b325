#include "folap/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "folap/errors.hpp"
#include "gauss_legendre.hpp"

namespace folap {

QuadratureScheme QuadratureScheme::for_spacing(double h) {
  if (!(h > 0.0)) throw DomainError("spacing must be positive");
  QuadratureScheme s;
  double target = std::max(h / 4.0, 1e-12);
  int m = static_cast<int>(std::ceil(std::log(target / s.split_radius) /
                                     std::log(s.grading)));
  s.near_count = std::max(s.near_count, m);
  return s;
}

QuadratureScheme QuadratureScheme::refined() const {
  QuadratureScheme r = *this;
  r.near_count = 2 * near_count;
  r.grading = std::sqrt(grading);  // same r_min, twice the nodes
  r.far_count = 2 * far_count;
  r.angular_count = 2 * angular_count;
  r.truncation_radius = 2.0 * truncation_radius;
  return r;
}

double QuadratureScheme::min_radius() const {
  return split_radius * std::pow(grading, near_count);
}

double tail_bound_value(const YoungFunction& yf, double K, double sup_u, double R_trunc,
                        int n, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  if (!(K > 0.0) || !(sup_u >= 0.0) || !(R_trunc > 0.0))
    throw DomainError("tail bound needs positive parameters");
  double nwn = (n == 1) ? 2.0 : 2.0 * M_PI;
  return nwn / (2.0 * s) * yf.a(2.0 * K * sup_u) * std::pow(R_trunc, -s);
}

namespace {

struct Directions {
  std::vector<Point> dir;
  double weight = 1.0;  // identical angular weight per direction
};

Directions make_directions(int n, int m_ang) {
  Directions d;
  if (n == 1) {
    d.dir = {{{1.0, 0.0}}, {{-1.0, 0.0}}};
    d.weight = 1.0;
  } else {
    if (m_ang < 4) throw DomainError("angular count must be at least 4");
    d.dir.reserve(m_ang);
    for (int k = 0; k < m_ang; ++k) {
      double phi = 2.0 * M_PI * k / m_ang;
      d.dir.push_back({std::cos(phi), std::sin(phi)});
    }
    d.weight = 2.0 * M_PI / m_ang;
  }
  return d;
}

// closed-form radial tail for a field that vanishes beyond the start radius:
//   int_R^inf a(u r^-s) r^{-1-s} dr = A(u R^-s) / (s u)
double exact_tail(const YoungFunction& yf, double u, double R, double s) {
  if (u == 0.0) return 0.0;
  return yf.A(u * std::pow(R, -s)) / (s * u);
}

struct CoreResult {
  double near = 0.0, far = 0.0, tail_bound = 0.0;
};

// shared evaluator for the operator value and for the absolute-value majorant.
// In absolute mode every difference quotient is replaced by its magnitude, so
// the result bounds |operator| monotonically in the field amplitude.
CoreResult eval_core(const YoungFunction& yf, const Field& u, const Point& x, double s,
                     const QuadratureScheme& sch, bool absolute) {
  const int n = u.support.dim;
  const Point bx = u.to_local(x);
  const double ux = u.eval_local(bx);
  const Directions dirs = make_directions(n, sch.angular_count);

  auto integrand = [&](double r) {
    double invrs = std::pow(r, -s);
    double kern = std::pow(r, -1.0 - s);
    double acc = 0.0;
    for (const Point& d : dirs.dir) {
      Point y{bx[0] + r * d[0], bx[1] + r * d[1]};
      double diff = (ux - u.eval_local(y)) * invrs;
      acc += yf.a(absolute ? std::fabs(diff) : diff);
    }
    return dirs.weight * acc * kern;
  };

  CoreResult out;

  // near field: geometric nodes r_min .. split, trapezoid, plus a power-model
  // cell on [0, r_min] where the integrand behaves like C r^{(p-1)(1-s)-1-s}
  {
    std::vector<double> rs(sch.near_count + 1);
    for (int j = 0; j <= sch.near_count; ++j)
      rs[j] = sch.split_radius * std::pow(sch.grading, sch.near_count - j);
    double prev = integrand(rs[0]);
    double acc = 0.0;
    for (int j = 1; j <= sch.near_count; ++j) {
      double cur = integrand(rs[j]);
      acc += 0.5 * (rs[j] - rs[j - 1]) * (prev + cur);
      prev = cur;
    }
    double kappa1 = (yf.indices().p_fn - 1.0) * (1.0 - s) - s;  // kappa + 1 > 0
    acc += integrand(rs[0]) * rs[0] / kappa1;
    out.near = acc;
  }

  // far field: log nodes from split out to where the field support ends (or
  // to the truncation radius), with 1-d kink breakpoints at the ray exits
  {
    double far_end;
    bool compact = u.zero_extension;
    if (compact) {
      far_end = std::max(sch.split_radius, u.support.cover_radius(bx));
    } else {
      far_end = std::max(sch.split_radius, sch.truncation_radius);
    }
    std::vector<double> rs;
    if (far_end > sch.split_radius * (1.0 + 1e-12)) {
      double ratio = far_end / sch.split_radius;
      rs.reserve(sch.far_count + 4);
      for (int j = 0; j <= sch.far_count; ++j)
        rs.push_back(sch.split_radius * std::pow(ratio, double(j) / sch.far_count));
      rs.back() = far_end;
      if (n == 1 && compact) {
        for (const Point& d : dirs.dir) {
          double ex = u.support.ray_exit(bx, d);
          if (ex > sch.split_radius * (1.0 + 1e-12) && ex < far_end * (1.0 - 1e-12))
            rs.push_back(ex);
        }
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
      }
      double prev = integrand(rs[0]);
      double acc = 0.0;
      for (std::size_t j = 1; j < rs.size(); ++j) {
        double cur = integrand(rs[j]);
        acc += 0.5 * (rs[j] - rs[j - 1]) * (prev + cur);
        prev = cur;
      }
      out.far = acc;
    }
    if (compact) {
      // beyond far_end every sample of u is zero: integrate the remaining
      // one-signed integrand exactly
      double nw = (n == 1) ? 2.0 : 2.0 * M_PI;
      double uref = absolute ? std::fabs(ux) : ux;
      out.far += nw * exact_tail(yf, uref, far_end, s);
      out.tail_bound = 0.0;
    } else if (sch.tail_policy == QuadratureScheme::TailPolicy::AnalyticBound) {
      out.tail_bound = tail_bound_value(yf, 1.0, u.sup, far_end, n, s);
    }
  }
  return out;
}

void require_valid(const YoungFunction& yf, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  const GrowthIndices& gi = yf.indices();
  if (!gi.admissible_for(s)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "growth index too weak for order s=%g: need p > max(2, 1/(1-s)) = %g, "
                  "got p = %g",
                  s, std::max(2.0, 1.0 / (1.0 - s)), gi.p_fn);
    throw AdmissibilityError(buf);
  }
}

}  // namespace

OperatorEval eval_pointwise(const YoungFunction& yf, const Field& u, const Point& x,
                            double s, const QuadratureScheme& sch) {
  require_valid(yf, s);
  CoreResult c = eval_core(yf, u, x, s, sch, /*absolute=*/false);
  OperatorEval e;
  e.near_field = c.near;
  e.far_field = c.far;
  e.value = c.near + c.far;
  e.tail_bound = c.tail_bound;
  return e;
}

double eval_weak_pairing(const YoungFunction& yf, const Field& u, const Field& phi,
                         const Domain& dom, const Grid& g, double s,
                         const QuadratureScheme& sch) {
  require_valid(yf, s);
  if (!phi.zero_extension)
    throw DomainError("weak pairing needs a zero-extended test function");
  const int n = g.dim;
  std::vector<std::size_t> ids;
  std::vector<double> uv, pv;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.cell[i] > 0.0) {
      ids.push_back(i);
      uv.push_back(u(g.nodes[i]));
      pv.push_back(phi(g.nodes[i]));
    }
  double sum = 0.0;
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      double d = dist(g.nodes[ids[a]], g.nodes[ids[b]], n);
      double kern = (n == 1) ? 1.0 / d : 1.0 / (d * d);
      double invds = std::pow(d, -s);
      sum += g.cell[ids[a]] * g.cell[ids[b]] * kern * yf.a((uv[a] - uv[b]) * invds) *
             ((pv[a] - pv[b]) * invds);
    }
  // coupling against the complement: per node and ray, substitute w = t^-s so
  //   int_exit^inf a((u_i - u(t)) t^-s) phi_i t^-s dnu = (phi_i/s) int_0^W a(...) dw
  const Directions dirs = make_directions(n, sch.angular_count);
  static const auto gauss = [] {
    std::pair<std::vector<double>, std::vector<double>> g;
    detail::gauss_legendre_01(128, g.first, g.second);
    return g;
  }();
  const std::vector<double>& gx = gauss.first;
  const std::vector<double>& gw = gauss.second;
  const int ngauss = 128;
  double ext = 0.0;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    if (pv[a] == 0.0) continue;
    Point bx = u.to_local(g.nodes[ids[a]]);
    double node_sum = 0.0;
    for (const Point& d : dirs.dir) {
      double exit_t = dom.ray_exit(g.nodes[ids[a]], d);
      if (!(exit_t > 0.0)) continue;
      double W = std::pow(exit_t, -s);
      double ray = 0.0;
      for (int q = 0; q < ngauss; ++q) {
        double w = W * gx[q];
        double t = std::pow(w, -1.0 / s);
        double uy = u.eval_local({bx[0] + t * d[0], bx[1] + t * d[1]});
        ray += gw[q] * yf.a((uv[a] - uy) * w);
      }
      node_sum += dirs.weight * W * ray;
    }
    ext += g.cell[ids[a]] * pv[a] / s * node_sum;
  }
  return sum + ext;
}

ContinuitySweep continuity_sweep(const YoungFunction& yf, const Field& u,
                                 const std::vector<double>& coeffs, const Domain& dom,
                                 const Grid& g, double s, const QuadratureScheme& sch) {
  require_valid(yf, s);
  (void)dom;
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    if (std::fabs(coeffs[k]) > std::fabs(coeffs[k - 1]))
      throw DomainError("sweep coefficients must be non-increasing in magnitude");
  ContinuitySweep sw;
  for (double c : coeffs) {
    Field uc = u.scaled_by(c);
    double sup = 0.0, maj = 0.0, tail = 0.0;
    int arg = -1;
    if (c != 0.0) {  // the operator of the zero field vanishes identically
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.cell[i] == 0.0) continue;
        CoreResult v = eval_core(yf, uc, g.nodes[i], s, sch, /*absolute=*/false);
        CoreResult m = eval_core(yf, uc, g.nodes[i], s, sch, /*absolute=*/true);
        double av = std::fabs(v.near + v.far);
        if (av > sup) {
          sup = av;
          arg = static_cast<int>(i);
        }
        maj = std::max(maj, m.near + m.far);
        tail = std::max(tail, v.tail_bound);
      }
    }
    sw.coeff.push_back(c);
    sw.sup_value.push_back(sup);
    sw.majorant.push_back(maj);
    sw.tail.push_back(tail);
    sw.arg_node.push_back(arg);
  }
  return sw;
}

std::vector<double> pointwise_implies_weak_margins(const YoungFunction& yf, const Field& u,
                                                   double eps, const Domain& dom,
                                                   const Grid& g,
                                                   const std::vector<Field>& tests, double s,
                                                   const QuadratureScheme& sch) {
  require_valid(yf, s);
  if (eps < 0.0) throw DomainError("pointwise bound must be nonnegative");
  std::vector<double> margins;
  margins.reserve(tests.size());
  for (const Field& phi : tests) {
    double mass = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.cell[i] > 0.0) mass += g.cell[i] * phi(g.nodes[i]);
    double pairing = eval_weak_pairing(yf, u, phi, dom, g, s, sch);
    margins.push_back(eps * mass - pairing);
  }
  return margins;
}

std::pair<double, double> find_small_scale(const YoungFunction& yf, const Field& u,
                                           double eps, const Domain& dom, const Grid& g,
                                           double s, const QuadratureScheme& sch) {
  require_valid(yf, s);
  if (!(eps > 0.0)) throw DomainError("target bound must be positive");
  (void)dom;
  double c = 1.0;
  for (int halvings = 0; halvings < 60; ++halvings) {
    Field uc = u.scaled_by(c);
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.cell[i] == 0.0) continue;
      CoreResult v = eval_core(yf, uc, g.nodes[i], s, sch, /*absolute=*/false);
      sup = std::max(sup, std::fabs(v.near + v.far));
    }
    if (sup <= eps) return {c, sup};
    c *= 0.5;
  }
  throw NumericError("small-scale search: 60 halvings were not enough");
}

}  // namespace folap
