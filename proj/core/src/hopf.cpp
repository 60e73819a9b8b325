#include "folap/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "folap/errors.hpp"

namespace folap {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

double HopfReport::get(const std::string& k) const {
  for (const auto& kv : constants)
    if (kv.first == k) return kv.second;
  throw DomainError("no constant named " + k + " in report " + experiment);
}

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

Point unit_dir(const Point& eta, int dim) {
  double nrm = std::sqrt(dot(eta, eta, dim));
  if (!(nrm > 0.0)) throw DomainError("direction must be nonzero");
  return {eta[0] / nrm, dim == 2 ? eta[1] / nrm : 0.0};
}

// min over interior nodes of u/d and max of u/d^s, from a full-grid value set
void boundary_quotients(const Grid& g, const std::vector<double>& full, double s,
                        double& c1, double& c2) {
  c1 = std::numeric_limits<double>::infinity();
  c2 = -std::numeric_limits<double>::infinity();
  for (int id : g.interior) {
    double d = g.dist[id];
    c1 = std::min(c1, full[id] / d);
    c2 = std::max(c2, full[id] / std::pow(d, s));
  }
}

double torsion_c1(const YoungFunction& yf, double s, double beta, const Domain& dom,
                  double h, double* c2_out) {
  auto g = Grid::make(dom, h);
  DiscreteSolution sol = solve_torsion(beta, dom, yf, s, g);
  double c1, c2;
  boundary_quotients(*g, sol.as_field.values, s, c1, c2);
  if (c2_out) *c2_out = c2;
  return c1;
}

}  // namespace

HopfReport verify_two_sided(const YoungFunction& yf, double s, double beta,
                            const std::vector<double>& R_list, double h, bool refine_check,
                            int dim) {
  if (!(beta > 0.0)) throw ConfigError("two-sided bounds need a positive source");
  if (R_list.empty()) throw ConfigError("two-sided bounds need at least one radius");
  if (!(h > 0.0)) throw ConfigError("spacing must be positive");
  HopfReport rep;
  rep.experiment = "two_sided";
  rep.columns = {"R", "C1", "C2", "C1_refined"};
  double c1_min = std::numeric_limits<double>::infinity();
  double c1_max = 0.0;
  double worst_refine = 0.0;
  bool ok = true;
  for (double R : R_list) {
    if (!(R > 0.0)) throw ConfigError("radii must be positive");
    Domain dom = Domain::ball({0.0, 0.0}, R, dim);
    double c2 = 0.0;
    double c1 = torsion_c1(yf, s, beta, dom, h * R, &c2);
    double c1_ref = std::numeric_limits<double>::quiet_NaN();
    if (refine_check) {
      c1_ref = torsion_c1(yf, s, beta, dom, 0.5 * h * R, nullptr);
      double rel = std::fabs(c1_ref - c1) / std::max(std::fabs(c1), 1e-300);
      worst_refine = std::max(worst_refine, rel);
      if (!(rel < 0.20)) {
        ok = false;
        rep.notes.push_back(fmt("mesh halving moved C1 by %g at R = %g", rel, R));
      }
    }
    if (!(c1 > 0.0)) {
      ok = false;
      rep.notes.push_back(fmt("C1 = %g is not positive at R = %g", c1, R));
    }
    c1_min = std::min(c1_min, c1);
    c1_max = std::max(c1_max, c1);
    rep.rows.push_back({R, c1, c2, c1_ref});
  }
  double spread = c1_max > 0.0 ? (c1_max - c1_min) / c1_max : 1.0;
  if (!(spread < 0.50)) {
    ok = false;
    rep.notes.push_back(fmt("C1 spread across radii is %g (gate 0.5)", spread));
  }
  rep.put("beta", beta);
  rep.put("h", h);
  rep.put("C1_min", c1_min);
  rep.put("C1_max", c1_max);
  rep.put("spread", spread);
  rep.put("worst_refine_change", worst_refine);
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return rep;
}

HopfReport verify_torsion_hopf(const YoungFunction& yf, double s,
                               const std::vector<double>& eps_list, double rho, double h,
                               bool refine_check, int dim) {
  if (eps_list.empty()) throw ConfigError("need at least one torsion level");
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > 0.0)) throw ConfigError("torsion levels must be positive");
    if (k > 0 && !(eps_list[k] > eps_list[k - 1]))
      throw ConfigError("torsion levels must be strictly increasing");
  }
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("inner-region depth must lie in (0,1)");
  if (!(h > 0.0)) throw ConfigError("spacing must be positive");

  Domain dom = Domain::ball({0.0, 0.0}, 1.0, dim);
  auto g = Grid::make(dom, h);
  std::vector<int> inner = inner_region(*g, rho);
  if (inner.empty()) throw DomainError("inner region is empty at this spacing");
  std::shared_ptr<const Grid> g_half;
  std::vector<int> inner_half;
  if (refine_check) {
    g_half = Grid::make(dom, 0.5 * h);
    inner_half = inner_region(*g_half, rho);
  }

  HopfReport rep;
  rep.experiment = "torsion_hopf";
  rep.columns = {"eps", "C_eps", "C_eps_refined"};
  bool ok = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (double eps : eps_list) {
    DiscreteSolution sol = solve_torsion(eps, dom, yf, s, g);
    double c = std::numeric_limits<double>::infinity();
    for (int id : inner) c = std::min(c, sol.as_field.values[id] / g->dist[id]);
    double c_ref = std::numeric_limits<double>::quiet_NaN();
    if (refine_check) {
      DiscreteSolution sh = solve_torsion(eps, dom, yf, s, g_half);
      c_ref = std::numeric_limits<double>::infinity();
      for (int id : inner_half) c_ref = std::min(c_ref, sh.as_field.values[id] / g_half->dist[id]);
      double rel = std::fabs(c_ref - c) / std::max(std::fabs(c), 1e-300);
      if (!(rel < 0.20)) {
        ok = false;
        rep.notes.push_back(fmt("mesh halving moved C_eps by %g at eps = %g", rel, eps));
      }
    }
    if (!(c > 0.0)) {
      ok = false;
      rep.notes.push_back(fmt("C_eps = %g is not positive at eps = %g", c, eps));
    }
    if (c < prev - 1e-8) {
      ok = false;
      rep.notes.push_back(fmt("C_eps dropped from %g to %g between torsion levels", prev, c));
    }
    prev = c;
    rep.rows.push_back({eps, c, c_ref});
  }
  rep.put("rho", rho);
  rep.put("h", h);
  rep.put("inner_nodes", double(inner.size()));
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return rep;
}

HopfReport verify_scaling(const YoungFunction& yf, double s, double beta,
                          const std::vector<double>& R_list, double h, int dim) {
  if (!(beta > 0.0)) throw ConfigError("scaling check needs a positive source");
  if (R_list.empty()) throw ConfigError("scaling check needs at least one radius");
  if (!(h > 0.0)) throw ConfigError("spacing must be positive");
  HopfReport rep;
  rep.experiment = "scaling";
  rep.columns = {"R", "sup_diff", "energy_ratio_err"};
  const double gate = 5.0 * h;
  bool ok = true;
  Domain unit = Domain::ball({0.0, 0.0}, 1.0, dim);
  auto g1 = Grid::make(unit, h);
  for (double R : R_list) {
    if (!(R > 0.0)) throw ConfigError("radii must be positive");
    Domain dom = Domain::ball({0.0, 0.0}, R, dim);
    auto gR = Grid::make(dom, R * h);
    if (gR->size() != g1->size()) {
      throw NumericError("aligned grids have mismatched node counts");
    }
    DiscreteSolution on_R = solve_torsion(beta, dom, yf, s, gR);
    DiscreteSolution on_unit =
        solve_torsion(std::pow(R, s) * beta, unit, yf.scaled(R, s), s, g1);
    double sup_diff = 0.0;
    for (std::size_t i = 0; i < gR->size(); ++i)
      sup_diff = std::max(
          std::fabs(on_R.as_field.values[i] - on_unit.as_field.values[i]), sup_diff);
    // the discrete energies differ by the factor R^{dim-s} exactly
    double factor = std::pow(R, double(dim) - s);
    double e_err = std::fabs(on_R.energy - factor * on_unit.energy) /
                   (1.0 + std::fabs(on_R.energy));
    if (!(sup_diff <= gate)) {
      ok = false;
      rep.notes.push_back(fmt("scaled solutions differ by %g at R = %g", sup_diff, R));
    }
    rep.rows.push_back({R, sup_diff, e_err});
  }
  rep.put("beta", beta);
  rep.put("h", h);
  rep.put("gate", gate);
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return rep;
}

HopfReport verify_principles(const YoungFunction& yf, double s, int n_nonneg, int n_pairs,
                             std::uint64_t seed) {
  if (n_nonneg < 0 || n_pairs < 0) throw ConfigError("sample counts must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.3, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  HopfReport rep;
  rep.experiment = "principles";
  rep.columns = {"kind", "R", "worst"};
  SolveOptions opts;
  opts.grad_tol = 1e-10;
  opts.truncate_nonnegative = false;

  double worst_min = 0.0;        // most negative node value across nonneg runs
  double worst_violation = 0.0;  // largest u_lo - u_hi across ordered pairs
  for (int k = 0; k < n_nonneg; ++k) {
    double R = radius(rng);
    Domain dom = Domain::ball({0.0, 0.0}, R, 1);
    auto g = Grid::make(dom, R / 50.0);
    DiscreteProblem pb = assemble(dom, g, yf, s);
    std::vector<double> f(pb.interior.size());
    for (double& v : f) v = 2.0 * unif(rng);
    DiscreteSolution sol = solve(pb, f, opts);
    double mn = 0.0;
    for (double v : sol.values) mn = std::min(mn, v);
    worst_min = std::min(worst_min, mn);
    rep.rows.push_back({0.0, R, mn});
  }
  for (int k = 0; k < n_pairs; ++k) {
    double R = radius(rng);
    Domain dom = Domain::ball({0.0, 0.0}, R, 1);
    auto g = Grid::make(dom, R / 50.0);
    DiscreteProblem pb = assemble(dom, g, yf, s);
    std::vector<double> f_lo(pb.interior.size()), f_hi(pb.interior.size());
    for (std::size_t i = 0; i < f_lo.size(); ++i) {
      f_lo[i] = unif(rng);
      f_hi[i] = f_lo[i] + unif(rng);
    }
    DiscreteSolution lo = solve(pb, f_lo, opts);
    DiscreteSolution hi = solve(pb, f_hi, opts);
    double viol = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lo.values.size(); ++i)
      viol = std::max(viol, lo.values[i] - hi.values[i]);
    worst_violation = std::max(worst_violation, viol);
    rep.rows.push_back({1.0, R, viol});
  }
  rep.put("worst_min_u", worst_min);
  rep.put("worst_order_violation", worst_violation);
  bool ok = worst_min >= -1e-8 && worst_violation <= 1e-8;
  if (!ok) {
    if (worst_min < -1e-8)
      rep.notes.push_back(fmt("a nonnegative source produced min u = %g", worst_min));
    if (worst_violation > 1e-8)
      rep.notes.push_back(fmt("source ordering was violated by %g", worst_violation));
  }
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return rep;
}

RaySequence boundary_quotient_ray(const Field& u, const Point& x0, const Point& eta,
                                  double t0, double t_min_allowed) {
  if (!(t0 > 0.0) || !(t_min_allowed > 0.0))
    throw DomainError("ray parameters must be positive");
  if (t0 < t_min_allowed) throw DomainError("ray start below the sampling floor");
  const int dim = u.support.dim;
  Point dir = unit_dir(eta, dim);
  RaySequence rs;
  double t = t0;
  while (t >= t_min_allowed * (1.0 - 1e-12)) {
    Point x{x0[0] + t * dir[0], x0[1] + t * dir[1]};
    rs.t.push_back(t);
    rs.q.push_back(u(x) / t);
    t *= 0.5;
  }
  rs.note = fmt("dyadic descent stopped at t = %g (floor %g)", rs.t.back(), t_min_allowed);
  rs.running_min = *std::min_element(rs.q.begin(), rs.q.end());
  if (rs.q.size() < 4) {
    rs.pass = false;
    rs.note += "; too few points for the ratio check";
    return rs;
  }
  bool ok = rs.running_min > 0.0;
  for (std::size_t k = rs.q.size() - 3; k < rs.q.size(); ++k)
    if (!(rs.q[k] / rs.q[k - 1] > 0.5)) ok = false;
  rs.pass = ok;
  return rs;
}

ConeStats boundary_quotient_cone(const Field& u, const Point& x0, const Point& eta,
                                 double beta_angle, int count, std::uint64_t seed) {
  if (count < 1) throw ConfigError("cone sampling needs at least one point");
  if (!(beta_angle >= 0.0) || beta_angle >= M_PI / 2.0)
    throw ConfigError("cone half-angle must lie in [0, pi/2)");
  const int dim = u.support.dim;
  Point dir = unit_dir(eta, dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logt(std::log(0.01), std::log(0.3));
  std::uniform_real_distribution<double> ang(-beta_angle, beta_angle);
  double inr = u.support.inradius();
  double u0 = u(x0);
  ConeStats cs;
  cs.samples = count;
  cs.min_q = std::numeric_limits<double>::infinity();
  cs.max_q = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < count; ++k) {
    double t = inr * std::exp(logt(rng));
    Point d = dir;
    if (dim == 2 && beta_angle > 0.0) {
      double phi = ang(rng);
      double c = std::cos(phi), sn = std::sin(phi);
      d = {c * dir[0] - sn * dir[1], sn * dir[0] + c * dir[1]};
    }
    Point x{x0[0] + t * d[0], x0[1] + t * d[1]};
    double q = (u(x) - u0) / t;
    cs.min_q = std::min(cs.min_q, q);
    cs.max_q = std::max(cs.max_q, q);
  }
  cs.fit_over_cbeta = cs.min_q / std::cos(beta_angle);
  cs.pass = cs.min_q > 0.0;
  return cs;
}

GrowthReport compute_growth_phi(const Field& u, const Point& x0, const Point& eta,
                                const std::vector<double>& radii, double p, double s) {
  if (!(p > 1.0)) throw DomainError("growth exponent must exceed 1");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  if (radii.empty()) throw DomainError("need at least one radius");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0)) throw DomainError("radii must be positive");
    if (k > 0 && radii[k] > radii[k - 1]) throw DomainError("radii must be non-increasing");
  }
  const int dim = u.support.dim;
  Point dir = unit_dir(eta, dim);
  GrowthReport gr;
  for (double r : radii) {
    Point xr{x0[0] + r * dir[0], x0[1] + r * dir[1]};
    double inf = std::numeric_limits<double>::infinity();
    if (u.source == Field::Source::GridSamples && u.grid) {
      int found = 0;
      for (std::size_t i = 0; i < u.grid->size(); ++i) {
        Point gl{u.grid->nodes[i][0] + u.shift[0], u.grid->nodes[i][1] + u.shift[1]};
        if (dist(gl, xr, dim) <= 0.5 * r) {
          inf = std::min(inf, std::fabs(u(gl)));
          ++found;
        }
      }
      if (found == 0) {
        gr.notes.push_back(fmt("radius %g has no sample nodes in the half ball", r));
        gr.radii.push_back(r);
        gr.phi.push_back(0.0);
        continue;
      }
    } else if (dim == 1) {
      for (int j = 0; j <= 64; ++j) {
        double x = xr[0] - 0.5 * r + j * (r / 64.0);
        inf = std::min(inf, std::fabs(u({x, 0.0})));
      }
    } else {
      inf = std::fabs(u(xr));
      for (int jr = 0; jr < 8; ++jr)
        for (int ja = 0; ja < 8; ++ja) {
          double rr = 0.5 * r * (jr + 1) / 8.0;
          double aa = 2.0 * M_PI * ja / 8.0;
          inf = std::min(inf,
                         std::fabs(u({xr[0] + rr * std::cos(aa), xr[1] + rr * std::sin(aa)})));
        }
    }
    gr.radii.push_back(r);
    if (inf == 0.0) {
      gr.notes.push_back(fmt("radius %g rejected: the field vanishes on the half ball", r));
      gr.phi.push_back(0.0);
      continue;
    }
    gr.phi.push_back(std::pow(inf, p - 1.0) / std::pow(r, p * s));
  }
  double first = 0.0, last = 0.0;
  int valid = 0;
  for (double v : gr.phi)
    if (v > 0.0) {
      if (valid == 0) first = v;
      last = v;
      ++valid;
    }
  if (valid < 2) {
    gr.notes.push_back("too few valid radii to compare growth");
    gr.diverges = false;
  } else {
    gr.diverges = last > 10.0 * first;
  }
  return gr;
}

HopfReport verify_barrier(const YoungFunction& yf, double s, double rho, double r,
                          double u_inf, const QuadratureScheme& sch, int dim) {
  if (!(rho > 0.0 && rho < 0.5)) throw ConfigError("barrier depth must lie in (0, 1/2)");
  if (!(r > 0.0)) throw ConfigError("barrier radius must be positive");
  if (!(u_inf > 0.0)) throw ConfigError("barrier needs a positive interior bound");
  if (dim != 1 && dim != 2) throw ConfigError("ambient dimension must be 1 or 2");

  HopfReport rep;
  rep.experiment = "barrier";
  const YoungFunction yf_r = yf.scaled(r, s);
  const Domain unit = Domain::ball({0.0, 0.0}, 1.0, dim);
  const double w = 1.0 - 2.0 * rho;

  // bump profile: eta = c_eta (1 - |x|^2/w^2)_+^2, scaled so eta <= 1
  double mass = dim == 1 ? 16.0 * w / 15.0 : M_PI * w * w / 3.0;
  double c_eta = std::min(1.0, 1.0 / mass);
  auto eta_of = [=](const Point& x) {
    double r2 = dim == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    double t = 1.0 - r2 / (w * w);
    return t > 0.0 ? c_eta * t * t : 0.0;
  };

  // increment-lemma constant over a deterministic magnitude ladder
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 25; ++i) {
    double t1 = 1e-3 * std::pow(1e6, i / 24.0);
    for (int j = i; j < 25; ++j) pairs.emplace_back(t1, 1e-3 * std::pow(1e6, j / 24.0));
  }
  double c1 = std::min(1.0, check_increment_lemmas(yf, pairs).inf_ratio);

  // annulus probe radii
  std::vector<double> rad(33);
  for (int j = 0; j < 33; ++j) rad[j] = 1.0 - rho + (j + 0.5) * rho / 33.0;

  // Q: the bump seen through the density from the annulus (nonsingular, the
  // gap is at least rho)
  double beta_t = u_inf / (2.0 * std::pow(r, s));
  double q_min = std::numeric_limits<double>::infinity();
  for (double rj : rad) {
    Point x{rj, 0.0};
    double q = 0.0;
    if (dim == 1) {
      const int m = 512;
      double cell = 2.0 * w / m;
      for (int i = 0; i < m; ++i) {
        double y = -w + (i + 0.5) * cell;
        double dxy = std::fabs(x[0] - y);
        q += yf.a(beta_t * eta_of({y, 0.0}) * std::pow(dxy, -s)) *
             std::pow(dxy, -1.0 - s) * cell;
      }
    } else {
      const int m = 128;
      double cell = 2.0 * w / m;
      for (int iy = 0; iy < m; ++iy)
        for (int ix = 0; ix < m; ++ix) {
          Point y{-w + (ix + 0.5) * cell, -w + (iy + 0.5) * cell};
          double e = eta_of(y);
          if (e == 0.0) continue;
          double dxy = dist(x, y, 2);
          q += yf.a(beta_t * e * std::pow(dxy, -s)) * std::pow(dxy, -2.0 - s) * cell * cell;
        }
    }
    q_min = std::min(q_min, q);
  }
  double T = 0.5 * c1 * q_min;

  // halve lambda until the pure distance barrier has operator within T
  Field d_unit = distance_field(unit);
  double lambda0 = 1.0;
  bool lambda_found = false;
  for (int m = 0; m <= 60; ++m) {
    Field half_d = d_unit.scaled_by(0.5 * lambda0);
    double sup = 0.0;
    for (double rj : rad)
      sup = std::max(sup, std::fabs(eval_pointwise(yf_r, half_d, {rj, 0.0}, s, sch).value));
    if (sup <= T) {
      lambda_found = true;
      break;
    }
    lambda0 *= 0.5;
  }
  rep.put("c1", c1);
  rep.put("Q_min", q_min);
  rep.put("T", T);
  if (!lambda_found) {
    rep.notes.push_back("no dyadic scale brought the distance barrier under the bump bound");
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }

  double C_r = 2.0;
  while (!(u_inf / C_r < lambda0)) {
    C_r *= 2.0;
    if (C_r > 1e60) {
      rep.notes.push_back("interior bound could not be folded under the barrier scale");
      rep.verdict = Verdict::Inconclusive;
      return rep;
    }
  }
  double alpha = u_inf / C_r;
  rep.put("lambda0", lambda0);
  rep.put("C_r", C_r);
  rep.put("alpha", alpha);

  Domain support = unit;
  double lip = 0.5 * alpha + 0.5 * C_r * alpha * c_eta * 4.0 / w;
  double sup_est = 0.5 * alpha + 0.5 * C_r * alpha * c_eta;
  Field psi = analytic_field(
      [=](const Point& x) {
        return 0.5 * alpha * support.distance(x) + 0.5 * C_r * alpha * eta_of(x);
      },
      support, true, lip, sup_est);

  rep.columns = {"radius", "op_psi"};
  auto probe = [&](const QuadratureScheme& scheme) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double rj : rad) {
      double v = eval_pointwise(yf_r, psi, {rj, 0.0}, s, scheme).value;
      mx = std::max(mx, v);
      if (&scheme == &sch) rep.rows.push_back({rj, v});
    }
    return mx;
  };
  double mx = probe(sch);
  rep.put("max_op", mx);
  double tol = 1e-12 * (1.0 + std::fabs(mx));

  // side conditions sampled over the closed ball and a few outside points
  double side1 = -std::numeric_limits<double>::infinity();
  double side3 = std::numeric_limits<double>::infinity();
  auto visit = [&](const Point& x) {
    double v = psi(x);
    double x2 = dim == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    side1 = std::max(side1, v - alpha * C_r);
    side3 = std::min(side3, v - 0.25 * alpha * (1.0 - x2));
  };
  if (dim == 1) {
    for (int j = 0; j <= 128; ++j) visit({-1.0 + j / 64.0, 0.0});
  } else {
    visit({0.0, 0.0});
    for (int jr = 1; jr <= 33; ++jr)
      for (int ja = 0; ja < 16; ++ja) {
        double rr = jr / 33.0;
        double aa = 2.0 * M_PI * ja / 16.0;
        visit({rr * std::cos(aa), rr * std::sin(aa)});
      }
  }
  double side2 = 0.0;
  for (double t : {1.0 + 1e-9, 1.5, 2.0, 10.0})
    side2 = std::max(side2, std::fabs(psi({t, 0.0})));
  rep.put("side_cap_margin", side1);
  rep.put("side_outside_sup", side2);
  rep.put("side_paraboloid_margin", side3);
  bool sides_ok = side1 <= 1e-12 * (1.0 + alpha * C_r) && side2 == 0.0 &&
                  side3 >= -1e-12 * (1.0 + alpha);
  if (!sides_ok) rep.notes.push_back("a side condition on the barrier profile failed");

  if (mx <= tol && sides_ok) {
    rep.verdict = Verdict::Pass;
    return rep;
  }
  if (!sides_ok) {
    rep.verdict = Verdict::Fail;
    return rep;
  }
  QuadratureScheme fine = sch.refined();
  double mx2 = probe(fine);
  rep.put("max_op_refined", mx2);
  if (mx2 <= 1e-12 * (1.0 + std::fabs(mx2))) {
    rep.notes.push_back("sign test passed only under the refined quadrature");
    rep.verdict = Verdict::Pass;
    return rep;
  }
  double dis = std::fabs(mx2 - mx) / std::max(std::fabs(mx2), std::fabs(mx));
  if (dis > 0.25) {
    rep.notes.push_back("coarse and refined quadratures disagree on the operator sign");
    rep.verdict = Verdict::Inconclusive;
  } else {
    rep.verdict = Verdict::Fail;
  }
  return rep;
}

HopfReport potential_experiment(const YoungFunction& yf, double s, const Field& c_field,
                                double beta, const Domain& ball, double h) {
  if (!(beta > 0.0)) throw ConfigError("potential experiment needs a positive source");
  if (!(h > 0.0)) throw ConfigError("spacing must be positive");
  auto g = Grid::make(ball, h);
  for (std::size_t i = 0; i < g->size(); ++i)
    if (g->cell[i] > 0.0 && c_field(g->nodes[i]) > 0.0)
      throw ConfigError(
          "zero-order coefficient must be nonpositive here; positive potentials call "
          "for the cone-quotient and growth-function experiments instead");

  DiscreteSolution sol = solve_torsion(beta, ball, yf, s, g);
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sol.values.size(); ++i) {
    int id = g->interior[i];
    double margin = beta - c_field(g->nodes[id]) * yf.a(sol.values[i]);
    min_margin = std::min(min_margin, margin);
  }

  double R = ball.inradius();
  Point x0{ball.center[0] + R, ball.center[1]};
  RaySequence rs =
      boundary_quotient_ray(sol.as_field, x0, {-1.0, 0.0}, 0.5 * R, 4.0 * h);

  HopfReport rep;
  rep.experiment = "potential";
  rep.columns = {"t", "q"};
  for (std::size_t k = 0; k < rs.t.size(); ++k) rep.rows.push_back({rs.t[k], rs.q[k]});
  rep.put("beta", beta);
  rep.put("h", h);
  rep.put("min_margin", min_margin);
  rep.put("ray_min_q", rs.running_min);
  if (!rs.note.empty()) rep.notes.push_back(rs.note);
  bool ok = min_margin > 0.0 && rs.pass;
  if (!rs.pass) rep.notes.push_back("ray quotients failed the positivity/ratio check");
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return rep;
}

}  // namespace folap
