#include "folap/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "folap/errors.hpp"
#include "gauss_legendre.hpp"

namespace folap {

namespace {

void require_admissible(const YoungFunction& yf, double s) {
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

// unit-cell pair integrals of |x-y|^{-2} in 2-d: offsets with |Delta|_inf <= 3
// get the tent-weighted integral (singular band |x-y| <= h excluded), indexed
// [dx+3][dy+3].  512^2 midpoint rule, computed once.
const std::array<std::array<double, 7>, 7>& cell_pair_table() {
  static const std::array<std::array<double, 7>, 7> table = [] {
    std::array<std::array<double, 7>, 7> t{};
    const int m = 512;
    const double cell = 2.0 / m;
    for (int iy = 0; iy < m; ++iy) {
      double vy = -1.0 + (iy + 0.5) * cell;
      double ty = 1.0 - std::fabs(vy);
      for (int ix = 0; ix < m; ++ix) {
        double vx = -1.0 + (ix + 0.5) * cell;
        double tent = (1.0 - std::fabs(vx)) * ty;
        for (int dx = -3; dx <= 3; ++dx)
          for (int dy = -3; dy <= 3; ++dy) {
            if (dx == 0 && dy == 0) continue;
            double zx = vx + dx, zy = vy + dy;
            double r2 = zx * zx + zy * zy;
            if (r2 > 1.0) t[dx + 3][dy + 3] += tent / r2;
          }
      }
    }
    for (auto& row : t)
      for (double& v : row) v *= cell * cell;
    return t;
  }();
  return table;
}

struct Rays {
  std::vector<Point> dir;
  double weight = 1.0;
};

Rays make_rays(int n) {
  Rays r;
  if (n == 1) {
    r.dir = {{{1.0, 0.0}}, {{-1.0, 0.0}}};
    r.weight = 1.0;
  } else {
    const int m = 64;
    r.dir.reserve(m);
    for (int k = 0; k < m; ++k) {
      double phi = 2.0 * M_PI * k / m;
      r.dir.push_back({std::cos(phi), std::sin(phi)});
    }
    r.weight = 2.0 * M_PI / m;
  }
  return r;
}

// energy / gradient with an explicit source pointer (null means f = 0)
double energy_impl(const DiscreteProblem& pb, const std::vector<double>& u,
                   const std::vector<double>* f) {
  const YoungFunction& yf = pb.yf;
  const std::size_t n = pb.interior.size();
  double e = 0.0;
  if (pb.dim == 1) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        int k = pb.interior[b] - pb.interior[a];
        e += pb.pair_w[k] * yf.A((u[a] - u[b]) * pb.pair_invds[k]);
      }
  } else {
    for (std::size_t m = 0; m < pb.pw.size(); ++m)
      e += pb.pw[m] * yf.A((u[pb.pi[m]] - u[pb.pj[m]]) * pb.pinvds[m]);
  }
  if (!pb.ext_exp.empty()) {
    for (std::size_t t = 0; t < pb.ext_exp.size(); ++t) {
      double e1 = pb.ext_exp[t] + 1.0;
      const std::vector<double>& coef = pb.ext_coef[t];
      for (std::size_t i = 0; i < n; ++i)
        e += coef[i] * std::pow(std::fabs(u[i]), e1) / e1;
    }
  } else if (pb.rays_per_node > 0) {
    const int R = pb.rays_per_node;
    const int Q = static_cast<int>(pb.gauss_x.size());
    for (std::size_t i = 0; i < n; ++i) {
      double v = u[i];
      if (v == 0.0) continue;
      for (int r = 0; r < R; ++r) {
        double W = pb.ray_w[i * R + r];
        if (W == 0.0) continue;
        double acc = 0.0;
        for (int q = 0; q < Q; ++q)
          acc += pb.gauss_w[q] * yf.A(v * W * pb.gauss_x[q]) / pb.gauss_x[q];
        e += pb.ray_weight[i * R + r] / pb.s * acc;
      }
    }
  }
  if (f && !f->empty())
    for (std::size_t i = 0; i < n; ++i) e -= pb.mass[i] * (*f)[i] * u[i];
  return e;
}

void gradient_impl(const DiscreteProblem& pb, const std::vector<double>& u,
                   const std::vector<double>* f, std::vector<double>& g) {
  const YoungFunction& yf = pb.yf;
  const std::size_t n = pb.interior.size();
  g.assign(n, 0.0);
  if (pb.dim == 1) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        int k = pb.interior[b] - pb.interior[a];
        double invds = pb.pair_invds[k];
        double t = pb.pair_w[k] * yf.a((u[a] - u[b]) * invds) * invds;
        g[a] += t;
        g[b] -= t;
      }
  } else {
    for (std::size_t m = 0; m < pb.pw.size(); ++m) {
      double invds = pb.pinvds[m];
      double t = pb.pw[m] * yf.a((u[pb.pi[m]] - u[pb.pj[m]]) * invds) * invds;
      g[pb.pi[m]] += t;
      g[pb.pj[m]] -= t;
    }
  }
  if (!pb.ext_exp.empty()) {
    for (std::size_t t = 0; t < pb.ext_exp.size(); ++t) {
      double e = pb.ext_exp[t];
      const std::vector<double>& coef = pb.ext_coef[t];
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == 0.0) continue;
        double mag = coef[i] * std::pow(std::fabs(u[i]), e);
        g[i] += u[i] > 0.0 ? mag : -mag;
      }
    }
  } else if (pb.rays_per_node > 0) {
    const int R = pb.rays_per_node;
    const int Q = static_cast<int>(pb.gauss_x.size());
    for (std::size_t i = 0; i < n; ++i) {
      double v = u[i];
      for (int r = 0; r < R; ++r) {
        double W = pb.ray_w[i * R + r];
        if (W == 0.0) continue;
        double acc = 0.0;
        for (int q = 0; q < Q; ++q) acc += pb.gauss_w[q] * yf.a(v * W * pb.gauss_x[q]);
        g[i] += pb.ray_weight[i * R + r] * W / pb.s * acc;
      }
    }
  }
  if (f && !f->empty())
    for (std::size_t i = 0; i < n; ++i) g[i] -= pb.mass[i] * (*f)[i];
}

// diagonal curvature estimate used as the preconditioner
void curvature_diag(const DiscreteProblem& pb, const std::vector<double>& u,
                    std::vector<double>& d) {
  const YoungFunction& yf = pb.yf;
  const std::size_t n = pb.interior.size();
  d.assign(n, 0.0);
  if (pb.dim == 1) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        int k = pb.interior[b] - pb.interior[a];
        double invds = pb.pair_invds[k];
        double t = pb.pair_w[k] * yf.a_prime((u[a] - u[b]) * invds) * invds * invds;
        d[a] += t;
        d[b] += t;
      }
  } else {
    for (std::size_t m = 0; m < pb.pw.size(); ++m) {
      double invds = pb.pinvds[m];
      double t = pb.pw[m] * yf.a_prime((u[pb.pi[m]] - u[pb.pj[m]]) * invds) * invds * invds;
      d[pb.pi[m]] += t;
      d[pb.pj[m]] += t;
    }
  }
  if (!pb.ext_exp.empty()) {
    for (std::size_t t = 0; t < pb.ext_exp.size(); ++t) {
      double e = pb.ext_exp[t];
      const std::vector<double>& coef = pb.ext_coef[t];
      for (std::size_t i = 0; i < n; ++i)
        if (u[i] != 0.0) d[i] += coef[i] * e * std::pow(std::fabs(u[i]), e - 1.0);
    }
  } else if (pb.rays_per_node > 0) {
    const int R = pb.rays_per_node;
    const int Q = static_cast<int>(pb.gauss_x.size());
    for (std::size_t i = 0; i < n; ++i) {
      double v = u[i];
      for (int r = 0; r < R; ++r) {
        double W = pb.ray_w[i * R + r];
        if (W == 0.0) continue;
        double acc = 0.0;
        for (int q = 0; q < Q; ++q)
          acc += pb.gauss_w[q] * yf.a_prime(v * W * pb.gauss_x[q]) * pb.gauss_x[q];
        d[i] += pb.ray_weight[i * R + r] * W * W / pb.s * acc;
      }
    }
  }
  double dmax = 0.0;
  for (double v : d) dmax = std::max(dmax, v);
  if (dmax <= 0.0) {
    d.assign(n, 1.0);
    return;
  }
  double floor_v = 1e-8 * dmax;
  for (double& v : d) v = std::max(v, floor_v);
}

}  // namespace

DiscreteProblem assemble(const Domain& dom, std::shared_ptr<const Grid> g,
                         const YoungFunction& yf, double s) {
  require_admissible(yf, s);
  if (!g) throw DomainError("assemble needs a grid");
  if (g->dim != dom.dim) throw DomainError("grid and domain dimensions disagree");
  DiscreteProblem pb;
  pb.grid = g;
  pb.domain = dom;
  pb.yf = yf;
  pb.s = s;
  pb.dim = g->dim;
  pb.interior = g->interior;
  const std::size_t n = pb.interior.size();
  if (n == 0) throw DomainError("no interior nodes at this spacing");
  pb.mass.resize(n);
  for (std::size_t i = 0; i < n; ++i) pb.mass[i] = g->cell[pb.interior[i]];

  if (pb.dim == 1) {
    double h = g->step[0];
    int kmax = g->npts[0];
    pb.pair_w.assign(kmax, 0.0);
    pb.pair_invds.assign(kmax, 0.0);
    for (int k = 1; k < kmax; ++k) {
      if (k == 1) {
        pb.pair_w[k] = (2.0 * std::log(2.0) - 1.0) * h;
      } else {
        double kk = k;
        pb.pair_w[k] = h * ((kk + 1.0) * std::log(kk + 1.0) - 2.0 * kk * std::log(kk) +
                            (kk - 1.0) * std::log(kk - 1.0));
      }
      pb.pair_invds[k] = std::pow(k * h, -s);
    }
  } else {
    if (double(n) * double(n) > 4e8)
      throw NumericError("too many interior node pairs; coarsen the grid");
    double h = g->step[0];
    if (std::fabs(g->step[1] - h) > 1e-12 * std::max(h, g->step[1]))
      throw DomainError("2-d assembly needs equal spacings per axis");
    const auto& tab = cell_pair_table();
    double h2 = h * h;
    pb.pi.reserve(n * (n - 1) / 2);
    pb.pj.reserve(n * (n - 1) / 2);
    pb.pw.reserve(n * (n - 1) / 2);
    pb.pinvds.reserve(n * (n - 1) / 2);
    // node id -> (i,j) lattice coordinates
    int nx = g->npts[0];
    for (std::size_t a = 0; a < n; ++a) {
      int ida = pb.interior[a];
      int ax = ida % nx, ay = ida / nx;
      for (std::size_t b = a + 1; b < n; ++b) {
        int idb = pb.interior[b];
        int bx = idb % nx, by = idb / nx;
        int dx = bx - ax, dy = by - ay;
        double w;
        if (std::abs(dx) <= 3 && std::abs(dy) <= 3) {
          w = h2 * tab[dx + 3][dy + 3];
        } else {
          double d2 = double(dx) * dx + double(dy) * dy;
          w = h2 * h2 / (h2 * d2);  // midpoint: h^4 / dist^2
        }
        double d = h * std::sqrt(double(dx) * dx + double(dy) * dy);
        pb.pi.push_back(static_cast<std::int32_t>(a));
        pb.pj.push_back(static_cast<std::int32_t>(b));
        pb.pw.push_back(w);
        pb.pinvds.push_back(std::pow(d, -s));
      }
    }
  }

  // coupling with the zero exterior, integrated along rays from each node
  const Rays rays = make_rays(pb.dim);
  std::vector<PowerTerm> terms = yf.power_terms();
  if (!terms.empty()) {
    pb.ext_exp.resize(terms.size());
    pb.ext_coef.assign(terms.size(), std::vector<double>(n, 0.0));
    for (std::size_t t = 0; t < terms.size(); ++t) pb.ext_exp[t] = terms[t].exp;
    for (std::size_t i = 0; i < n; ++i) {
      const Point& x = g->nodes[pb.interior[i]];
      for (const Point& d : rays.dir) {
        double exit_t = dom.ray_exit(x, d);
        if (!(exit_t > 0.0)) continue;
        double W = std::pow(exit_t, -s);
        for (std::size_t t = 0; t < terms.size(); ++t) {
          double e1 = terms[t].exp + 1.0;
          pb.ext_coef[t][i] +=
              pb.mass[i] * rays.weight / s * terms[t].coef * std::pow(W, e1) / e1;
        }
      }
    }
  } else {
    detail::gauss_legendre_01(200, pb.gauss_x, pb.gauss_w);
    pb.rays_per_node = static_cast<int>(rays.dir.size());
    pb.ray_w.assign(n * rays.dir.size(), 0.0);
    pb.ray_weight.assign(n * rays.dir.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const Point& x = g->nodes[pb.interior[i]];
      for (std::size_t r = 0; r < rays.dir.size(); ++r) {
        double exit_t = dom.ray_exit(x, rays.dir[r]);
        if (!(exit_t > 0.0)) continue;
        pb.ray_w[i * rays.dir.size() + r] = std::pow(exit_t, -s);
        pb.ray_weight[i * rays.dir.size() + r] = pb.mass[i] * rays.weight;
      }
    }
  }
  return pb;
}

double energy(const DiscreteProblem& pb, const std::vector<double>& u) {
  if (u.size() != pb.interior.size())
    throw DomainError("state size does not match the interior node count");
  return energy_impl(pb, u, pb.source.empty() ? nullptr : &pb.source);
}

void energy_gradient(const DiscreteProblem& pb, const std::vector<double>& u,
                     std::vector<double>& out) {
  if (u.size() != pb.interior.size())
    throw DomainError("state size does not match the interior node count");
  gradient_impl(pb, u, pb.source.empty() ? nullptr : &pb.source, out);
}

double total_pair_weight(const DiscreteProblem& pb) {
  double sum = 0.0;
  const std::size_t n = pb.interior.size();
  if (pb.dim == 1) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        sum += pb.pair_w[pb.interior[b] - pb.interior[a]];
  } else {
    for (double w : pb.pw) sum += w;
  }
  return 2.0 * sum;  // both orderings
}

DiscreteSolution solve(const DiscreteProblem& pb, const std::vector<double>& f,
                       const SolveOptions& opts) {
  const std::size_t n = pb.interior.size();
  if (!f.empty() && f.size() != n)
    throw DomainError("source size does not match the interior node count");
  const std::vector<double>* fp = f.empty() ? nullptr : &f;

  DiscreteSolution sol;
  std::vector<double> u;
  if (!opts.init.empty()) {
    if (opts.init.size() != n) throw DomainError("init size does not match");
    u = opts.init;
  } else {
    u.assign(n, 0.0);
  }
  if (opts.truncate_nonnegative)
    for (double& v : u) v = std::max(v, 0.0);

  std::vector<double> g(n), d(n, 1.0), u_new(n), g_new(n), dir(n);
  gradient_impl(pb, u, fp, g);
  double E = energy_impl(pb, u, fp);
  if (opts.precondition) curvature_diag(pb, u, d);

  double t_bb = 1.0;
  const double eps4 = 4.0 * std::numeric_limits<double>::epsilon();
  int iter = 0;
  sol.energy_monotone = true;
  std::vector<double> u_prev, g_prev;
  for (; iter < opts.max_iter; ++iter) {
    double gsup = 0.0;
    for (double v : g) gsup = std::max(gsup, std::fabs(v));
    if (gsup <= opts.grad_tol) {
      sol.converged = true;
      break;
    }
    if (opts.precondition && iter > 0 && iter % 20 == 0) curvature_diag(pb, u, d);
    for (std::size_t i = 0; i < n; ++i) dir[i] = opts.precondition ? g[i] / d[i] : g[i];

    double step = t_bb;
    bool accepted = false;
    double E_new = E;
    for (int bt = 0; bt <= 60; ++bt) {
      double gdot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double v = u[i] - step * dir[i];
        if (opts.truncate_nonnegative && v < 0.0) v = 0.0;
        u_new[i] = v;
        gdot += g[i] * (v - u[i]);
      }
      E_new = energy_impl(pb, u_new, fp);
      if (std::isfinite(E_new) &&
          E_new <= E + opts.armijo_slope * gdot + eps4 * (std::fabs(E) + 1.0)) {
        accepted = true;
        break;
      }
      step *= opts.backtrack;
    }
    if (!accepted) throw NumericError("line search stalled");
    if (E_new > E + eps4 * (std::fabs(E) + 1.0)) sol.energy_monotone = false;

    gradient_impl(pb, u_new, fp, g_new);
    // Barzilai-Borwein trial step for the next iteration, in the metric D
    double sy = 0.0, yz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double si = u_new[i] - u[i];
      double yi = g_new[i] - g[i];
      sy += si * yi;
      yz += yi * (opts.precondition ? yi / d[i] : yi);
    }
    t_bb = (std::isfinite(sy) && std::isfinite(yz) && sy > 0.0 && yz > 0.0) ? sy / yz : 1.0;
    t_bb = std::min(std::max(t_bb, 1e-14), 1e8);

    u.swap(u_new);
    g.swap(g_new);
    E = E_new;
  }

  sol.values = u;
  sol.energy = E;
  double gsup = 0.0;
  for (double v : g) gsup = std::max(gsup, std::fabs(v));
  sol.grad_sup = gsup;
  sol.iterations = iter;
  if (!sol.converged) sol.notes.push_back("iteration cap reached before the gradient tolerance");

  std::vector<double> full(pb.grid->size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) full[pb.interior[i]] = u[i];
  sol.as_field = grid_field(pb.grid, std::move(full), true);
  return sol;
}

SolveOptions torsion_defaults() {
  SolveOptions o;
  o.grad_tol = 1e-10;
  o.truncate_nonnegative = true;
  return o;
}

DiscreteSolution solve_torsion(double beta, const Domain& ball, const YoungFunction& yf,
                               double s, std::shared_ptr<const Grid> g, SolveOptions opts) {
  if (beta < 0.0) throw DomainError("torsion source must be nonnegative");
  DiscreteProblem pb = assemble(ball, g, yf, s);
  const std::size_t n = pb.interior.size();
  std::vector<double> f(n, beta);
  pb.source = f;
  if (beta == 0.0) {
    DiscreteSolution sol;
    sol.values.assign(n, 0.0);
    sol.energy = 0.0;
    sol.grad_sup = 0.0;
    sol.converged = true;
    std::vector<double> full(g->size(), 0.0);
    sol.as_field = grid_field(g, std::move(full), true);
    return sol;
  }

  if (opts.init.empty()) {
    // warm start from the best multiple of the distance function
    std::vector<double> dvals(n);
    for (std::size_t i = 0; i < n; ++i) dvals[i] = g->dist[pb.interior[i]];
    auto value_at = [&](double c) {
      std::vector<double> cu(n);
      for (std::size_t i = 0; i < n; ++i) cu[i] = c * dvals[i];
      return energy_impl(pb, cu, &f);
    };
    std::vector<double> cs{0.0};
    for (int k = 0; k < 40; ++k) cs.push_back(1e-3 * std::pow(1e5, k / 39.0));
    std::size_t best = 0;
    double best_v = value_at(cs[0]);
    for (std::size_t k = 1; k < cs.size(); ++k) {
      double v = value_at(cs[k]);
      if (v < best_v) {
        best_v = v;
        best = k;
      }
    }
    double lo = cs[best > 0 ? best - 1 : 0];
    double hi = cs[std::min(best + 1, cs.size() - 1)];
    if (hi <= lo) hi = lo + 1e-3;
    const double phi = 0.6180339887498949;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = value_at(x1), f2 = value_at(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = value_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = value_at(x2);
      }
    }
    double c_star = 0.5 * (lo + hi);
    opts.init.resize(n);
    for (std::size_t i = 0; i < n; ++i) opts.init[i] = c_star * dvals[i];
  }

  DiscreteSolution sol = solve(pb, f, opts);
  double mn = 0.0;
  int zeros = 0;
  for (double v : sol.values) {
    mn = std::min(mn, v);
    if (v == 0.0) ++zeros;
  }
  if (mn < -1e-10) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "negative values in the torsion solution: min = %g", mn);
    sol.notes.push_back(buf);
  }
  if (zeros > 0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "interior nodes pinned at zero: %d", zeros);
    sol.notes.push_back(buf);
  }
  return sol;
}

double weak_residual(const DiscreteProblem& pb, const std::vector<double>& u,
                     const std::vector<double>& f, const std::vector<Field>& tests) {
  const std::size_t n = pb.interior.size();
  if (u.size() != n) throw DomainError("state size does not match the interior node count");
  if (!f.empty() && f.size() != n)
    throw DomainError("source size does not match the interior node count");
  std::vector<double> g0;
  gradient_impl(pb, u, nullptr, g0);
  double worst = 0.0;
  for (const Field& phi : tests) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double pv = phi(pb.grid->nodes[pb.interior[i]]);
      r += g0[i] * pv;
      if (!f.empty()) r -= pb.mass[i] * f[i] * pv;
    }
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

}  // namespace folap
