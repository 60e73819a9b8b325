#include "folap/modulars.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "folap/errors.hpp"

namespace folap {

double modular(const YoungFunction& yf, const Field& u, const Domain& dom, const Grid& g) {
  (void)dom;  // the grid already carries the containment weights of its domain
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.cell[i] == 0.0) continue;
    sum += g.cell[i] * yf.A(u(g.nodes[i]));
  }
  return sum;
}

double fractional_modular(const YoungFunction& yf, const Field& u, const Domain& dom,
                          const Grid& g, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  (void)dom;
  int n = g.dim;
  std::vector<std::size_t> ids;
  std::vector<double> vals;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.cell[i] > 0.0) {
      ids.push_back(i);
      vals.push_back(u(g.nodes[i]));
    }
  double sum = 0.0;
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      double d = dist(g.nodes[ids[a]], g.nodes[ids[b]], n);
      double kernel = (n == 1) ? 1.0 / d : 1.0 / (d * d);
      sum += 2.0 * g.cell[ids[a]] * g.cell[ids[b]] * kernel *
             yf.A(std::fabs(vals[a] - vals[b]) / std::pow(d, s));
    }
  return sum;
}

double luxemburg_norm(const YoungFunction& yf,
                      const std::function<double(double)>& modular_of) {
  double phi1 = modular_of(1.0);
  if (phi1 == 0.0) return 0.0;
  const GrowthIndices& gi = yf.indices();
  double lo = 1.0, hi = 1.0;
  if (std::isfinite(phi1)) {
    // if ||u|| = lam then phi(1) = phi(lam * u/lam) sits between lam^p and
    // lam^q times 1, so lam is bracketed by the two roots
    double r1 = std::pow(phi1, 1.0 / gi.p_wide());
    double r2 = std::pow(phi1, 1.0 / gi.q_wide());
    lo = std::min(r1, r2) * 0.99;
    hi = std::max(r1, r2) * 1.01;
  }
  int guard = 0;
  while (!(modular_of(hi) <= 1.0)) {
    hi *= 2.0;
    if (++guard > 300)
      throw NormInfiniteError("luxemburg norm: modular never drops below one");
  }
  guard = 0;
  while (modular_of(lo) < 1.0) {
    lo *= 0.5;
    if (++guard > 300) return 0.0;  // modular vanishes at every positive scale
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 + 1e-10 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (modular_of(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace folap
