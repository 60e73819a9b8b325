#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "folap/fields.hpp"
#include "folap/young.hpp"

namespace folap {

// discrete Dirichlet energy
//   E(u) = 1/2 sum_{i != j} w_ij A(|u_i-u_j| / d_ij^s)
//          + sum_i X_i(u_i)            (coupling with the zero exterior)
//          - sum_i m_i f_i u_i
// over interior nodes.  1-d pair weights are exact cell-pair integrals of
// |x-y|^{-1} (adjacent cells truncated at |x-y| > h); 2-d uses tabulated unit
// integrals of |x-y|^{-2} for nearby offsets and the midpoint rule farther
// out.  X_i is integrated in closed form for finite power sums and by fixed
// Gauss nodes otherwise, so the gradient is the exact derivative of E.
struct DiscreteProblem {
  std::shared_ptr<const Grid> grid;
  Domain domain;
  YoungFunction yf;
  double s = 0.5;
  int dim = 1;
  std::vector<int> interior;           // node ids, solver order
  std::vector<double> mass;            // m_i
  std::vector<double> source;          // f_i; empty means 0

  // 1-d tables indexed by node offset k = |i-j|
  std::vector<double> pair_w;          // w(k), [0] unused
  std::vector<double> pair_invds;      // d(k)^{-s}
  // 2-d flattened pair list
  std::vector<std::int32_t> pi, pj;
  std::vector<double> pw, pinvds;
  // exterior coupling: power-sum closed form  (per term t, per node i)
  std::vector<double> ext_exp;                 // exponent e of a-term
  std::vector<std::vector<double>> ext_coef;   // grad = coef * |v|^e sign(v)
  // quadrature fallback (non power-sum families)
  std::vector<double> gauss_x, gauss_w;        // nodes on (0,1)
  std::vector<double> ray_w;                   // per node*ray: W = rho^{-s}
  std::vector<double> ray_weight;              // angular weight per node*ray
  int rays_per_node = 0;

  DiscreteProblem(const DiscreteProblem&) = default;
  DiscreteProblem(DiscreteProblem&&) = default;
  DiscreteProblem& operator=(const DiscreteProblem&) = default;
  DiscreteProblem& operator=(DiscreteProblem&&) = default;
  DiscreteProblem() : yf(YoungFunction::power(4.0)) {}
};

DiscreteProblem assemble(const Domain& dom, std::shared_ptr<const Grid> g,
                         const YoungFunction& yf, double s);

double energy(const DiscreteProblem& pb, const std::vector<double>& u);
void energy_gradient(const DiscreteProblem& pb, const std::vector<double>& u,
                     std::vector<double>& out);
// ordered sum over all pairs of w_ij (the cell-pair weight oracle target)
double total_pair_weight(const DiscreteProblem& pb);

struct SolveOptions {
  double grad_tol = 1e-8;
  int max_iter = 50000;
  bool precondition = true;
  // after each accepted step clamp u at 0 from below; this never increases the
  // energy when f >= 0, and it makes nonnegativity of solutions exact
  bool truncate_nonnegative = false;
  double armijo_slope = 1e-4;
  double backtrack = 0.5;
  std::vector<double> init;  // optional start, interior ordering
};

struct DiscreteSolution {
  std::vector<double> values;  // interior ordering
  double energy = 0.0;
  double grad_sup = 0.0;
  int iterations = 0;
  bool converged = false;
  bool energy_monotone = true;
  std::vector<std::string> notes;
  Field as_field;  // grid samples, zero outside
};

// preconditioned gradient descent with a Barzilai-Borwein trial step and
// Armijo backtracking (factor 0.5, slope 1e-4); exits when the gradient
// sup-norm drops below grad_tol
DiscreteSolution solve(const DiscreteProblem& pb, const std::vector<double>& f,
                       const SolveOptions& opts = {});

SolveOptions torsion_defaults();  // grad_tol 1e-10, nonnegative truncation on

// constant source beta on a ball; warm-started from the best multiple of the
// distance function
DiscreteSolution solve_torsion(double beta, const Domain& ball, const YoungFunction& yf,
                               double s, std::shared_ptr<const Grid> g,
                               SolveOptions opts = torsion_defaults());

// max over test fields phi of |<operator part, phi> - sum m_i f_i phi(x_i)|
double weak_residual(const DiscreteProblem& pb, const std::vector<double>& u,
                     const std::vector<double>& f, const std::vector<Field>& tests);

}  // namespace folap
