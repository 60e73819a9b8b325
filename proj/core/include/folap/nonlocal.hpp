#pragma once

#include <utility>
#include <vector>

#include "folap/fields.hpp"
#include "folap/young.hpp"

namespace folap {

// radial-angular quadrature for the pointwise nonlocal operator.  The radial
// axis splits at split_radius: a geometrically graded grid resolves [r_min,
// split], a single power-model cell covers [0, r_min], log-spaced nodes cover
// the far range.  Fields with compact support get their tail integrated in
// closed form (the bound is then 0); otherwise integration stops at
// truncation_radius and tail_policy decides whether the dropped mass is
// bounded analytically or ignored.
struct QuadratureScheme {
  double split_radius = 1.0;
  int near_count = 40;
  double grading = 0.85;
  int far_count = 48;
  int angular_count = 64;  // 2-d only
  double truncation_radius = 8.0;
  enum class TailPolicy { AnalyticBound, Ignore };
  TailPolicy tail_policy = TailPolicy::AnalyticBound;

  // graded so that r_min = split * grading^near_count is about h/4
  static QuadratureScheme for_spacing(double h);
  // doubled radial/angular resolution, sqrt grading (same r_min), doubled
  // truncation radius
  QuadratureScheme refined() const;
  double min_radius() const;
};

struct OperatorEval {
  double value = 0.0;       // near_field + far_field
  double near_field = 0.0;  // [0, split], including the power-model cell
  double far_field = 0.0;   // beyond split, including any closed-form tail
  double tail_bound = 0.0;  // bound on the dropped mass (0 when tail is exact)
};

// (-Delta_a)^s u(x) = \int a((u(x)-u(y))/|x-y|^s) |x-y|^{-n-s} dy,
// discretized as described on QuadratureScheme.  Throws DomainError for s
// outside (0,1) and AdmissibilityError when the growth indices are too weak
// for the requested s.
OperatorEval eval_pointwise(const YoungFunction& yf, const Field& u, const Point& x,
                            double s, const QuadratureScheme& sch);

// (n w_n / 2s) * a(2 K sup_u) * R_trunc^{-s}; w_1 = 2, w_2 = pi
double tail_bound_value(const YoungFunction& yf, double K, double sup_u, double R_trunc,
                        int n, double s);

// (1/2) \iint a(D_s u) D_s phi dnu over contained node pairs plus the
// closed-form coupling with the exterior (u, phi zero-extended)
double eval_weak_pairing(const YoungFunction& yf, const Field& u, const Field& phi,
                         const Domain& dom, const Grid& g, double s,
                         const QuadratureScheme& sch = {});

struct ContinuitySweep {
  std::vector<double> coeff;      // c_k
  std::vector<double> sup_value;  // max over contained nodes of |operator|
  std::vector<double> majorant;   // same quadrature with |c_k| |D_s u| inside a
  std::vector<double> tail;       // worst tail bound over nodes
  std::vector<int> arg_node;      // node attaining sup_value
};

// sweep of the operator along amplitudes c_k -> 0 (|c_k| non-increasing).
// The majorant is non-increasing term by term, which the sweep relies on.
ContinuitySweep continuity_sweep(const YoungFunction& yf, const Field& u,
                                 const std::vector<double>& coeffs, const Domain& dom,
                                 const Grid& g, double s, const QuadratureScheme& sch);

// margins eps * \int phi_j - <pairing(u), phi_j>; nonnegative margins witness
// that the pointwise bound |op| <= eps survives weak testing
std::vector<double> pointwise_implies_weak_margins(const YoungFunction& yf, const Field& u,
                                                   double eps, const Domain& dom,
                                                   const Grid& g,
                                                   const std::vector<Field>& tests, double s,
                                                   const QuadratureScheme& sch);

// halve c from 1 until max over contained nodes of |operator(c*u)| <= eps;
// returns (c, achieved sup)
std::pair<double, double> find_small_scale(const YoungFunction& yf, const Field& u,
                                           double eps, const Domain& dom, const Grid& g,
                                           double s, const QuadratureScheme& sch);

}  // namespace folap
