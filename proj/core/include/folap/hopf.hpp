#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "folap/fields.hpp"
#include "folap/nonlocal.hpp"
#include "folap/solver.hpp"
#include "folap/young.hpp"

namespace folap {

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);

// shared result shape for the boundary experiments: a verdict, named
// constants (insertion order preserved for deterministic serialization),
// free-form notes, and a trace table
struct HopfReport {
  std::string experiment;
  Verdict verdict = Verdict::Pass;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void put(const std::string& k, double v) { constants.emplace_back(k, v); }
  double get(const std::string& k) const;
};

// torsion solutions on balls B_R: checks C1(R) = min u/d > 0 and
// C2(R) = max u/d^s < inf, stability of C1 under mesh halving (< 20%), and
// the spread of C1 across R values ((max-min)/max < 50%)
HopfReport verify_two_sided(const YoungFunction& yf, double s, double beta,
                            const std::vector<double>& R_list, double h,
                            bool refine_check = true, int dim = 1);

// C_eps = min over the inner region of u_eps/d for torsion data eps; checks
// positivity, monotonicity in eps (1e-8 slack), and mesh stability
HopfReport verify_torsion_hopf(const YoungFunction& yf, double s,
                               const std::vector<double>& eps_list, double rho, double h,
                               bool refine_check = true, int dim = 1);

// solves on B_R, then the rescaled problem on B_1 with the argument-scaled
// family and source R^s * beta; the two discrete energies coincide up to a
// positive factor, so u_R(R x) must match the unit solution to solver accuracy
HopfReport verify_scaling(const YoungFunction& yf, double s, double beta,
                          const std::vector<double>& R_list, double h, int dim = 1);

// random nonnegative sources (solution stays >= -1e-8) and ordered source
// pairs (solutions ordered within 1e-8) on random balls
HopfReport verify_principles(const YoungFunction& yf, double s, int n_nonneg, int n_pairs,
                             std::uint64_t seed);

struct RaySequence {
  std::vector<double> t, q;  // q_k = u(x0 + t_k eta) / t_k
  double running_min = 0.0;
  bool pass = false;
  std::string note;
};
// dyadic quotients along the inward ray; t_k = t0 * 2^-k down to t_min_allowed
// (values below are truncated with a note).  Pass: all q_k > 0 and the last
// three consecutive ratios q_{k+1}/q_k stay above 1/2.
RaySequence boundary_quotient_ray(const Field& u, const Point& x0, const Point& eta,
                                  double t0, double t_min_allowed);

struct ConeStats {
  double min_q = 0.0, max_q = 0.0;
  double fit_over_cbeta = 0.0;  // min_q / cos(beta_angle)
  int samples = 0;
  bool pass = false;
};
// difference quotients (u(x)-u(x0))/|x-x0| over deterministic samples of the
// cone {angle(x-x0, eta) < beta_angle}; beta_angle -> 0 degenerates to the ray
ConeStats boundary_quotient_cone(const Field& u, const Point& x0, const Point& eta,
                                 double beta_angle, int count, std::uint64_t seed);

struct GrowthReport {
  std::vector<double> radii, phi;  // Phi(r) = (inf_{B_{r/2}(x_r)} |u|)^{p-1} / r^{ps}
  bool diverges = false;           // last > 10 * first
  std::vector<std::string> notes;  // radii rejected because inf |u| = 0
};
GrowthReport compute_growth_phi(const Field& u, const Point& x0, const Point& eta,
                                const std::vector<double>& radii, double p, double s);

// interior-ball barrier: psi = (alpha/2) d(./r) + (C alpha/2) eta(./r) with a
// polynomial bump eta supported in the inner ball.  The coefficient search
// follows the halving/doubling recipe; the verdict checks the operator sign
// on the annulus plus the three side conditions.  An inconclusive sign test
// is retried once with the refined quadrature.
HopfReport verify_barrier(const YoungFunction& yf, double s, double rho, double r,
                          double u_inf, const QuadratureScheme& sch, int dim = 1);

// zero-order term experiment: requires c <= 0 nodewise (else ConfigError with
// guidance), solves the torsion problem, and runs the ray quotients; the
// verdict does not depend on |c|
HopfReport potential_experiment(const YoungFunction& yf, double s, const Field& c_field,
                                double beta, const Domain& ball, double h);

}  // namespace folap
