#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "folap/errors.hpp"

namespace folap {

// growth window of a Young function A with density a = A'.
// p_fn/q_fn: inf/sup of t a(t)/A(t);  p_dd/q_dd: inf/sup of t a''(t)/a'(t) + 2
// (a'' by central differences).  The widest window is what every two-sided
// power bound in this library uses.
struct GrowthIndices {
  double p_fn = 0.0, q_fn = 0.0;
  double p_dd = 0.0, q_dd = 0.0;
  double p_wide() const { return p_fn < p_dd ? p_fn : p_dd; }
  double q_wide() const { return q_fn > q_dd ? q_fn : q_dd; }
  // the nonlocal operator of order s needs p_fn > max(2, 1/(1-s))
  bool admissible_for(double s) const;
};

// one term of the density written as coef * t^exp for t > 0 (odd elsewhere);
// empty list means "not a finite power sum" and quadrature is used instead.
struct PowerTerm {
  double coef = 0.0;
  double exp = 0.0;
};

// convex Young function A(t) = \int_0^t a, extended evenly (A(-t) = A(t));
// the density a is extended oddly, bit-exactly: a(-t) == -a(t).
// Families: power t^p, coefficient mixtures of two powers, and t^p log(1+t)
// normalized so A(1) = 1.  scaled(R,s) rescales the argument of the density:
// a_R(t) = a(t / R^s), A_R(t) = R^s A(t / R^s).
class YoungFunction {
 public:
  enum class Family { Power, SumOfPowers, PowerLog };

  static YoungFunction power(double p);
  // raw coefficients: A(t) = cp t^p + cq t^q for t > 0
  static YoungFunction sum_of_powers(double cp, double p, double cq, double q);
  // same family divided by cp + cq, so A(1) = 1 and the index sandwich holds
  static YoungFunction sum_of_powers_normalized(double cp, double p, double cq, double q);
  // A(t) = t^p log(1+t)/log 2
  static YoungFunction power_log(double p);

  double A(double t) const;
  double a(double t) const;
  double a_prime(double t) const;  // returns the limit value at t = 0

  YoungFunction scaled(double R, double s) const;
  double scale() const { return sigma_; }

  const GrowthIndices& indices() const { return idx_; }
  Family family() const { return family_; }
  const std::string& name() const { return name_; }
  std::vector<PowerTerm> power_terms() const;

 private:
  YoungFunction() = default;
  void finalize(std::string base_name);
  Family family_ = Family::Power;
  double p_ = 2.0, q_ = 2.0, cp_ = 1.0, cq_ = 0.0, norm_ = 1.0;
  double sigma_ = 1.0;
  GrowthIndices idx_;
  std::string name_;
};

enum class EvalWhich { A, a, a_prime };
double eval(const YoungFunction& yf, EvalWhich which, double t);

// geometric sampling of both index ratios; throws NumericError when the
// density fails to be strictly increasing on the grid
GrowthIndices estimate_indices(const YoungFunction& yf, double t_min = 1e-4,
                               double t_max = 1e4, int n_samples = 512);

// complementary function at s >= 0 by monotone bisection on a(t) = s
double complementary(const YoungFunction& yf, double s);

struct YoungInequality {
  double lhs = 0.0, rhs = 0.0;
  bool holds = false;
  bool equality = false;  // s = a(t) up to tolerance
};
YoungInequality check_young_inequality(const YoungFunction& yf, double s, double t);

struct Delta2 {
  double C = 0.0;  // sup of A(2t)/A(t) over the sample grid
  bool holds = false;
};
Delta2 check_delta2(const YoungFunction& yf, const std::vector<double>& t_grid = {});

// two-sided power bounds with the widest index window at a single t > 0
struct Sandwich {
  bool ok_A = false, ok_a = false, ok_a_prime = false;
  double worst_margin = 0.0;  // most negative relative slack over all six sides
};
Sandwich sandwich_check(const YoungFunction& yf, double t);

struct IncrementChecks {
  // inf over ordered pairs (t1 <= t2) of (a(t2)-a(t1)) / a(t2-t1); degenerate
  // pairs are skipped (0/0 counts as +inf)
  double inf_ratio = 0.0;
  // min over pairs (r,t) of RHS-LHS in
  //   |a(r+t) - a(t)| <= q(q-1) max{(|r|+|t|)^{p-2}, (|r|+|t|)^{q-2}} |r|
  double shift_margin = 0.0;
};
IncrementChecks check_increment_lemmas(const YoungFunction& yf,
                                       const std::vector<std::pair<double, double>>& pairs);

}  // namespace folap
