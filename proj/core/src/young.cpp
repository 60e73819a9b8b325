#include "folap/young.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace folap {

namespace {

const double kInvLog2 = 1.0 / std::log(2.0);

// pow with an exact square-and-multiply path for integer exponents; the
// determinism tests lean on the fact that powers of two in the base then
// scale the result without any rounding
double powx(double base, double e) {
  double r = std::nearbyint(e);
  if (r == e && std::fabs(r) <= 64.0) {
    long n = static_cast<long>(r);
    if (n == 0) return 1.0;
    bool inv = n < 0;
    unsigned long m = inv ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    double acc = 1.0, b = base;
    while (m) {
      if (m & 1u) acc *= b;
      b *= b;
      m >>= 1;
    }
    return inv ? 1.0 / acc : acc;
  }
  return std::pow(base, e);
}

}  // namespace

bool GrowthIndices::admissible_for(double s) const {
  if (!(s > 0.0 && s < 1.0)) return false;
  return p_fn > std::max(2.0, 1.0 / (1.0 - s));
}

YoungFunction YoungFunction::power(double p) {
  if (!(p > 1.0)) throw DomainError("power family needs p > 1");
  YoungFunction y;
  y.family_ = Family::Power;
  y.p_ = p;
  y.q_ = p;
  y.cp_ = 1.0;
  y.cq_ = 0.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "power(%g)", p);
  y.finalize(buf);
  return y;
}

YoungFunction YoungFunction::sum_of_powers(double cp, double p, double cq, double q) {
  if (!(p > 1.0) || !(q > 1.0)) throw DomainError("sum of powers needs exponents > 1");
  if (cp < 0.0 || cq < 0.0 || cp + cq <= 0.0)
    throw DomainError("sum of powers needs nonnegative coefficients, not both zero");
  YoungFunction y;
  y.family_ = Family::SumOfPowers;
  y.cp_ = cp;
  y.p_ = p;
  y.cq_ = cq;
  y.q_ = q;
  char buf[80];
  std::snprintf(buf, sizeof buf, "sum_of_powers(%g,%g,%g,%g)", cp, p, cq, q);
  y.finalize(buf);
  return y;
}

YoungFunction YoungFunction::sum_of_powers_normalized(double cp, double p, double cq,
                                                      double q) {
  YoungFunction y = sum_of_powers(cp, p, cq, q);
  y.norm_ = 1.0 / (cp + cq);
  char buf[80];
  std::snprintf(buf, sizeof buf, "sum_of_powers_normalized(%g,%g,%g,%g)", cp, p, cq, q);
  y.finalize(buf);
  return y;
}

YoungFunction YoungFunction::power_log(double p) {
  if (!(p > 1.0)) throw DomainError("power-log family needs p > 1");
  YoungFunction y;
  y.family_ = Family::PowerLog;
  y.p_ = p;
  y.q_ = p;
  char buf[48];
  std::snprintf(buf, sizeof buf, "power_log(%g)", p);
  y.finalize(buf);
  return y;
}

void YoungFunction::finalize(std::string base_name) {
  name_ = std::move(base_name);
  idx_ = estimate_indices(*this);
}

double YoungFunction::A(double t) const {
  double tau = std::fabs(t) / sigma_;
  double v;
  if (family_ == Family::PowerLog)
    v = powx(tau, p_) * std::log1p(tau) * kInvLog2;
  else
    v = cp_ * powx(tau, p_) + cq_ * powx(tau, q_);
  return sigma_ * norm_ * v;
}

double YoungFunction::a(double t) const {
  double tau = std::fabs(t) / sigma_;
  double v;
  if (family_ == Family::PowerLog) {
    v = (p_ * powx(tau, p_ - 1.0) * std::log1p(tau) + powx(tau, p_) / (1.0 + tau)) *
        kInvLog2;
  } else {
    v = cp_ * p_ * powx(tau, p_ - 1.0) + cq_ * q_ * powx(tau, q_ - 1.0);
  }
  v *= norm_;
  return t < 0.0 ? -v : v;  // exact negation keeps oddness bitwise
}

double YoungFunction::a_prime(double t) const {
  double tau = std::fabs(t) / sigma_;
  double v;
  if (family_ == Family::PowerLog) {
    double om = 1.0 + tau;
    v = (p_ * (p_ - 1.0) * powx(tau, p_ - 2.0) * std::log1p(tau) +
         2.0 * p_ * powx(tau, p_ - 1.0) / om - powx(tau, p_) / (om * om)) *
        kInvLog2;
  } else {
    v = cp_ * p_ * (p_ - 1.0) * powx(tau, p_ - 2.0) +
        cq_ * q_ * (q_ - 1.0) * powx(tau, q_ - 2.0);
  }
  return norm_ * v / sigma_;
}

YoungFunction YoungFunction::scaled(double R, double s) const {
  if (!(R > 0.0)) throw DomainError("scaling radius must be positive");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0,1)");
  YoungFunction c = *this;
  c.sigma_ = sigma_ * std::pow(R, s);
  std::string base = name_.substr(0, name_.find('['));
  char buf[48];
  std::snprintf(buf, sizeof buf, "[sigma=%g]", c.sigma_);
  c.name_ = base + buf;
  // the index ratios are invariant under argument scaling
  return c;
}

std::vector<PowerTerm> YoungFunction::power_terms() const {
  if (family_ == Family::PowerLog) return {};
  std::vector<PowerTerm> out;
  if (cp_ > 0.0) out.push_back({norm_ * cp_ * p_ * powx(sigma_, -(p_ - 1.0)), p_ - 1.0});
  if (cq_ > 0.0) out.push_back({norm_ * cq_ * q_ * powx(sigma_, -(q_ - 1.0)), q_ - 1.0});
  return out;
}

double eval(const YoungFunction& yf, EvalWhich which, double t) {
  switch (which) {
    case EvalWhich::A:
      return yf.A(t);
    case EvalWhich::a:
      return yf.a(t);
    case EvalWhich::a_prime:
      return yf.a_prime(t);
  }
  return 0.0;
}

GrowthIndices estimate_indices(const YoungFunction& yf, double t_min, double t_max,
                               int n_samples) {
  if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("bad index sampling range");
  if (n_samples < 2) throw DomainError("index sampling needs at least two points");
  GrowthIndices gi;
  gi.p_fn = gi.p_dd = std::numeric_limits<double>::infinity();
  gi.q_fn = gi.q_dd = 0.0;
  double ratio = std::pow(t_max / t_min, 1.0 / (n_samples - 1));
  double prev_a = 0.0;
  double t = t_min;
  for (int i = 0; i < n_samples; ++i, t *= ratio) {
    double A = yf.A(t), a = yf.a(t), ap = yf.a_prime(t);
    if (!(A > 0.0) || !(a > prev_a))
      throw NumericError("index estimate: density is not strictly increasing");
    if (!(ap > 0.0))
      throw NumericError("index estimate: second derivative proxy is not positive");
    prev_a = a;
    double r1 = t * a / A;
    double dt = 1e-5 * t;
    double app = (yf.a_prime(t + dt) - yf.a_prime(t - dt)) / (2.0 * dt);
    double r2 = t * app / ap + 2.0;
    gi.p_fn = std::min(gi.p_fn, r1);
    gi.q_fn = std::max(gi.q_fn, r1);
    gi.p_dd = std::min(gi.p_dd, r2);
    gi.q_dd = std::max(gi.q_dd, r2);
  }
  return gi;
}

double complementary(const YoungFunction& yf, double s) {
  if (s < 0.0) throw DomainError("complementary function argument must be >= 0");
  if (s == 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (yf.a(hi) < s) {
    hi *= 2.0;
    if (++guard > 400) throw NumericError("complementary: slope never reached");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 + 1e-10 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (yf.a(mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  double t = 0.5 * (lo + hi);
  return s * t - yf.A(t);
}

YoungInequality check_young_inequality(const YoungFunction& yf, double s, double t) {
  double as = std::fabs(s), at = std::fabs(t);
  YoungInequality r;
  r.lhs = as * at;
  r.rhs = yf.A(at) + complementary(yf, as);
  r.holds = r.lhs <= r.rhs + 1e-12 + 1e-9 * r.rhs;
  r.equality = std::fabs(as - yf.a(at)) <= 1e-9 * (1.0 + as);
  return r;
}

Delta2 check_delta2(const YoungFunction& yf, const std::vector<double>& t_grid) {
  std::vector<double> grid = t_grid;
  if (grid.empty()) {
    double t = 1e-4, ratio = std::pow(1e8, 1.0 / 511.0);
    for (int i = 0; i < 512; ++i, t *= ratio) grid.push_back(t);
  }
  Delta2 d;
  for (double t : grid) {
    if (!(t > 0.0)) throw DomainError("doubling check needs positive sample points");
    d.C = std::max(d.C, yf.A(2.0 * t) / yf.A(t));
  }
  // A(2t)/A(t) = exp(int_t^{2t} (u a/A) du/u) <= 2^q; the slack absorbs the
  // sampling error of the index estimate
  d.holds = d.C <= std::pow(2.0, yf.indices().q_fn) * (1.0 + 1e-6);
  return d;
}

namespace {

// one two-sided bound value <= mid <= upper with relative margins
double side_margins(double value, double lo_bound, double hi_bound, double* worst) {
  double scale = std::max({std::fabs(value), std::fabs(lo_bound), std::fabs(hi_bound),
                           std::numeric_limits<double>::min()});
  double m = std::min((value - lo_bound) / scale, (hi_bound - value) / scale);
  *worst = std::min(*worst, m);
  return m;
}

}  // namespace

Sandwich sandwich_check(const YoungFunction& yf, double t) {
  if (!(t > 0.0)) throw DomainError("sandwich check needs t > 0");
  const GrowthIndices& gi = yf.indices();
  // widen the sampled window a touch: the true inf/sup of the ratios can sit
  // between sample points
  double p = gi.p_wide() - 1e-3, q = gi.q_wide() + 1e-3;
  Sandwich s;
  s.worst_margin = std::numeric_limits<double>::infinity();
  double tol = 1e-9;

  auto bounds = [&](double e_lo, double e_hi, double anchor) {
    double b1 = anchor * std::pow(t, e_lo), b2 = anchor * std::pow(t, e_hi);
    return std::pair<double, double>(std::min(b1, b2), std::max(b1, b2));
  };
  auto [alo, ahi] = bounds(p, q, yf.A(1.0));
  s.ok_A = side_margins(yf.A(t), alo, ahi, &s.worst_margin) >= -tol;
  auto [blo, bhi] = bounds(p - 1.0, q - 1.0, yf.a(1.0));
  s.ok_a = side_margins(yf.a(t), blo, bhi, &s.worst_margin) >= -tol;
  auto [clo, chi] = bounds(p - 2.0, q - 2.0, yf.a_prime(1.0));
  s.ok_a_prime = side_margins(yf.a_prime(t), clo, chi, &s.worst_margin) >= -tol;
  return s;
}

IncrementChecks check_increment_lemmas(const YoungFunction& yf,
                                       const std::vector<std::pair<double, double>>& pairs) {
  IncrementChecks out;
  out.inf_ratio = std::numeric_limits<double>::infinity();
  out.shift_margin = std::numeric_limits<double>::infinity();
  const GrowthIndices& gi = yf.indices();
  double p = gi.p_wide(), q = gi.q_wide();
  for (const auto& pr : pairs) {
    // monotone-increment ratio on the ordered magnitudes
    double t1 = std::min(std::fabs(pr.first), std::fabs(pr.second));
    double t2 = std::max(std::fabs(pr.first), std::fabs(pr.second));
    double den = yf.a(t2 - t1);
    if (den > 0.0) out.inf_ratio = std::min(out.inf_ratio, (yf.a(t2) - yf.a(t1)) / den);

    // shift bound on the signed pair (r, t)
    double r = pr.first, t = pr.second;
    if (r == 0.0) continue;
    double u = std::fabs(r) + std::fabs(t);
    double lhs = std::fabs(yf.a(r + t) - yf.a(t));
    double rhs = q * (q - 1.0) * std::max(std::pow(u, p - 2.0), std::pow(u, q - 2.0)) *
                 std::fabs(r);
    out.shift_margin = std::min(out.shift_margin, rhs - lhs);
  }
  return out;
}

}  // namespace folap
