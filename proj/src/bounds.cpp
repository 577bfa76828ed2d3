#include "meanbound/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "meanbound/kernels.hpp"

namespace meanbound::bounds {
namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

// (sinh(x) - x)/x = sum_{k>=1} x^{2k}/(2k+1)!, factorially convergent;
// relative error < 1e-16 for |x| < 0.9
double sinch_minus_one(double x) {
  const double y = x * x;
  double term = y / 6.0;
  double s = term;
  for (int k = 2; k <= 8; ++k) {
    term *= y / static_cast<double>(2 * k * (2 * k + 1));
    s += term;
  }
  return s;
}

// x*cosh(x) - sinh(x) = sum_{k>=1} 2k * x^{2k+1}/(2k+1)!
double xcosh_minus_sinh(double x) {
  const double y = x * x;
  double term = x * y / 6.0;  // k = 1 base: x^3/3!
  double s = 2.0 * term;
  for (int k = 2; k <= 8; ++k) {
    term *= y / static_cast<double>(2 * k * (2 * k + 1));
    s += 2.0 * k * term;
  }
  return s;
}

// third derivative of log_sinch; only ~1e-6 relative accuracy is needed
// (it feeds a correction term already of size h^2/24)
double d3_log_sinch(double x) {
  const double ax = std::abs(x);
  if (ax < 0.9) {
    const double y = x * x;
    return x * (-2.0 / 15.0 +
                y * (0.042328042328042328 +
                     y * (-8.8888888888888889e-3 +
                          y * (1.5392015392015392e-3 - y * 2.3808447088870369e-4))));
  }
  const double c = 1.0 / std::tanh(x);
  const double s = std::sinh(x);
  return 2.0 * c / (s * s) - 2.0 / (x * x * x);
}

// (log_sinch(a) - log_sinch(b))/(a - b) with a midpoint-derivative form when
// a - b is small relative to the arguments (removable-singularity handling)
double log_sinch_diff_quot(double a, double b) {
  const double h = a - b;
  if (h == 0.0) return d_log_sinch(a);
  const double scale = 1.0 + std::max(std::abs(a), std::abs(b));
  if (std::abs(h) < 1e-3 * scale) {
    const double m = 0.5 * (a + b);
    return d_log_sinch(m) + (h * h / 24.0) * d3_log_sinch(m);
  }
  return (log_sinch(a) - log_sinch(b)) / h;
}

// ln|expm1(y)| for y != 0, overflow-free
double log_abs_expm1(double y) {
  if (y < 0.0) return std::log(-std::expm1(y));
  if (y > 36.0) return y + std::log1p(-std::exp(-y));
  return std::log(std::expm1(y));
}

}  // namespace

double sinch(double x) {
  require(!std::isnan(x), "sinch: NaN argument");
  if (std::abs(x) < 0.9) return 1.0 + sinch_minus_one(x);
  return std::sinh(x) / x;
}

double log_sinch(double x) {
  require(!std::isnan(x), "log_sinch: NaN argument");
  const double ax = std::abs(x);
  if (ax < 0.9) return std::log1p(sinch_minus_one(x));
  if (ax <= 20.0) return std::log(std::sinh(ax) / ax);
  return ax + std::log1p(-std::exp(-2.0 * ax)) - std::log(2.0 * ax);
}

double d_log_sinch(double x) {
  require(!std::isnan(x), "d_log_sinch: NaN argument");
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  if (ax < 0.9) return xcosh_minus_sinh(x) / (x * std::sinh(x));
  return 1.0 / std::tanh(x) - 1.0 / x;
}

double log_sinch_defect(double x) { return log_sinch(x) - x * x / 6.0; }

double defect_combination(double p, double q) {
  require(p != 0.0 && q != 0.0, "defect_combination: p and q must be nonzero");
  require(!std::isnan(p) && !std::isnan(q), "defect_combination: NaN argument");
  return log_sinch_defect(q) / p - log_sinch_defect(p) / q +
         (1.0 / q - 1.0 / p) * log_sinch_defect(p - q);
}

double kantorovich_bound(double gamma) {
  require(!std::isnan(gamma) && gamma >= 1.0, "kantorovich_bound: gamma must be >= 1");
  return (gamma + 1.0) * (gamma + 1.0) / (4.0 * gamma);
}

double log_cargo_shisha_raw(double p, double q, double gamma) {
  require(!std::isnan(p) && !std::isnan(q) && !std::isnan(gamma),
          "cargo_shisha_raw: NaN argument");
  require(p != 0.0 && q != 0.0, "cargo_shisha_raw: pq must be nonzero");
  require(p != q, "cargo_shisha_raw: p must differ from q");
  require(gamma > 1.0 && std::isfinite(gamma), "cargo_shisha_raw: gamma must exceed 1");

  const double L = std::log(gamma);
  const double d = std::abs(p - q);
  const double e_p = log_abs_expm1(p * L);
  const double e_q = log_abs_expm1(q * L);
  const double delta = e_q - e_p;  // ln of |(gamma^q - 1)/(gamma^p - 1)|

  // ln|gamma^p - gamma^q| - ln|gamma^p - 1| = ln|1 - r| with
  // r = (gamma^q - 1)/(gamma^p - 1); picking the grouping by the size and
  // sign of r keeps the result accurate even when the plain three-term sum
  // would cancel catastrophically
  double r_p;
  const bool same_sign = (p > 0.0) == (q > 0.0);
  if (same_sign && std::abs(delta) < 0.7) {
    // r near 1: e^a - e^b factorization, all terms benign
    r_p = std::min(p, q) * L + log_abs_expm1(d * L) - e_p;
  } else if (!same_sign) {
    r_p = std::max(delta, 0.0) + std::log1p(std::exp(-std::abs(delta)));  // r < 0
  } else if (delta < 0.0) {
    r_p = std::log1p(-std::exp(delta));
  } else {
    r_p = delta + std::log1p(-std::exp(-delta));
  }
  const double r_q = r_p - delta;  // same quantity relative to gamma^q - 1

  const double log_a = std::log(std::abs(q)) - std::log(d) + r_q;
  const double log_b = std::log(std::abs(p)) - std::log(d) + r_p;
  return log_a / p - log_b / q;
}

double cargo_shisha_raw(double p, double q, double gamma) {
  return std::exp(log_cargo_shisha_raw(p, q, gamma));
}

double log_cargo_shisha(const BoundInputs& b) {
  require(!std::isnan(b.p) && !std::isnan(b.q) && !std::isnan(b.gamma),
          "cargo_shisha: NaN argument");
  require(b.q <= b.p, "cargo_shisha: requires q <= p");
  require(b.gamma >= 1.0 && std::isfinite(b.gamma), "cargo_shisha: gamma must be >= 1");
  if (b.gamma == 1.0 || b.p == b.q) return 0.0;

  // 2 ln K / ln gamma = S(p0)/q0 - S(q0)/p0 + (1/p0 - 1/q0) S(d0), regrouped
  // into two difference quotients (S even, p0 - d0 = q0, d0 - (-q0) = p0)
  const double L = std::log(b.gamma);
  const double p0 = 0.5 * b.p * L;
  const double q0 = 0.5 * b.q * L;
  const double d0 = p0 - q0;
  const double bracket = log_sinch_diff_quot(p0, d0) + log_sinch_diff_quot(d0, -q0);
  return 0.5 * L * bracket;
}

double cargo_shisha(const BoundInputs& b) { return std::exp(log_cargo_shisha(b)); }

double log_new_bound(const BoundInputs& b) {
  require(!std::isnan(b.p) && !std::isnan(b.q) && !std::isnan(b.gamma),
          "new_bound: NaN argument");
  require(b.q <= b.p, "new_bound: requires q <= p");
  require(b.gamma >= 1.0 && std::isfinite(b.gamma), "new_bound: gamma must be >= 1");
  const double L = std::log(b.gamma);
  return (b.p - b.q) / 8.0 * L * L;
}

double new_bound(const BoundInputs& b) { return std::exp(log_new_bound(b)); }

double exp_mean_diff_bound(double p, double q, const RealVector& v) {
  require(!std::isnan(p) && !std::isnan(q), "exp_mean_diff_bound: NaN argument");
  require(q <= p, "exp_mean_diff_bound: requires q <= p");
  const auto& k = kernels::active();
  const double mn = k.reduce_min(v.entries().data(), v.size());
  const double mx = k.reduce_max(v.entries().data(), v.size());
  return (p - q) / 8.0 * (mx - mn) * (mx - mn);
}

double cubic_identity_check(double p0, double q0) {
  require(p0 != 0.0 && q0 != 0.0, "cubic_identity_check: p0 q0 must be nonzero");
  const double d = q0 - p0;
  return (p0 * p0 * p0 - q0 * q0 * q0 + d * d * d) / (6.0 * p0 * q0) + 0.5 * d;
}

}  // namespace meanbound::bounds
