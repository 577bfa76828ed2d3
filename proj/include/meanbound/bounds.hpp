#pragma once

// Special functions built on sinh(x)/x and the three bound families for the
// power-mean ratio: Kantorovich, Cargo-Shisha (raw product form and the
// log-sinch form that extends it continuously to pq = 0 and p = q), and the
// exponential bound exp((p-q)/8 * (ln gamma)^2).

#include <optional>

#include "meanbound/means.hpp"

namespace meanbound::bounds {

struct BoundInputs {
  double p;
  double q;
  double gamma;
};

struct BoundReport {
  BoundInputs inputs{};
  std::optional<double> sup_estimate;   // filled by the extremal module
  std::optional<double> argmax_lambda;
  double cargo_shisha = 1.0;
  double new_bound = 1.0;
  double slack_K_over_sup = 0.0;  // K/sup - 1
  double slack_B_over_K = 0.0;    // B/K - 1
};

// sinh(x)/x, extended by 1 at x = 0; even, >= 1
double sinch(double x);

// ln(sinh(x)/x) without overflow for large |x|; even, >= 0, zero only at 0
double log_sinch(double x);

// derivative of log_sinch: coth(x) - 1/x, odd, series-evaluated near 0
double d_log_sinch(double x);

// log_sinch(x) - x^2/6; even, zero at 0, strictly decreasing on [0, inf)
double log_sinch_defect(double x);

// defect(q)/p - defect(p)/q + (1/q - 1/p) * defect(p-q);
// nonnegative when q <= p, nonpositive when p <= q
double defect_combination(double p, double q);

// (gamma+1)^2 / (4 gamma)
double kantorovich_bound(double gamma);

// Cargo-Shisha product form; requires p != 0, q != 0, p != q, gamma > 1
double log_cargo_shisha_raw(double p, double q, double gamma);
double cargo_shisha_raw(double p, double q, double gamma);

// Cargo-Shisha via the log-sinch identity; defined for all q <= p, gamma >= 1
double log_cargo_shisha(const BoundInputs& b);
double cargo_shisha(const BoundInputs& b);

// exp(((p-q)/8) * (ln gamma)^2)
double log_new_bound(const BoundInputs& b);
double new_bound(const BoundInputs& b);

// ((p-q)/8) * (max v - min v)^2, bounds exponential_mean(p,v) - exponential_mean(q,v)
double exp_mean_diff_bound(double p, double q, const RealVector& v);

// residual of (p0^3 - q0^3 + (q0-p0)^3)/(6 p0 q0) - (p0-q0)/2; zero identically
double cubic_identity_check(double p0, double q0);

}  // namespace meanbound::bounds
