#include "meanbound/extremal.hpp"

#include <cmath>
#include <stdexcept>

namespace meanbound::extremal {
namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

// ln of the weighted r-th power mean of {gamma, 1} with masses
// {lambda, 1-lambda}; stable for any r * ln(gamma)
double log_two_point_mean(double r, double log_gamma, double lambda) {
  if (r == 0.0) return lambda * log_gamma;
  const double t = r * log_gamma;
  double lnum;  // ln(lambda e^t + 1 - lambda)
  if (t > 0.0)
    lnum = t + std::log1p((1.0 - lambda) * std::expm1(-t));
  else
    lnum = std::log1p(lambda * std::expm1(t));
  return lnum / r;
}

double golden_section_max(double (*fn)(double, const void*), const void* ctx,
                          double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = fn(x1, ctx);
  double f2 = fn(x2, ctx);
  while (b - a > 1e-10) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fn(x1, ctx);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fn(x2, ctx);
    }
  }
  return 0.5 * (a + b);
}

struct RatioCtx {
  double p, q, log_gamma;
};

double log_ratio_at(double lambda, const void* ctx) {
  const auto& c = *static_cast<const RatioCtx*>(ctx);
  return log_two_point_mean(c.p, c.log_gamma, lambda) -
         log_two_point_mean(c.q, c.log_gamma, lambda);
}

}  // namespace

double log_cosh(double x) {
  const double ax = std::abs(x);
  if (ax <= 20.0) {
    const double s = std::sinh(0.5 * ax);
    return std::log1p(2.0 * s * s);  // cosh(x) - 1 == 2 sinh^2(x/2)
  }
  return ax + std::log1p(std::exp(-2.0 * ax)) - 0.6931471805599453094;
}

double two_point_ratio(double p, double q, const TwoPointConfig& c) {
  require(!std::isnan(p) && !std::isnan(q), "two_point_ratio: NaN exponent");
  require(q < p, "two_point_ratio: requires q < p");
  require(std::isfinite(c.gamma) && c.gamma > 1.0, "two_point_ratio: gamma must exceed 1");
  require(c.lambda > 0.0 && c.lambda < 1.0, "two_point_ratio: lambda must lie in (0,1)");
  if (c.n) {
    const int n = *c.n;
    require(n >= 2, "two_point_ratio: n must be >= 2");
    const int k = static_cast<int>(std::lround(c.lambda * n));
    require(k >= 1 && k <= n - 1, "two_point_ratio: rounded mass count out of range");
  }
  const double L = std::log(c.gamma);
  return std::exp(log_two_point_mean(p, L, c.lambda) - log_two_point_mean(q, L, c.lambda));
}

SupResult sup_ratio(double p, double q, double gamma) {
  require(!std::isnan(p) && !std::isnan(q), "sup_ratio: NaN exponent");
  require(q < p, "sup_ratio: requires q < p");
  require(std::isfinite(gamma) && gamma > 1.0, "sup_ratio: gamma must exceed 1");

  const RatioCtx ctx{p, q, std::log(gamma)};
  constexpr int kGrid = 1024;
  int best = 1;
  double best_val = log_ratio_at(1.0 / (kGrid + 1), &ctx);
  for (int i = 2; i <= kGrid; ++i) {
    const double v = log_ratio_at(static_cast<double>(i) / (kGrid + 1), &ctx);
    if (v > best_val) {  // strict: lowest-lambda tie-break
      best_val = v;
      best = i;
    }
  }
  const double lo = std::max(static_cast<double>(best - 1) / (kGrid + 1), 1e-13);
  const double hi = std::min(static_cast<double>(best + 1) / (kGrid + 1), 1.0 - 1e-13);
  const double lam = golden_section_max(log_ratio_at, &ctx, lo, hi);
  const double refined = log_ratio_at(lam, &ctx);
  if (refined >= best_val) return {std::exp(refined), lam};
  return {std::exp(best_val), static_cast<double>(best) / (kGrid + 1)};
}

SharpnessProbeResult sharpness_probe(double p, double q, double t) {
  require(!std::isnan(p) && !std::isnan(q) && !std::isnan(t), "sharpness_probe: NaN argument");
  require(q < p, "sharpness_probe: requires q < p");
  require(p != 0.0 && q != 0.0, "sharpness_probe: pq must be nonzero");
  require(t > 0.0 && std::isfinite(t), "sharpness_probe: t must be positive");
  const double g = log_cosh(t * p) / p - log_cosh(t * q) / q;
  return {t, 2.0 * g / (t * t * (p - q))};
}

bounds::BoundReport gap_report(double p, double q, double gamma) {
  require(!std::isnan(p) && !std::isnan(q) && !std::isnan(gamma), "gap_report: NaN argument");
  require(q <= p, "gap_report: requires q <= p");
  require(std::isfinite(gamma) && gamma >= 1.0, "gap_report: gamma must be >= 1");

  bounds::BoundReport r;
  r.inputs = {p, q, gamma};
  if (p == q || gamma == 1.0) {
    r.sup_estimate = 1.0;
    return r;
  }
  const SupResult sup = sup_ratio(p, q, gamma);
  const double log_k = bounds::log_cargo_shisha(r.inputs);
  const double log_b = bounds::log_new_bound(r.inputs);
  r.sup_estimate = sup.value;
  r.argmax_lambda = sup.argmax_lambda;
  r.cargo_shisha = std::exp(log_k);
  r.new_bound = std::exp(log_b);
  r.slack_K_over_sup = std::expm1(log_k - std::log(sup.value));
  r.slack_B_over_K = std::expm1(log_b - log_k);
  return r;
}

}  // namespace meanbound::extremal
