#include "meanbound/means.hpp"

#include <algorithm>
#include <cmath>

#include "meanbound/kernels.hpp"

namespace meanbound {
namespace {

// Below this value of |p| * log-spread the direct (1/p)*LSE form loses all
// precision; a second-order expansion around the geometric mean takes over
// and keeps the seam under 1e-12 relative.
constexpr double kSmallParamThreshold = 1e-6;

// Below this value of |p| * spread the shifted arguments p*(x[i] - mean) stay
// inside [-1, 1], so the mean-shifted expm1 form is safe and avoids the
// 1/p amplification of rounding error that the max-shifted form suffers.
constexpr double kExpm1Threshold = 1.0;

// log of the mean of exp(p*(x[i] - m)) for a sorted array, m = arithmetic
// mean, with |p| * (x[n-1] - x[0]) < 1
double log_mean_exp_centered(const kernels::Ops& k, const double* x, std::size_t n,
                             double p, double m) {
  const double s = k.sum_expm1_scaled(x, n, p, m);
  return std::log1p(s / static_cast<double>(n));
}

}  // namespace

ExtendedExponent ExtendedExponent::finite(double p) {
  if (!std::isfinite(p)) throw std::domain_error("exponent must be finite");
  return ExtendedExponent(Tag::finite, p);
}

ExtendedExponent ExtendedExponent::from(double p) {
  if (std::isnan(p)) throw std::domain_error("exponent must not be NaN");
  if (p == std::numeric_limits<double>::infinity()) return pos_inf();
  if (p == -std::numeric_limits<double>::infinity()) return neg_inf();
  return finite(p);
}

double ExtendedExponent::value() const {
  if (tag_ != Tag::finite) throw std::domain_error("infinite exponent has no value");
  return value_;
}

PositiveVector::PositiveVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::domain_error("vector must be nonempty");
  for (double x : entries_) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::domain_error("vector entries must be finite and positive");
  }
}

RealVector::RealVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::domain_error("vector must be nonempty");
  for (double x : entries_) {
    if (!std::isfinite(x)) throw std::domain_error("vector entries must be finite");
  }
}

double log_power_mean(ExtendedExponent p, const PositiveVector& v) {
  const auto& k = kernels::active();
  const double* x = v.entries().data();
  const std::size_t n = v.size();

  const double mn = k.reduce_min(x, n);
  const double mx = k.reduce_max(x, n);
  if (p.tag() == ExtendedExponent::Tag::neg_inf) return std::log(mn);
  if (p.tag() == ExtendedExponent::Tag::pos_inf) return std::log(mx);
  if (mn == mx) return std::log(mn);

  std::vector<double> w(n);
  k.log_to(w.data(), x, n);
  // canonical order makes every reduction independent of entry order
  std::sort(w.begin(), w.end());
  const double wmn = w.front();
  const double wmx = w.back();

  const double pp = p.value();
  const double t = std::abs(pp) * (wmx - wmn);
  if (t < kExpm1Threshold) {
    const double m = k.reduce_sum(w.data(), n) / static_cast<double>(n);
    if (t < kSmallParamThreshold) {
      const double var = k.sum_sq_dev(w.data(), n, m) / static_cast<double>(n);
      return m + 0.5 * pp * var;
    }
    return m + log_mean_exp_centered(k, w.data(), n, pp, m) / pp;
  }

  const double shift = pp > 0 ? wmx : wmn;
  const double s = k.sum_exp_scaled(w.data(), n, pp, shift);  // in [1, n]
  return shift + (std::log(s) - std::log(static_cast<double>(n))) / pp;
}

double power_mean(ExtendedExponent p, const PositiveVector& v) {
  const auto& k = kernels::active();
  const double mn = k.reduce_min(v.entries().data(), v.size());
  const double mx = k.reduce_max(v.entries().data(), v.size());
  if (mn == mx) return mn;
  if (p.tag() == ExtendedExponent::Tag::neg_inf) return mn;
  if (p.tag() == ExtendedExponent::Tag::pos_inf) return mx;
  return std::clamp(std::exp(log_power_mean(p, v)), mn, mx);
}

double exponential_mean(ExtendedExponent p, const RealVector& v) {
  const auto& k = kernels::active();
  const double* x = v.entries().data();
  const std::size_t n = v.size();

  const double mn = k.reduce_min(x, n);
  const double mx = k.reduce_max(x, n);
  if (p.tag() == ExtendedExponent::Tag::neg_inf) return mn;
  if (p.tag() == ExtendedExponent::Tag::pos_inf) return mx;
  if (mn == mx) return mn;

  std::vector<double> w(v.entries().begin(), v.entries().end());
  std::sort(w.begin(), w.end());

  const double pp = p.value();
  const double t = std::abs(pp) * (mx - mn);
  if (t < kExpm1Threshold) {
    const double m = k.reduce_sum(w.data(), n) / static_cast<double>(n);
    if (t < kSmallParamThreshold) {
      const double var = k.sum_sq_dev(w.data(), n, m) / static_cast<double>(n);
      return m + 0.5 * pp * var;
    }
    return std::clamp(m + log_mean_exp_centered(k, w.data(), n, pp, m) / pp, mn, mx);
  }

  const double shift = pp > 0 ? mx : mn;
  const double s = k.sum_exp_scaled(w.data(), n, pp, shift);
  return std::clamp(shift + (std::log(s) - std::log(static_cast<double>(n))) / pp, mn, mx);
}

double ratio(ExtendedExponent p, ExtendedExponent q, const PositiveVector& v) {
  const auto& k = kernels::active();
  const double mn = k.reduce_min(v.entries().data(), v.size());
  const double mx = k.reduce_max(v.entries().data(), v.size());
  if (mn == mx) return 1.0;
  return std::exp(log_power_mean(p, v) - log_power_mean(q, v));
}

double spread_gamma(const PositiveVector& v) {
  const auto& k = kernels::active();
  const double mn = k.reduce_min(v.entries().data(), v.size());
  const double mx = k.reduce_max(v.entries().data(), v.size());
  return mx == mn ? 1.0 : mx / mn;
}

}  // namespace meanbound
