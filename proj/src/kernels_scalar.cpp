#include "meanbound/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace meanbound::kernels {
namespace {

double k_min(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double k_max(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double k_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double k_sum_sq_dev(const double* x, std::size_t n, double mean) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mean;
    s += d * d;
  }
  return s;
}

double k_sum_exp_scaled(const double* x, std::size_t n, double scale,
                        double shift) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(scale * (x[i] - shift));
  return s;
}

double k_sum_expm1_scaled(const double* x, std::size_t n, double scale,
                          double shift) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::expm1(scale * (x[i] - shift));
  return s;
}

void k_log_to(double* dst, const double* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = std::log(src[i]);
}

void k_exp_to(double* dst, const double* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = std::exp(src[i]);
}

}  // namespace

const Ops& scalar() {
  static const Ops ops{k_min,          k_max,     k_sum,
                       k_sum_sq_dev,   k_sum_exp_scaled, k_sum_expm1_scaled,
                       k_log_to,       k_exp_to,  "scalar"};
  return ops;
}

}  // namespace meanbound::kernels
