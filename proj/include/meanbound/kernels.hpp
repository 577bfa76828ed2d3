#pragma once

// Data-parallel kernels behind the mean evaluations: reductions and
// elementwise transcendental maps. A scalar reference implementation is
// always available; an AVX2 variant is selected at runtime on x86-64.
// Set MEANBOUND_KERNEL=scalar|avx2 to force a lane.

#include <cstddef>

namespace meanbound::kernels {

struct Ops {
  double (*reduce_min)(const double* x, std::size_t n);
  double (*reduce_max)(const double* x, std::size_t n);
  double (*reduce_sum)(const double* x, std::size_t n);
  // sum of (x[i] - mean)^2
  double (*sum_sq_dev)(const double* x, std::size_t n, double mean);
  // sum of exp(scale * (x[i] - shift)); arguments beyond +-708 saturate
  double (*sum_exp_scaled)(const double* x, std::size_t n, double scale,
                           double shift);
  // sum of expm1(scale * (x[i] - shift)); requires |scale * (x[i] - shift)| <= 1
  double (*sum_expm1_scaled)(const double* x, std::size_t n, double scale,
                             double shift);
  void (*log_to)(double* dst, const double* src, std::size_t n);
  void (*exp_to)(double* dst, const double* src, std::size_t n);
  const char* name;
};

const Ops& scalar();

// nullptr when the binary or the CPU lacks AVX2 support
const Ops* avx2_or_null();

// Lane picked at startup (AVX2 when available unless overridden by the
// MEANBOUND_KERNEL environment variable).
const Ops& active();

}  // namespace meanbound::kernels
