#pragma once

// Extremal analysis of the power-mean ratio over vectors of bounded spread:
// weighted two-point configurations, grid + golden-section maximization of
// the ratio in the mass fraction, and the small-t probe that shows the
// constant (p-q)/8 cannot be improved.

#include <optional>

#include "meanbound/bounds.hpp"

namespace meanbound::extremal {

// Weighted two-point configuration: mass lambda on gamma, 1 - lambda on 1.
// With lambda = k/n it realizes the n-vector with k entries gamma.
struct TwoPointConfig {
  double gamma;
  double lambda;
  std::optional<int> n;
};

struct SupResult {
  double value;
  double argmax_lambda;
};

struct SharpnessProbeResult {
  double t;
  double normalized_ratio;  // approaches 1 from below as t -> 0+
};

// ln(cosh(x)) without overflow
double log_cosh(double x);

// M_p/M_q of the weighted two-point configuration; requires q < p
double two_point_ratio(double p, double q, const TwoPointConfig& c);

// max over lambda in (0,1) of two_point_ratio: 1024-point grid scan plus
// golden-section refinement of the bracketing interval to |dlambda| < 1e-10
SupResult sup_ratio(double p, double q, double gamma);

// normalized_ratio = 2 (ln cosh(tp)/p - ln cosh(tq)/q) / (t^2 (p-q)),
// the ratio of the v = (e^t, e^{-t}) value to its quadratic envelope
SharpnessProbeResult sharpness_probe(double p, double q, double t);

// sup estimate, Cargo-Shisha, new bound and their slack in one record
bounds::BoundReport gap_report(double p, double q, double gamma);

}  // namespace meanbound::extremal
