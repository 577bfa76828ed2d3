#include "meanbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "meanbound/bounds.hpp"
#include "meanbound/extremal.hpp"
#include "meanbound/format.hpp"
#include "meanbound/means.hpp"

namespace meanbound::verify {
namespace {

// SplitMix64; every sample owns an independent stream derived from
// (seed, index) so evaluation order never matters
struct Rng {
  std::uint64_t state;

  static Rng stream(std::uint64_t seed, long index) {
    Rng r{seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1)};
    r.next();
    return r;
  }

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

enum class Property {
  main_theorem,
  cargo_shisha_dominates_ratio,
  new_bound_dominates_cargo_shisha,
  step_function_subadditivity,
  defect_decreasing,
  defect_combination_sign,
  conjugacy,
  exp_mean_difference_bound,
  ratio_monotonicity,
  cubic_identity,
  sinh_cosh_comparison,
};

const std::vector<std::string> kNames = {
    "main_theorem",
    "cargo_shisha_dominates_ratio",
    "new_bound_dominates_cargo_shisha",
    "step_function_subadditivity",
    "defect_decreasing",
    "defect_combination_sign",
    "conjugacy",
    "exp_mean_difference_bound",
    "ratio_monotonicity",
    "cubic_identity",
    "sinh_cosh_comparison",
};

Property parse_property(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<Property>(i);
  throw std::invalid_argument("unknown property: " + std::string(name));
}

// q <= p, drawn from the config ranges; 1% of samples pin p or q to exactly
// zero to exercise the continuity-extension branches
void sample_exponent_pair(Rng& rng, const CampaignConfig& cfg, double& p, double& q) {
  p = rng.uniform(cfg.p_min, cfg.p_max);
  q = rng.uniform(cfg.q_min, cfg.q_max);
  if (q > p) std::swap(p, q);
  const double u = rng.uniform();
  if (u < 0.005) {
    q = 0.0;
    p = std::abs(p);
  } else if (u < 0.01) {
    p = 0.0;
    q = -std::abs(q);
  }
}

// entries log-uniform in [1e-3, 1e3] with log-spread at most ln(gamma_max)
std::vector<double> sample_entries(Rng& rng, const CampaignConfig& cfg, int min_n,
                                   double min_log_spread) {
  const int n = rng.uniform_int(std::max(min_n, 1), cfg.n_max);
  const double lo_bound = std::log(1e-3);
  const double hi_bound = std::log(1e3);
  double base = rng.uniform(lo_bound, hi_bound - min_log_spread);
  const double max_w = std::min(std::log(cfg.gamma_max), hi_bound - base);
  const double w = rng.uniform(min_log_spread, std::max(max_w, min_log_spread));
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = std::exp(base + rng.uniform(0.0, w));
  if (min_log_spread > 0.0 && n >= 2) {
    v[0] = std::exp(base);
    v[1] = std::exp(base + w);
  }
  return v;
}

std::string join_entries(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

double log_ratio(double p, double q, const PositiveVector& v) {
  return log_power_mean(ExtendedExponent::finite(p), v) -
         log_power_mean(ExtendedExponent::finite(q), v);
}

double eval_ratio_bound(Property prop, Rng& rng, const CampaignConfig& cfg,
                        std::string* witness) {
  double p, q;
  sample_exponent_pair(rng, cfg, p, q);
  const auto entries = sample_entries(rng, cfg, 1, 0.0);
  const PositiveVector v(entries);
  const double gamma = spread_gamma(v);
  const bounds::BoundInputs b{p, q, gamma};
  const double margin = prop == Property::main_theorem
                            ? bounds::log_new_bound(b) - log_ratio(p, q, v)
                            : bounds::log_cargo_shisha(b) - log_ratio(p, q, v);
  if (witness)
    *witness = "p=" + format_double(p) + ";q=" + format_double(q) +
               ";v=" + join_entries(entries);
  return margin;
}

double eval_bound_chain(Rng& rng, const CampaignConfig& cfg, std::string* witness) {
  double p, q;
  sample_exponent_pair(rng, cfg, p, q);
  const double gamma = std::exp(rng.uniform(0.0, std::log(cfg.gamma_max)));
  const bounds::BoundInputs b{p, q, gamma};
  const double margin = bounds::log_new_bound(b) - bounds::log_cargo_shisha(b);
  if (witness)
    *witness = "p=" + format_double(p) + ";q=" + format_double(q) +
               ";gamma=" + format_double(gamma);
  return margin;
}

double eval_step_subadditivity(Rng& rng, std::string* witness) {
  const int k = rng.uniform_int(1, 7);
  std::vector<double> breaks(static_cast<std::size_t>(k));
  for (auto& b : breaks) b = rng.uniform(0.0, 100.0);
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> vals(static_cast<std::size_t>(k) + 1);
  vals[0] = rng.uniform(-2.0, 2.0);
  for (std::size_t j = 1; j < vals.size(); ++j) vals[j] = vals[j - 1] - rng.uniform(0.0, 1.0);
  const auto step = [&](double t) {
    std::size_t j = 0;
    while (j < breaks.size() && t >= breaks[j]) ++j;
    return vals[j];
  };
  const double x = rng.uniform(0.0, 50.0);
  const double y = rng.uniform(0.0, 50.0);
  const double margin = x * step(x) + y * step(y) - (x + y) * step(x + y);
  if (witness)
    *witness = "x=" + format_double(x) + ";y=" + format_double(y) +
               ";breaks=" + join_entries(breaks) + ";vals=" + join_entries(vals);
  return margin;
}

double eval_defect_decreasing(Rng& rng, std::string* witness) {
  double x = rng.uniform(0.0, 50.0);
  double y = rng.uniform(0.0, 50.0);
  if (y < x) std::swap(x, y);
  const double margin = bounds::log_sinch_defect(x) - bounds::log_sinch_defect(y);
  if (witness) *witness = "x=" + format_double(x) + ";y=" + format_double(y);
  return margin;
}

double eval_defect_combination(Rng& rng, std::string* witness) {
  double p = 0.0, q = 0.0;
  switch (rng.next() % 3) {
    case 0:  // 0 < q < p
      q = rng.uniform(0.01, 10.0);
      p = q + rng.uniform(0.01, 10.0);
      break;
    case 1:  // q < 0 < p
      q = -rng.uniform(0.01, 10.0);
      p = rng.uniform(0.01, 10.0);
      break;
    default:  // q < p < 0
      p = -rng.uniform(0.01, 10.0);
      q = p - rng.uniform(0.01, 10.0);
  }
  const double margin = bounds::defect_combination(p, q);
  if (witness) *witness = "p=" + format_double(p) + ";q=" + format_double(q);
  return margin;
}

double eval_conjugacy(Rng& rng, const CampaignConfig& cfg, std::string* witness) {
  const double p = rng.uniform(cfg.p_min, cfg.p_max);
  const int n = rng.uniform_int(1, cfg.n_max);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = rng.uniform(-5.0, 5.0);
  std::vector<double> ew(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) ew[i] = std::exp(w[i]);
  const double lhs = exponential_mean(ExtendedExponent::finite(p), RealVector(w));
  const double rhs = log_power_mean(ExtendedExponent::finite(p), PositiveVector(ew));
  if (witness) *witness = "p=" + format_double(p) + ";w=" + join_entries(w);
  return -std::abs(lhs - rhs);
}

double eval_exp_mean_difference(Rng& rng, const CampaignConfig& cfg, std::string* witness) {
  double p, q;
  sample_exponent_pair(rng, cfg, p, q);
  const int n = rng.uniform_int(1, cfg.n_max);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = rng.uniform(-5.0, 5.0);
  const RealVector v(w);
  const double diff = exponential_mean(ExtendedExponent::finite(p), v) -
                      exponential_mean(ExtendedExponent::finite(q), v);
  const double margin = bounds::exp_mean_diff_bound(p, q, v) - diff;
  if (witness)
    *witness = "p=" + format_double(p) + ";q=" + format_double(q) +
               ";v=" + join_entries(w);
  return margin;
}

double eval_ratio_monotonicity(Rng& rng, const CampaignConfig& cfg, std::string* witness) {
  const auto entries = sample_entries(rng, cfg, 2, std::log(1.1));
  const PositiveVector v(entries);
  double p1 = rng.uniform(cfg.p_min, cfg.p_max);
  double p2 = rng.uniform(cfg.p_min, cfg.p_max);
  if (p2 < p1) std::swap(p1, p2);
  if (p2 - p1 < 0.1) p2 = p1 + 0.1;
  double q1 = rng.uniform(cfg.q_min, cfg.q_max);
  double q2 = rng.uniform(cfg.q_min, cfg.q_max);
  if (q2 < q1) std::swap(q1, q2);
  if (q2 - q1 < 0.1) q2 = q1 + 0.1;
  const double q = rng.uniform(cfg.q_min, cfg.q_max);
  const double p = rng.uniform(cfg.p_min, cfg.p_max);
  const double inc_p = log_ratio(p2, q, v) - log_ratio(p1, q, v);
  const double dec_q = log_ratio(p, q1, v) - log_ratio(p, q2, v);
  if (witness)
    *witness = "p1=" + format_double(p1) + ";p2=" + format_double(p2) +
               ";q1=" + format_double(q1) + ";q2=" + format_double(q2) +
               ";p=" + format_double(p) + ";q=" + format_double(q) +
               ";v=" + join_entries(entries);
  return std::min(inc_p, dec_q);
}

double eval_cubic_identity(Rng& rng, std::string* witness) {
  const auto draw = [&] {
    const double mag = rng.uniform(0.01, 10.0);
    return rng.uniform() < 0.5 ? mag : -mag;
  };
  const double p0 = draw();
  const double q0 = draw();
  const double scale = std::max({1.0, std::abs(p0), std::abs(q0)});
  const double margin =
      -std::abs(bounds::cubic_identity_check(p0, q0)) / (scale * scale * scale);
  if (witness) *witness = "p0=" + format_double(p0) + ";q0=" + format_double(q0);
  return margin;
}

double eval_sinh_cosh_comparison(Rng& rng, std::string* witness) {
  const double x = 30.0 * (1.0 - rng.uniform());  // (0, 30]
  const double lhs = 3.0 * x * std::cosh(x);
  const double rhs = (3.0 + x * x) * std::sinh(x);
  if (witness) *witness = "x=" + format_double(x);
  return (rhs - lhs) / rhs;
}

double eval_margin(Property prop, const CampaignConfig& cfg, long index,
                   std::string* witness) {
  Rng rng = Rng::stream(cfg.seed, index);
  switch (prop) {
    case Property::main_theorem:
    case Property::cargo_shisha_dominates_ratio:
      return eval_ratio_bound(prop, rng, cfg, witness);
    case Property::new_bound_dominates_cargo_shisha:
      return eval_bound_chain(rng, cfg, witness);
    case Property::step_function_subadditivity:
      return eval_step_subadditivity(rng, witness);
    case Property::defect_decreasing:
      return eval_defect_decreasing(rng, witness);
    case Property::defect_combination_sign:
      return eval_defect_combination(rng, witness);
    case Property::conjugacy:
      return eval_conjugacy(rng, cfg, witness);
    case Property::exp_mean_difference_bound:
      return eval_exp_mean_difference(rng, cfg, witness);
    case Property::ratio_monotonicity:
      return eval_ratio_monotonicity(rng, cfg, witness);
    case Property::cubic_identity:
      return eval_cubic_identity(rng, witness);
    case Property::sinh_cosh_comparison:
      return eval_sinh_cosh_comparison(rng, witness);
  }
  throw std::logic_error("unreachable");
}

void validate(const CampaignConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(cfg.gamma_max > 1.0)) throw std::invalid_argument("gamma_max must exceed 1");
  if (cfg.n_max < 2) throw std::invalid_argument("n_max must be >= 2");
}

}  // namespace

const std::vector<std::string>& property_names() { return kNames; }

CampaignReport run_property(std::string_view name, const CampaignConfig& cfg) {
  validate(cfg);
  const Property prop = parse_property(name);
  CampaignReport r;
  r.property_name = std::string(name);
  r.samples_run = cfg.samples;
  double worst = std::numeric_limits<double>::infinity();
  long worst_index = 0;
  for (long i = 0; i < cfg.samples; ++i) {
    const double m = eval_margin(prop, cfg, i, nullptr);
    if (m < -cfg.tolerance) ++r.violations;
    if (m < worst) {
      worst = m;
      worst_index = i;
    }
  }
  r.worst_margin = worst;
  r.worst_index = worst_index;
  std::string witness = "index=" + std::to_string(worst_index);
  std::string detail;
  eval_margin(prop, cfg, worst_index, &detail);
  r.worst_witness = witness + ";" + detail;
  return r;
}

std::vector<CampaignReport> run_all(const CampaignConfig& cfg) {
  std::vector<CampaignReport> out;
  out.reserve(kNames.size());
  for (const auto& name : kNames) out.push_back(run_property(name, cfg));
  return out;
}

double replay_margin(std::string_view name, const CampaignConfig& cfg, long index) {
  validate(cfg);
  return eval_margin(parse_property(name), cfg, index, nullptr);
}

}  // namespace meanbound::verify
