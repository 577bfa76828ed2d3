// Command-line front end: means, bounds, gamma sweeps, extremal analysis and
// verification campaigns, with deterministic CSV / key=value / JSON-lines
// output for downstream plotting.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "meanbound/bounds.hpp"
#include "meanbound/extremal.hpp"
#include "meanbound/format.hpp"
#include "meanbound/means.hpp"
#include "meanbound/verify.hpp"

namespace {

using meanbound::format_double;

struct Field {
  std::string key;
  std::string value;
  bool quoted = false;
};

void emit_record(const std::vector<Field>& fields, const std::string& format,
                 bool with_csv_header) {
  if (format == "csv") {
    if (with_csv_header) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        std::cout << (i ? "," : "") << fields[i].key;
      std::cout << "\n";
    }
    for (std::size_t i = 0; i < fields.size(); ++i)
      std::cout << (i ? "," : "") << fields[i].value;
    std::cout << "\n";
  } else if (format == "json-lines") {
    std::cout << "{";
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << "\"" << fields[i].key << "\":";
      if (fields[i].quoted)
        std::cout << "\"" << fields[i].value << "\"";
      else
        std::cout << fields[i].value;
    }
    std::cout << "}\n";
  } else {  // records
    for (std::size_t i = 0; i < fields.size(); ++i)
      std::cout << (i ? " " : "") << fields[i].key << "=" << fields[i].value;
    std::cout << "\n";
  }
}

double parse_real(const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw CLI::ValidationError("malformed number: " + s);
  }
  if (pos != s.size()) throw CLI::ValidationError("malformed number: " + s);
  return v;
}

meanbound::ExtendedExponent parse_exponent(const std::string& s) {
  if (s == "inf" || s == "+inf") return meanbound::ExtendedExponent::pos_inf();
  if (s == "-inf") return meanbound::ExtendedExponent::neg_inf();
  return meanbound::ExtendedExponent::from(parse_real(s));
}

std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw CLI::ValidationError("empty value list");
  return out;
}

// UTF-8 text, one decimal number per line, '#' comment lines ignored
std::vector<double> read_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open input file: " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r");
    out.push_back(parse_real(line.substr(start, end - start + 1)));
  }
  if (out.empty()) throw CLI::ValidationError("no numbers in input file: " + path);
  return out;
}

struct MeanArgs {
  std::string p;
  std::string values;
  std::string input;
  bool exponential = false;
};

int run_mean(const MeanArgs& a) {
  if (a.values.empty() == a.input.empty())
    throw CLI::ValidationError("provide exactly one of --values or --input");
  const auto entries = a.values.empty() ? read_value_file(a.input) : parse_value_list(a.values);
  const auto p = parse_exponent(a.p);
  const double result =
      a.exponential ? meanbound::exponential_mean(p, meanbound::RealVector(entries))
                    : meanbound::power_mean(p, meanbound::PositiveVector(entries));
  std::cout << format_double(result) << "\n";
  return 0;
}

struct BoundArgs {
  double p = 0, q = 0, gamma = 1;
  std::string format = "records";
};

int run_bound(const BoundArgs& a) {
  const meanbound::bounds::BoundInputs b{a.p, a.q, a.gamma};
  const double k = meanbound::bounds::cargo_shisha(b);
  const double nb = meanbound::bounds::new_bound(b);
  std::vector<Field> fields{{"p", format_double(a.p)},
                            {"q", format_double(a.q)},
                            {"gamma", format_double(a.gamma)},
                            {"K", format_double(k)},
                            {"B", format_double(nb)}};
  if (a.p == 1.0 && a.q == -1.0)
    fields.push_back({"kantorovich", format_double(meanbound::bounds::kantorovich_bound(a.gamma))});
  fields.push_back({"B_over_K", format_double(nb / k)});
  emit_record(fields, a.format, true);
  return 0;
}

struct SweepArgs {
  double p = 0, q = 0, gamma_min = 1, gamma_max = 1;
  int steps = 2;
  std::string scale = "linear";
  std::string format = "csv";
};

int run_sweep(const SweepArgs& a) {
  if (!(a.gamma_min >= 1.0) || !(a.gamma_min <= a.gamma_max) || a.steps < 2 || a.q > a.p)
    throw CLI::ValidationError("malformed sweep spec");
  bool header = true;
  for (int i = 0; i < a.steps; ++i) {
    const double f = static_cast<double>(i) / (a.steps - 1);
    const double gamma = a.scale == "log"
                             ? a.gamma_min * std::exp(f * std::log(a.gamma_max / a.gamma_min))
                             : a.gamma_min + f * (a.gamma_max - a.gamma_min);
    const auto r = meanbound::extremal::gap_report(a.p, a.q, gamma);
    emit_record({{"gamma", format_double(gamma)},
                 {"sup_estimate", format_double(r.sup_estimate.value_or(1.0))},
                 {"K", format_double(r.cargo_shisha)},
                 {"B", format_double(r.new_bound)},
                 {"slack_K_over_sup", format_double(r.slack_K_over_sup)},
                 {"slack_B_over_K", format_double(r.slack_B_over_K)}},
                a.format, header);
    header = false;
  }
  return 0;
}

struct ExtremalArgs {
  double p = 0, q = 0;
  std::optional<double> gamma;
  std::string probe;
  std::string format = "records";
};

int run_extremal(const ExtremalArgs& a) {
  if (a.gamma.has_value() == !a.probe.empty() )
    throw CLI::ValidationError("provide exactly one of --gamma or --probe");
  if (a.gamma) {
    const auto r = meanbound::extremal::gap_report(a.p, a.q, *a.gamma);
    std::vector<Field> fields{{"p", format_double(a.p)},
                              {"q", format_double(a.q)},
                              {"gamma", format_double(*a.gamma)},
                              {"sup_estimate", format_double(r.sup_estimate.value_or(1.0))}};
    if (r.argmax_lambda) fields.push_back({"argmax_lambda", format_double(*r.argmax_lambda)});
    fields.push_back({"K", format_double(r.cargo_shisha)});
    fields.push_back({"B", format_double(r.new_bound)});
    fields.push_back({"slack_K_over_sup", format_double(r.slack_K_over_sup)});
    fields.push_back({"slack_B_over_K", format_double(r.slack_B_over_K)});
    emit_record(fields, a.format, true);
    return 0;
  }
  bool header = true;
  for (double t : parse_value_list(a.probe)) {
    const auto r = meanbound::extremal::sharpness_probe(a.p, a.q, t);
    emit_record({{"t", format_double(r.t)},
                 {"normalized_ratio", format_double(r.normalized_ratio)}},
                a.format, header);
    header = false;
  }
  return 0;
}

struct VerifyArgs {
  std::optional<std::uint64_t> seed;
  long samples = 1000;
  std::string property;
  double tol = 1e-9;
  double gamma_max = 1e3;
  int n_max = 16;
  std::string format = "records";
};

int run_verify(const VerifyArgs& a) {
  meanbound::verify::CampaignConfig cfg;
  if (a.seed) {
    cfg.seed = *a.seed;
  } else if (const char* env = std::getenv("MEANBOUND_SEED")) {
    cfg.seed = std::strtoull(env, nullptr, 10);
  }
  cfg.samples = a.samples;
  cfg.tolerance = a.tol;
  cfg.gamma_max = a.gamma_max;
  cfg.n_max = a.n_max;

  std::vector<meanbound::verify::CampaignReport> reports;
  if (a.property.empty()) {
    reports = meanbound::verify::run_all(cfg);
  } else {
    reports.push_back(meanbound::verify::run_property(a.property, cfg));
  }
  bool header = true;
  long total_violations = 0;
  for (const auto& r : reports) {
    total_violations += r.violations;
    emit_record({{"property", r.property_name, true},
                 {"samples", std::to_string(r.samples_run)},
                 {"violations", std::to_string(r.violations)},
                 {"worst_margin", format_double(r.worst_margin)},
                 {"worst_witness", r.worst_witness, true}},
                a.format, header);
    header = false;
  }
  return total_violations > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power-mean ratio bounds: means, Cargo-Shisha and exponential "
               "bounds, extremal search, property verification"};
  app.require_subcommand(1);

  MeanArgs mean_args;
  auto* mean = app.add_subcommand("mean", "evaluate a power or exponential mean");
  mean->add_option("--p", mean_args.p, "exponent (real, inf or -inf)")->required();
  mean->add_flag("--exponential", mean_args.exponential, "exponential mean instead of power mean");
  mean->add_option("--values", mean_args.values, "comma-separated entries");
  mean->add_option("--input", mean_args.input, "file with one number per line");

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "evaluate the ratio bounds at (p, q, gamma)");
  bound->add_option("--p", bound_args.p)->required();
  bound->add_option("--q", bound_args.q)->required();
  bound->add_option("--gamma", bound_args.gamma)->required();
  bound->add_option("--format", bound_args.format)
      ->check(CLI::IsMember({"csv", "records", "json-lines"}));

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "tabulate sup/K/B over a gamma range");
  sweep->add_option("--p", sweep_args.p)->required();
  sweep->add_option("--q", sweep_args.q)->required();
  sweep->add_option("--gamma-min", sweep_args.gamma_min)->required();
  sweep->add_option("--gamma-max", sweep_args.gamma_max)->required();
  sweep->add_option("--steps", sweep_args.steps)->required();
  sweep->add_option("--scale", sweep_args.scale)->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--format", sweep_args.format)
      ->check(CLI::IsMember({"csv", "records", "json-lines"}));

  ExtremalArgs ext_args;
  auto* ext = app.add_subcommand("extremal", "extremal-ratio report or sharpness probe");
  ext->add_option("--p", ext_args.p)->required();
  ext->add_option("--q", ext_args.q)->required();
  double ext_gamma = 0;
  auto* gopt = ext->add_option("--gamma", ext_gamma, "spread for the gap report");
  ext->add_option("--probe", ext_args.probe, "comma-separated t values for the sharpness probe");
  ext->add_option("--format", ext_args.format)
      ->check(CLI::IsMember({"csv", "records", "json-lines"}));

  VerifyArgs ver_args;
  std::uint64_t ver_seed = 0;
  auto* ver = app.add_subcommand("verify", "run seeded property campaigns");
  auto* seed_opt = ver->add_option("--seed", ver_seed, "campaign seed (default: MEANBOUND_SEED or 42)");
  ver->add_option("--samples", ver_args.samples)->check(CLI::PositiveNumber);
  ver->add_option("--property", ver_args.property, "run a single property");
  ver->add_option("--tol", ver_args.tol)->check(CLI::PositiveNumber);
  ver->add_option("--gamma-max", ver_args.gamma_max);
  ver->add_option("--n-max", ver_args.n_max);
  ver->add_option("--format", ver_args.format)
      ->check(CLI::IsMember({"csv", "records", "json-lines"}));

  try {
    app.parse(argc, argv);
    if (gopt->count()) ext_args.gamma = ext_gamma;
    if (seed_opt->count()) ver_args.seed = ver_seed;
    if (mean->parsed()) return run_mean(mean_args);
    if (bound->parsed()) return run_bound(bound_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (ext->parsed()) return run_extremal(ext_args);
    if (ver->parsed()) return run_verify(ver_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
