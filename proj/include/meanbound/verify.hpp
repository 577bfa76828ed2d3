#pragma once

// Seeded, reproducible property campaigns over random inputs. Every sample
// draws its own random stream from (seed, index), so results are independent
// of evaluation order and identical configs give byte-identical reports.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace meanbound::verify {

struct CampaignConfig {
  std::uint64_t seed = 42;
  long samples = 1000;
  double p_min = -10.0;
  double p_max = 10.0;
  double q_min = -10.0;
  double q_max = 10.0;
  double gamma_max = 1e3;
  int n_max = 16;
  double tolerance = 1e-9;
};

struct CampaignReport {
  std::string property_name;
  long samples_run = 0;
  long violations = 0;       // samples with margin < -tolerance
  double worst_margin = 0.0;
  long worst_index = 0;
  std::string worst_witness;  // replayable serialized inputs
};

// Registered property identifiers, in canonical order.
const std::vector<std::string>& property_names();

CampaignReport run_property(std::string_view name, const CampaignConfig& cfg);
std::vector<CampaignReport> run_all(const CampaignConfig& cfg);

// Re-evaluates the margin of one sample; reproduces the report's
// worst_margin exactly when called with its worst_index.
double replay_margin(std::string_view name, const CampaignConfig& cfg, long index);

}  // namespace meanbound::verify
