#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polysim/closed_loop.hpp"
#include "polysim/garden.hpp"
#include "polysim/policies.hpp"
#include "polysim/types.hpp"

namespace polysim {

/// Optional closed-loop controller block of a config file.
struct ClosedLoopConfig {
  std::vector<IrrigationRule> rules;
  std::vector<SensorSpec> sensors;
  std::vector<EmitterSpec> emitters;
  double sensor_noise_sigma = 0.0;
};

struct ExperimentConfig {
  std::string name;
  GardenConfig garden;
  GrowthParams growth;
  PolicyBundle policy;
  std::optional<ClosedLoopConfig> closed_loop;
  int cycle_length = 0;    // days
  int window_from = 0;     // metric window, inclusive
  int window_to = 0;
  unsigned long long seed = 0;
  int trials = 1;
  // Staggered-planting arm, used by the stagger experiment.
  std::set<std::string> fast_types;
  int stagger_offset = 0;

  void validate() const;
};

/// Reads and validates a JSON experiment config. Every violation names the
/// offending field. Throws ConfigError (file missing, parse failure, bad
/// field) with path context.
ExperimentConfig parse_config(const std::string& path);

/// Parse from an already-loaded JSON text (for tests).
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

/// Config echo used in summary.json: round-trips the validated config.
std::string config_json(const ExperimentConfig& config);

}  // namespace polysim
