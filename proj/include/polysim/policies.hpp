#pragma once

#include <set>
#include <string>
#include <vector>

#include "polysim/types.hpp"

namespace polysim {

enum class IrrigationPolicy {
  BaselineFixed,       // fixed dose per living plant per day
  BinaryAnalytic,      // fixed dose iff local VWC below stage target
  ContinuousVariable,  // dose equals the zone deficit, capped
  DiscreteVariable,    // continuous dose rounded up to a level
  ClosedLoop,          // sensor-driven controller, see closed_loop.hpp
};

const char* to_string(IrrigationPolicy policy);

/// Parses short and long policy names (baseline, binary, continuous,
/// discrete, closed_loop and their *_fixed/_analytic/_variable aliases).
/// Unknown names throw ConfigError.
IrrigationPolicy parse_policy(const std::string& name);

struct PolicyBundle {
  IrrigationPolicy irrigation = IrrigationPolicy::BaselineFixed;
  std::vector<double> discrete_levels = {0, 66, 132, 200, 266, 332, 400};
  double binary_dose_ml = 200.0;
  double max_dose_ml = 400.0;
  int prune_interval_days = 3;
  double prune_tolerance = 0.2;

  void validate() const;
};

/// Daily dose for one plant under the configured policy family. Death
/// plants always get 0; Germination plants water toward the Germination
/// target. Not used for the closed-loop controller.
double plant_dose_ml(const GardenState& state, const GrowthParams& params,
                     const PlantInstance& plant, const PolicyBundle& policy);

/// Smallest level >= amount; saturates at the largest level. Levels must be
/// sorted ascending starting at 0. Empty levels throw DomainError.
double quantize(double amount, const std::vector<double>& levels);

/// Ids of plants to prune: for each type whose normalized weighted share
/// q_k exceeds (1 + tolerance) / k, the largest-radius living plant of that
/// type (ties to the lower id). At most one plant per type.
std::vector<int> prune_selection(const GardenState& state, double tolerance);

/// Copy of types with plant_day = offset for members of fast_types and 0
/// otherwise. Unknown names in fast_types throw ConfigError.
std::vector<PlantTypeSpec> staggered_schedule(std::vector<PlantTypeSpec> types,
                                              const std::set<std::string>& fast_types,
                                              int offset);

}  // namespace polysim
