#include "polysim/policies.hpp"

#include <algorithm>

#include "polysim/engine.hpp"
#include "polysim/errors.hpp"
#include "polysim/metrics.hpp"

namespace polysim {

const char* to_string(IrrigationPolicy policy) {
  switch (policy) {
    case IrrigationPolicy::BaselineFixed: return "baseline";
    case IrrigationPolicy::BinaryAnalytic: return "binary";
    case IrrigationPolicy::ContinuousVariable: return "continuous";
    case IrrigationPolicy::DiscreteVariable: return "discrete";
    case IrrigationPolicy::ClosedLoop: return "closed_loop";
  }
  return "?";
}

IrrigationPolicy parse_policy(const std::string& name) {
  if (name == "baseline" || name == "baseline_fixed")
    return IrrigationPolicy::BaselineFixed;
  if (name == "binary" || name == "binary_analytic")
    return IrrigationPolicy::BinaryAnalytic;
  if (name == "continuous" || name == "continuous_variable")
    return IrrigationPolicy::ContinuousVariable;
  if (name == "discrete" || name == "discrete_variable")
    return IrrigationPolicy::DiscreteVariable;
  if (name == "closed_loop" || name == "closedloop")
    return IrrigationPolicy::ClosedLoop;
  throw ConfigError("unknown irrigation policy '" + name +
                    "' (expected baseline, binary, continuous, discrete, closed_loop)");
}

void PolicyBundle::validate() const {
  if (discrete_levels.empty())
    throw ConfigError("policy: discrete_levels must be non-empty");
  if (discrete_levels.front() != 0.0)
    throw ConfigError("policy: discrete_levels must start at 0");
  if (!std::is_sorted(discrete_levels.begin(), discrete_levels.end()))
    throw ConfigError("policy: discrete_levels must be sorted ascending");
  if (binary_dose_ml <= 0.0) throw ConfigError("policy: binary_dose must be > 0");
  if (max_dose_ml < 0.0) throw ConfigError("policy: max_dose must be >= 0");
  if (prune_interval_days < 0)
    throw ConfigError("policy: prune_interval must be >= 0");
  if (prune_tolerance < 0.0)
    throw ConfigError("policy: prune_tolerance must be >= 0");
}

double quantize(double amount, const std::vector<double>& levels) {
  if (levels.empty()) throw DomainError("quantize: empty level list");
  auto it = std::lower_bound(levels.begin(), levels.end(), amount);
  if (it == levels.end()) return levels.back();  // saturate
  return *it;
}

double plant_dose_ml(const GardenState& state, const GrowthParams& params,
                     const PlantInstance& plant, const PolicyBundle& policy) {
  if (!is_living(plant)) return 0.0;
  if (state.day < state.type_of(plant).plant_day) return 0.0;
  if (policy.irrigation == IrrigationPolicy::BaselineFixed)
    return policy.binary_dose_ml;

  const double local = local_vwc(state, params, plant.x, plant.y);
  const double target = stage_target_vwc(plant.stage);
  switch (policy.irrigation) {
    case IrrigationPolicy::BinaryAnalytic:
      return local < target ? policy.binary_dose_ml : 0.0;
    case IrrigationPolicy::ContinuousVariable:
    case IrrigationPolicy::DiscreteVariable: {
      const std::size_t zone =
          zone_cells(state.soil, plant.x, plant.y, params.influence_radius).size();
      const double deficit = std::max(0.0, target - local) *
                             static_cast<double>(zone) *
                             state.soil.cell_volume_ml();
      const double dose = std::clamp(deficit, 0.0, policy.max_dose_ml);
      if (policy.irrigation == IrrigationPolicy::ContinuousVariable) return dose;
      return quantize(dose, policy.discrete_levels);
    }
    default:
      throw DomainError("plant_dose_ml: not a per-plant daily policy");
  }
}

std::vector<int> prune_selection(const GardenState& state, double tolerance) {
  const std::size_t k = state.types.size();
  if (k == 0) return {};
  const LightResult light = light_allocation(state);
  const double total_cells = static_cast<double>(state.soil.cell_count());
  std::vector<double> per_type(k, 0.0);
  for (std::size_t i = 0; i < state.plants.size(); ++i)
    per_type[static_cast<std::size_t>(state.plants[i].type_ref)] +=
        light.assigned[i] / total_cells;
  const std::vector<double> weights = coverage_weights(per_type, state.types);
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) return {};

  const double threshold = (1.0 + tolerance) / static_cast<double>(k);
  std::vector<int> selected;
  for (std::size_t t = 0; t < k; ++t) {
    if (weights[t] / total <= threshold) continue;
    const PlantInstance* best = nullptr;
    for (const auto& plant : state.plants) {
      if (plant.type_ref != static_cast<int>(t) || !is_living(plant)) continue;
      if (plant.radius <= 0.0) continue;
      // Strict > with the scan in id order keeps the lower id on ties.
      if (best == nullptr || plant.radius > best->radius ||
          (plant.radius == best->radius && plant.id < best->id))
        best = &plant;
    }
    if (best != nullptr) selected.push_back(best->id);
  }
  return selected;
}

std::vector<PlantTypeSpec> staggered_schedule(std::vector<PlantTypeSpec> types,
                                              const std::set<std::string>& fast_types,
                                              int offset) {
  if (offset < 0) throw ConfigError("staggered_schedule: offset must be >= 0");
  for (const auto& name : fast_types) {
    const bool known = std::any_of(types.begin(), types.end(),
                                   [&](const PlantTypeSpec& t) { return t.name == name; });
    if (!known)
      throw ConfigError("staggered_schedule: unknown fast type '" + name + "'");
  }
  for (auto& t : types)
    t.plant_day = fast_types.count(t.name) ? offset : 0;
  return types;
}

}  // namespace polysim
