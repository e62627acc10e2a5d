#pragma once

#include <functional>
#include <vector>

#include "polysim/metrics.hpp"
#include "polysim/types.hpp"

namespace polysim {

/// Flat cell indices (iy * nx + ix) whose centers lie within
/// influence_radius of (x, y). Never empty: falls back to the containing
/// cell when no center is in range.
std::vector<int> zone_cells(const SoilGrid& soil, double x, double y,
                            double influence_radius);

/// Spread volume_ml uniformly over the zone around (x, y). Cells cap at
/// saturation; the excess leaves as drainage. Updates the step ledger and
/// water_total. Negative volume throws DomainError.
void apply_irrigation(GardenState& state, const GrowthParams& params, double x,
                      double y, double volume_ml);

/// Mean VWC over the zone around (x, y).
double local_vwc(const GardenState& state, const GrowthParams& params, double x,
                 double y);

/// Daily root uptake. Living plants draw in id order: demand is the volume
/// needed to lift the zone to the stage target, removal is proportional to
/// each cell's above-residual water, and f_water = removed / demand
/// (1 when demand is 0). Updates the step ledger.
void water_uptake(GardenState& state, const GrowthParams& params);

/// Exponential decay toward residual: vwc <- residual + retain * (vwc - residual).
/// The lost water is booked as evaporation in the step ledger.
void evaporate(GardenState& state, double retain);

/// Per-cell canopy ownership. A cell is covered by a plant when its center
/// lies within the plant's radius; the owner is the covering plant with the
/// largest radius, ties broken by earlier emergence day then lower id.
struct LightResult {
  std::vector<int> owner;     // per cell: index into plants, or -1
  std::vector<int> covered;   // per plant: cells it covers
  std::vector<int> assigned;  // per plant: cells it owns
};

LightResult light_allocation(const GardenState& state);

/// Write f_light = assigned / covered onto each plant (1 when covered = 0).
void apply_light(GardenState& state, const LightResult& light);

/// Advance one plant by one day: age, stage transitions, radial growth
/// gamma * f_water * f_light capped at max_radius, senescence shrink.
/// No-op before the plant's plant_day.
void update_plant(GardenState& state, PlantInstance& plant,
                  const GrowthParams& params);

/// Remove fraction delta of canopy area: r <- r * sqrt(1 - delta). Logged as
/// a prune event. Germination and Death stages are skipped with a warning
/// event instead.
void apply_prune(GardenState& state, int plant_id, double delta);

/// Plugs policy behavior into the fixed daily order.
struct StepPlan {
  /// Phase 2. Either a once-per-day irrigation action or 48 controller ticks.
  std::function<void(GardenState&)> irrigate;
  /// Phase 4 retention override; defaults to params.decay_retain when unset.
  /// Tick-based irrigation spreads the same decay over its own ticks and
  /// sets this to 1 so the daily pass is a no-op.
  double evaporate_retain_override = -1.0;
  /// Phase 7. Returns plant ids to prune today (empty: no pruning).
  std::function<std::vector<int>(GardenState&)> select_prune_targets;
  double prune_delta = 0.15;
};

/// One simulated day in fixed order: planting events, irrigation, uptake,
/// evaporation, light allocation, plant updates, pruning, metrics snapshot.
/// Audits water conservation for the step and advances state.day.
DayRecord step_day(GardenState& state, const GrowthParams& params,
                   const StepPlan& plan);

}  // namespace polysim
