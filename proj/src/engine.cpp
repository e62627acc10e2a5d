#include "polysim/engine.hpp"

#include <algorithm>
#include <cmath>

#include "polysim/errors.hpp"
#include "polysim/format.hpp"

namespace polysim {

std::vector<int> zone_cells(const SoilGrid& soil, double x, double y,
                            double influence_radius) {
  std::vector<int> cells;
  const double r2 = influence_radius * influence_radius;
  const int ix_lo = soil.cell_of_x(x - influence_radius);
  const int ix_hi = soil.cell_of_x(x + influence_radius);
  const int iy_lo = soil.cell_of_y(y - influence_radius);
  const int iy_hi = soil.cell_of_y(y + influence_radius);
  for (int iy = iy_lo; iy <= iy_hi; ++iy) {
    for (int ix = ix_lo; ix <= ix_hi; ++ix) {
      const double dx = soil.center_x(ix) - x;
      const double dy = soil.center_y(iy) - y;
      if (dx * dx + dy * dy <= r2) cells.push_back(iy * soil.nx + ix);
    }
  }
  if (cells.empty()) cells.push_back(soil.cell_of_y(y) * soil.nx + soil.cell_of_x(x));
  return cells;
}

void apply_irrigation(GardenState& state, const GrowthParams& params, double x,
                      double y, double volume_ml) {
  if (volume_ml < 0.0)
    throw DomainError("apply_irrigation: negative volume " + fixed(volume_ml, 3));
  if (volume_ml == 0.0) return;
  const std::vector<int> zone = zone_cells(state.soil, x, y, params.influence_radius);
  const double cell_volume = state.soil.cell_volume_ml();
  const double dv = volume_ml / static_cast<double>(zone.size()) / cell_volume;
  double drained = 0.0;
  for (int c : zone) {
    double& vwc = state.soil.vwc[static_cast<std::size_t>(c)];
    vwc += dv;
    if (vwc > state.soil.saturation_vwc) {
      drained += (vwc - state.soil.saturation_vwc) * cell_volume;
      vwc = state.soil.saturation_vwc;
    }
  }
  state.step.irrigation_ml += volume_ml;
  state.step.drainage_ml += drained;
  state.water_total_ml += volume_ml;
}

double local_vwc(const GardenState& state, const GrowthParams& params, double x,
                 double y) {
  const std::vector<int> zone = zone_cells(state.soil, x, y, params.influence_radius);
  double sum = 0.0;
  for (int c : zone) sum += state.soil.vwc[static_cast<std::size_t>(c)];
  return sum / static_cast<double>(zone.size());
}

void water_uptake(GardenState& state, const GrowthParams& params) {
  const double cell_volume = state.soil.cell_volume_ml();
  for (auto& plant : state.plants) {
    if (!is_living(plant)) continue;
    if (state.day < state.type_of(plant).plant_day) continue;  // not planted yet
    const std::vector<int> zone =
        zone_cells(state.soil, plant.x, plant.y, params.influence_radius);
    double local = 0.0;
    for (int c : zone) local += state.soil.vwc[static_cast<std::size_t>(c)];
    local /= static_cast<double>(zone.size());
    const double target = stage_target_vwc(plant.stage);
    const double demand =
        std::max(0.0, target - local) * static_cast<double>(zone.size()) * cell_volume;
    if (demand <= 0.0) {
      plant.f_water = 1.0;
      continue;
    }
    double available = 0.0;
    for (int c : zone)
      available += (state.soil.vwc[static_cast<std::size_t>(c)] -
                    state.soil.residual_vwc) * cell_volume;
    const double removed = std::min(demand, std::max(0.0, available));
    if (removed > 0.0 && available > 0.0) {
      const double frac = removed / available;
      for (int c : zone) {
        double& vwc = state.soil.vwc[static_cast<std::size_t>(c)];
        vwc -= (vwc - state.soil.residual_vwc) * frac;
      }
    }
    state.step.uptake_ml += removed;
    plant.f_water = removed / demand;
  }
}

void evaporate(GardenState& state, double retain) {
  if (retain >= 1.0) return;
  const double cell_volume = state.soil.cell_volume_ml();
  double lost = 0.0;
  for (double& vwc : state.soil.vwc) {
    const double next = state.soil.residual_vwc + retain * (vwc - state.soil.residual_vwc);
    lost += (vwc - next) * cell_volume;
    vwc = next;
  }
  state.step.evaporation_ml += lost;
}

LightResult light_allocation(const GardenState& state) {
  LightResult result;
  const SoilGrid& soil = state.soil;
  result.owner.assign(static_cast<std::size_t>(soil.cell_count()), -1);
  result.covered.assign(state.plants.size(), 0);
  result.assigned.assign(state.plants.size(), 0);

  for (int iy = 0; iy < soil.ny; ++iy) {
    for (int ix = 0; ix < soil.nx; ++ix) {
      const double cx = soil.center_x(ix);
      const double cy = soil.center_y(iy);
      int best = -1;
      for (std::size_t i = 0; i < state.plants.size(); ++i) {
        const PlantInstance& p = state.plants[i];
        if (p.radius <= 0.0) continue;
        const double dx = cx - p.x;
        const double dy = cy - p.y;
        if (dx * dx + dy * dy > p.radius * p.radius) continue;
        result.covered[i] += 1;
        if (best < 0) {
          best = static_cast<int>(i);
          continue;
        }
        const PlantInstance& b = state.plants[static_cast<std::size_t>(best)];
        // Taller canopy wins; earlier emergence then lower id break ties.
        if (p.radius > b.radius ||
            (p.radius == b.radius &&
             (state.emergence_day(p) < state.emergence_day(b) ||
              (state.emergence_day(p) == state.emergence_day(b) && p.id < b.id)))) {
          best = static_cast<int>(i);
        }
      }
      if (best >= 0) {
        result.owner[static_cast<std::size_t>(iy * soil.nx + ix)] = best;
        result.assigned[static_cast<std::size_t>(best)] += 1;
      }
    }
  }
  return result;
}

void apply_light(GardenState& state, const LightResult& light) {
  for (std::size_t i = 0; i < state.plants.size(); ++i) {
    state.plants[i].f_light =
        light.covered[i] > 0
            ? static_cast<double>(light.assigned[i]) / light.covered[i]
            : 1.0;
  }
}

void update_plant(GardenState& state, PlantInstance& plant,
                  const GrowthParams& params) {
  const PlantTypeSpec& type = state.type_of(plant);
  if (state.day < type.plant_day) return;
  plant.age_since_planting += 1;
  const int age = plant.age_since_planting;
  switch (plant.stage) {
    case LifecycleStage::Germination:
      if (age >= type.germination_time) {
        plant.stage = LifecycleStage::Vegetative;
        plant.germinated = true;
        plant.radius = 1.0;
      }
      break;
    case LifecycleStage::Vegetative: {
      const double gamma = (type.max_radius - 1.0) /
                           static_cast<double>(type.maturation_time - type.germination_time);
      plant.radius = std::min(type.max_radius,
                              plant.radius + gamma * plant.f_water * plant.f_light);
      if (age >= type.maturation_time) plant.stage = LifecycleStage::Reproductive;
      break;
    }
    case LifecycleStage::Reproductive:
      if (age >= type.maturation_time + type.reproductive_duration)
        plant.stage = LifecycleStage::Senescence;
      break;
    case LifecycleStage::Senescence:
      plant.radius *= 1.0 - params.senescence_decay;
      if (age >= type.maturation_time + type.reproductive_duration +
                     type.senescence_duration) {
        plant.stage = LifecycleStage::Death;
        plant.radius = 0.0;
      }
      break;
    case LifecycleStage::Death:
      break;
  }
}

void apply_prune(GardenState& state, int plant_id, double delta) {
  for (auto& plant : state.plants) {
    if (plant.id != plant_id) continue;
    if (plant.stage == LifecycleStage::Germination ||
        plant.stage == LifecycleStage::Death) {
      state.events.push_back({state.day, 0, "prune_skipped", plant_id, plant.radius});
      return;
    }
    plant.radius *= std::sqrt(1.0 - delta);
    state.events.push_back({state.day, 0, "prune", plant_id, plant.radius});
    return;
  }
  throw DomainError("apply_prune: no plant with id " + std::to_string(plant_id));
}

namespace {

DayRecord snapshot(const GardenState& state, const LightResult& light,
                   double water_day_ml) {
  DayRecord rec;
  rec.day = state.day;
  const double total_cells = static_cast<double>(state.soil.cell_count());
  std::vector<int> cells_by_type(state.types.size(), 0);
  for (std::size_t i = 0; i < state.plants.size(); ++i)
    cells_by_type[static_cast<std::size_t>(state.plants[i].type_ref)] +=
        light.assigned[i];
  rec.per_type_coverage.resize(state.types.size());
  double coverage = 0.0;
  for (std::size_t k = 0; k < state.types.size(); ++k) {
    // Stored at CSV precision so files and memory agree; coverage is the
    // exact sum of the stored per-type values.
    rec.per_type_coverage[k] = round_to(cells_by_type[k] / total_cells, 6);
    coverage += rec.per_type_coverage[k];
  }
  rec.coverage = coverage;
  rec.diversity =
      round_to(diversity_index(coverage_weights(rec.per_type_coverage, state.types)), 6);
  rec.water_day_ml = water_day_ml;
  rec.water_total_ml = state.water_total_ml;
  return rec;
}

}  // namespace

DayRecord step_day(GardenState& state, const GrowthParams& params,
                   const StepPlan& plan) {
  state.step = WaterLedger{};
  const double storage_before = state.soil.storage_ml();

  // (1) Planting events and germination fates.
  for (auto& plant : state.plants) {
    if (state.type_of(plant).plant_day != state.day) continue;
    state.events.push_back({state.day, 0, "plant", plant.id, 0.0});
    if (!plant.will_germinate) {
      plant.stage = LifecycleStage::Death;
      plant.radius = 0.0;
      state.events.push_back({state.day, 0, "germination_failure", plant.id, 0.0});
    }
  }

  // (2) Irrigation (one daily action or a day of controller ticks).
  if (plan.irrigate) plan.irrigate(state);

  // (3) Root uptake.
  water_uptake(state, params);

  // (4) Evaporation. Tick-driven irrigation evaporates inside its own ticks
  // and overrides the daily retention with 1.
  const double retain = plan.evaporate_retain_override >= 0.0
                            ? plan.evaporate_retain_override
                            : params.decay_retain;
  evaporate(state, retain);

  // (5) Light allocation feeds both growth and the metrics snapshot.
  const LightResult light = light_allocation(state);
  apply_light(state, light);

  // (6) Age, stage transitions, growth.
  for (auto& plant : state.plants) update_plant(state, plant, params);

  // (7) Pruning.
  if (plan.select_prune_targets)
    for (int id : plan.select_prune_targets(state)) apply_prune(state, id, plan.prune_delta);

  // Conservation audit: irrigation = storage delta + uptake + evaporation + drainage.
  const double storage_after = state.soil.storage_ml();
  const double lhs = state.step.irrigation_ml;
  const double rhs = (storage_after - storage_before) + state.step.uptake_ml +
                     state.step.evaporation_ml + state.step.drainage_ml;
  const double scale = std::max(1.0, std::abs(lhs));
  state.last_step_rel_error = std::abs(lhs - rhs) / scale;
  state.max_step_rel_error = std::max(state.max_step_rel_error, state.last_step_rel_error);
  state.cumulative += state.step;

  // (8) Metrics snapshot, then advance the clock.
  DayRecord rec = snapshot(state, light, state.step.irrigation_ml);
  state.day += 1;
  return rec;
}

}  // namespace polysim
