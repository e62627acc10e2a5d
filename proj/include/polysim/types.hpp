#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "polysim/rng.hpp"

namespace polysim {

enum class WaterGroup { Group1 = 1, Group2 = 2 };

/// Stages advance strictly in this order; Death is absorbing.
enum class LifecycleStage { Germination, Vegetative, Reproductive, Senescence, Death };

const char* to_string(LifecycleStage stage);
const char* to_string(WaterGroup group);

/// Per-stage irrigation target in volumetric water content.
double stage_target_vwc(LifecycleStage stage);

/// Static per-species growth parameters.
struct PlantTypeSpec {
  std::string name;
  int germination_time = 0;   // days from planting to emergence
  int maturation_time = 0;    // days from planting to end of radial growth
  double max_radius = 0.0;    // cm
  WaterGroup water_group = WaterGroup::Group1;
  int plant_day = 0;          // day offset from cycle start
  int reproductive_duration = 20;  // days
  int senescence_duration = 15;    // days
  double germination_probability = 1.0;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct PlantInstance {
  int id = 0;
  int type_ref = 0;  // index into GardenState::types
  double x = 0.0;    // cm
  double y = 0.0;    // cm
  double radius = 0.0;  // cm; 0 while Germination or Death
  LifecycleStage stage = LifecycleStage::Germination;
  bool germinated = false;
  int age_since_planting = 0;  // completed days since plant_day

  // Per-day resource signals, rewritten by each engine step.
  double f_water = 1.0;
  double f_light = 1.0;
  // Germination fate, drawn once at garden construction, applied at plant_day.
  bool will_germinate = true;
};

bool is_living(const PlantInstance& plant);

/// 2-D grid of volumetric water content. Cells are cell_size x cell_size x
/// depth; at the 10 cm defaults one cell holds 1 L, so mL and cm^3 coincide.
struct SoilGrid {
  double cell_size = 10.0;  // cm
  double depth = 10.0;      // cm
  int nx = 0;
  int ny = 0;
  double residual_vwc = 0.05;
  double saturation_vwc = 0.5;
  std::vector<double> vwc;  // row-major, iy * nx + ix

  static SoilGrid make(double bed_w, double bed_h, double cell_size, double depth,
                       double initial_vwc, double residual_vwc, double saturation_vwc);

  double& at(int ix, int iy) { return vwc[static_cast<std::size_t>(iy) * nx + ix]; }
  double at(int ix, int iy) const { return vwc[static_cast<std::size_t>(iy) * nx + ix]; }

  double cell_volume_ml() const { return cell_size * cell_size * depth; }
  double center_x(int ix) const { return (ix + 0.5) * cell_size; }
  double center_y(int iy) const { return (iy + 0.5) * cell_size; }

  /// Index of the cell containing coordinate x, clamped to the grid.
  int cell_of_x(double x) const;
  int cell_of_y(double y) const;

  double storage_ml() const;
  int cell_count() const { return nx * ny; }
};

/// One step's water movements, all in mL. Conservation:
/// irrigation = storage delta + uptake + evaporation + drainage.
struct WaterLedger {
  double irrigation_ml = 0.0;
  double uptake_ml = 0.0;
  double evaporation_ml = 0.0;
  double drainage_ml = 0.0;

  WaterLedger& operator+=(const WaterLedger& other) {
    irrigation_ml += other.irrigation_ml;
    uptake_ml += other.uptake_ml;
    evaporation_ml += other.evaporation_ml;
    drainage_ml += other.drainage_ml;
    return *this;
  }
};

/// Engine tuning shared by all plants.
struct GrowthParams {
  double prune_delta = 0.15;       // fraction of canopy area removed per prune
  double decay_retain = 0.7;       // daily retention of above-residual moisture
  double senescence_decay = 0.03;  // fraction of radius lost per senescence day
  double influence_radius = 10.0;  // cm; irrigation spread and local VWC zone

  void validate() const;
};

struct Event {
  int day = 0;
  int tick = 0;
  std::string type;  // plant | germination_failure | irrigation | prune
  int plant_id = -1;
  double value = 0.0;  // mL for irrigation, radius after prune, else 0
};

struct GardenState {
  int day = 0;
  double bed_w = 0.0;  // cm
  double bed_h = 0.0;  // cm
  std::vector<PlantTypeSpec> types;
  std::vector<PlantInstance> plants;
  SoilGrid soil;
  double water_total_ml = 0.0;  // irrigation applied since day 0
  Rng rng;

  WaterLedger step;        // zeroed at the start of each step
  WaterLedger cumulative;  // accumulated at the end of each step
  double last_step_rel_error = 0.0;
  double max_step_rel_error = 0.0;
  std::vector<Event> events;

  const PlantTypeSpec& type_of(const PlantInstance& plant) const {
    return types[static_cast<std::size_t>(plant.type_ref)];
  }
  /// Day the plant leaves (or would leave) the germination stage.
  int emergence_day(const PlantInstance& plant) const {
    const auto& t = type_of(plant);
    return t.plant_day + t.germination_time;
  }
};

}  // namespace polysim
