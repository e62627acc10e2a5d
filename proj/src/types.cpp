#include "polysim/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polysim/errors.hpp"

namespace polysim {

const char* to_string(LifecycleStage stage) {
  switch (stage) {
    case LifecycleStage::Germination: return "Germination";
    case LifecycleStage::Vegetative: return "Vegetative";
    case LifecycleStage::Reproductive: return "Reproductive";
    case LifecycleStage::Senescence: return "Senescence";
    case LifecycleStage::Death: return "Death";
  }
  return "?";
}

const char* to_string(WaterGroup group) {
  return group == WaterGroup::Group1 ? "Group1" : "Group2";
}

double stage_target_vwc(LifecycleStage stage) {
  switch (stage) {
    case LifecycleStage::Germination: return 0.2;
    case LifecycleStage::Vegetative: return 0.2;
    case LifecycleStage::Reproductive: return 0.3;
    case LifecycleStage::Senescence: return 0.2;
    case LifecycleStage::Death: return 0.1;
  }
  return 0.0;
}

void PlantTypeSpec::validate() const {
  if (name.empty()) throw ConfigError("plant type: name must be non-empty");
  if (germination_time < 0)
    throw ConfigError("plant type '" + name + "': germination_time must be >= 0");
  if (maturation_time <= germination_time)
    throw ConfigError("plant type '" + name +
                      "': maturation_time must exceed germination_time");
  if (max_radius < 1.0)
    throw ConfigError("plant type '" + name + "': max_radius must be >= 1 cm");
  if (plant_day < 0)
    throw ConfigError("plant type '" + name + "': plant_day must be >= 0");
  if (reproductive_duration < 0)
    throw ConfigError("plant type '" + name +
                      "': reproductive_duration must be >= 0");
  if (senescence_duration < 0)
    throw ConfigError("plant type '" + name +
                      "': senescence_duration must be >= 0");
  if (germination_probability < 0.0 || germination_probability > 1.0)
    throw ConfigError("plant type '" + name +
                      "': germination_probability must be in [0, 1]");
}

bool is_living(const PlantInstance& plant) {
  return plant.stage != LifecycleStage::Death;
}

SoilGrid SoilGrid::make(double bed_w, double bed_h, double cell_size, double depth,
                        double initial_vwc, double residual_vwc,
                        double saturation_vwc) {
  if (bed_w <= 0 || bed_h <= 0)
    throw ConfigError("bed: width and height must be > 0");
  if (cell_size <= 0) throw ConfigError("soil: cell_size must be > 0");
  if (depth <= 0) throw ConfigError("soil: depth must be > 0");
  if (!(0.0 < residual_vwc && residual_vwc < saturation_vwc && saturation_vwc <= 1.0))
    throw ConfigError("soil: need 0 < residual_vwc < saturation_vwc <= 1");
  if (initial_vwc < residual_vwc || initial_vwc > saturation_vwc)
    throw ConfigError("soil: initial_vwc must lie in [residual_vwc, saturation_vwc]");
  SoilGrid g;
  g.cell_size = cell_size;
  g.depth = depth;
  g.nx = static_cast<int>(std::ceil(bed_w / cell_size));
  g.ny = static_cast<int>(std::ceil(bed_h / cell_size));
  g.residual_vwc = residual_vwc;
  g.saturation_vwc = saturation_vwc;
  g.vwc.assign(static_cast<std::size_t>(g.nx) * g.ny, initial_vwc);
  return g;
}

int SoilGrid::cell_of_x(double x) const {
  int ix = static_cast<int>(std::floor(x / cell_size));
  return std::clamp(ix, 0, nx - 1);
}

int SoilGrid::cell_of_y(double y) const {
  int iy = static_cast<int>(std::floor(y / cell_size));
  return std::clamp(iy, 0, ny - 1);
}

double SoilGrid::storage_ml() const {
  const double v = cell_volume_ml();
  return std::accumulate(vwc.begin(), vwc.end(), 0.0) * v;
}

void GrowthParams::validate() const {
  if (prune_delta <= 0.0 || prune_delta >= 1.0)
    throw ConfigError("growth: prune_delta must be in (0, 1)");
  if (decay_retain <= 0.0 || decay_retain > 1.0)
    throw ConfigError("growth: decay_retain must be in (0, 1]");
  if (senescence_decay < 0.0 || senescence_decay >= 1.0)
    throw ConfigError("growth: senescence_decay must be in [0, 1)");
  if (influence_radius <= 0.0)
    throw ConfigError("growth: influence_radius must be > 0");
}

}  // namespace polysim
