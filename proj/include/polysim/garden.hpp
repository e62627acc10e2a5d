#pragma once

#include <string>
#include <vector>

#include "polysim/types.hpp"

namespace polysim {

/// A plant to place: type name plus center coordinates in cm.
struct Placement {
  std::string type_name;
  double x = 0.0;
  double y = 0.0;
};

/// Construction-time knobs for a garden.
struct GardenConfig {
  double bed_w = 0.0;
  double bed_h = 0.0;
  double cell_size = 10.0;
  double cell_depth = 10.0;
  double initial_vwc = 0.2;
  double residual_vwc = 0.05;
  double saturation_vwc = 0.5;
  std::vector<PlantTypeSpec> types;
  std::vector<Placement> placements;
  bool mirror_placements = false;   // append the mirror image of each placement
  double placement_jitter_cm = 0.0; // uniform +-jitter on both axes, clamped to bed
  unsigned long long seed = 0;
};

/// Reflect a placement across the bed's vertical midline. Involution:
/// mirroring twice returns the original. Throws DomainError if x is
/// outside [0, bed_w].
Placement mirror_placement(const Placement& p, double bed_w);

/// Build a day-0 garden: soil at initial_vwc, every plant in Germination
/// with radius 0. Jitter and germination fates are drawn here, in plant id
/// order, so matched seeds give matched gardens. Throws ConfigError on
/// duplicate ids, unknown type names, or centers outside the bed.
GardenState new_garden(const GardenConfig& config);

/// Garden snapshot as a JSON object string (2-space indent).
std::string to_json(const GardenState& state);

}  // namespace polysim
