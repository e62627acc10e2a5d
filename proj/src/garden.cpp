#include "polysim/garden.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "polysim/errors.hpp"
#include "polysim/format.hpp"

namespace polysim {

Placement mirror_placement(const Placement& p, double bed_w) {
  if (p.x < 0.0 || p.x > bed_w)
    throw DomainError("mirror_placement: x=" + std::to_string(p.x) +
                      " outside [0, " + std::to_string(bed_w) + "]");
  return Placement{p.type_name, bed_w - p.x, p.y};
}

namespace {

int type_index(const std::vector<PlantTypeSpec>& types, const std::string& name) {
  for (std::size_t i = 0; i < types.size(); ++i)
    if (types[i].name == name) return static_cast<int>(i);
  throw ConfigError("placement: unknown plant type '" + name + "'");
}

}  // namespace

GardenState new_garden(const GardenConfig& config) {
  if (config.types.empty()) throw ConfigError("garden: at least one plant type required");
  for (const auto& t : config.types) t.validate();
  for (std::size_t i = 0; i < config.types.size(); ++i)
    for (std::size_t j = i + 1; j < config.types.size(); ++j)
      if (config.types[i].name == config.types[j].name)
        throw ConfigError("garden: duplicate plant type name '" + config.types[i].name + "'");
  if (config.placement_jitter_cm < 0.0)
    throw ConfigError("garden: placement_jitter_cm must be >= 0");

  GardenState state;
  state.day = 0;
  state.bed_w = config.bed_w;
  state.bed_h = config.bed_h;
  state.types = config.types;
  state.soil = SoilGrid::make(config.bed_w, config.bed_h, config.cell_size,
                              config.cell_depth, config.initial_vwc,
                              config.residual_vwc, config.saturation_vwc);
  state.rng = Rng(config.seed);

  std::vector<Placement> placements = config.placements;
  if (config.mirror_placements) {
    const std::size_t n = placements.size();
    for (std::size_t i = 0; i < n; ++i)
      placements.push_back(mirror_placement(placements[i], config.bed_w));
  }
  if (placements.empty()) throw ConfigError("garden: no placements");

  state.plants.reserve(placements.size());
  for (std::size_t i = 0; i < placements.size(); ++i) {
    const auto& pl = placements[i];
    if (pl.x < 0.0 || pl.x > config.bed_w || pl.y < 0.0 || pl.y > config.bed_h)
      throw ConfigError("placement " + std::to_string(i) + " ('" + pl.type_name +
                        "'): center outside bed");
    PlantInstance plant;
    plant.id = static_cast<int>(i);
    plant.type_ref = type_index(state.types, pl.type_name);
    plant.x = pl.x;
    plant.y = pl.y;
    state.plants.push_back(plant);
  }

  // Draw order is fixed (jitter pass, then fate pass, both in id order) so
  // equal seeds give equal gardens regardless of later policy choices.
  if (config.placement_jitter_cm > 0.0) {
    for (auto& plant : state.plants) {
      const double j = config.placement_jitter_cm;
      plant.x = std::clamp(plant.x + state.rng.uniform(-j, j), 0.0, config.bed_w);
      plant.y = std::clamp(plant.y + state.rng.uniform(-j, j), 0.0, config.bed_h);
    }
  }
  for (auto& plant : state.plants) {
    const double p = state.type_of(plant).germination_probability;
    plant.will_germinate = state.rng.u01() < p;
  }
  return state;
}

std::string to_json(const GardenState& state) {
  nlohmann::ordered_json j;
  j["day"] = state.day;
  j["bed"] = {state.bed_w, state.bed_h};
  auto plants = nlohmann::ordered_json::array();
  for (const auto& p : state.plants) {
    nlohmann::ordered_json pj;
    pj["id"] = p.id;
    pj["type_ref"] = state.type_of(p).name;
    pj["center"] = {p.x, p.y};
    pj["radius"] = p.radius;
    pj["stage"] = to_string(p.stage);
    pj["germinated"] = p.germinated;
    pj["age_since_planting"] = p.age_since_planting;
    plants.push_back(std::move(pj));
  }
  j["plants"] = std::move(plants);
  nlohmann::ordered_json soil;
  soil["cell_size"] = state.soil.cell_size;
  soil["depth"] = state.soil.depth;
  soil["residual_vwc"] = state.soil.residual_vwc;
  soil["saturation_vwc"] = state.soil.saturation_vwc;
  auto rows = nlohmann::ordered_json::array();
  for (int iy = 0; iy < state.soil.ny; ++iy) {
    auto row = nlohmann::ordered_json::array();
    for (int ix = 0; ix < state.soil.nx; ++ix) row.push_back(state.soil.at(ix, iy));
    rows.push_back(std::move(row));
  }
  soil["vwc"] = std::move(rows);
  j["soil"] = std::move(soil);
  j["water_total"] = state.water_total_ml;
  j["rng_state"] = state.rng.save();
  return j.dump(2);
}

}  // namespace polysim
