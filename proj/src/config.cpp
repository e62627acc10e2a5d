#include "polysim/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "polysim/errors.hpp"

namespace polysim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object())
    throw ConfigError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError(where + ": missing field '" + key + "'");
  return *it;
}

double num(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number())
    throw ConfigError(where + ".'" + key + "': expected a number");
  return v.get<double>();
}

double num_or(const json& obj, const std::string& key, const std::string& where,
              double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return num(obj, key, where);
}

int integer(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer())
    throw ConfigError(where + ".'" + key + "': expected an integer");
  return v.get<int>();
}

int integer_or(const json& obj, const std::string& key, const std::string& where,
               int fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return integer(obj, key, where);
}

std::string text(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string())
    throw ConfigError(where + ".'" + key + "': expected a string");
  return v.get<std::string>();
}

WaterGroup water_group(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    const int g = v.get<int>();
    if (g == 1) return WaterGroup::Group1;
    if (g == 2) return WaterGroup::Group2;
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "Group1" || s == "group1") return WaterGroup::Group1;
    if (s == "Group2" || s == "group2") return WaterGroup::Group2;
  }
  throw ConfigError(where + ": water_group must be 1, 2, \"Group1\", or \"Group2\"");
}

PlantTypeSpec parse_type(const json& t, const std::string& where) {
  PlantTypeSpec spec;
  spec.name = text(t, "name", where);
  spec.germination_time = integer(t, "germination_time", where);
  spec.maturation_time = integer(t, "maturation_time", where);
  spec.max_radius = num(t, "max_radius", where);
  spec.water_group = t.contains("water_group")
                         ? water_group(t.at("water_group"), where)
                         : WaterGroup::Group1;
  spec.plant_day = integer_or(t, "plant_day", where, 0);
  spec.reproductive_duration = integer_or(t, "reproductive_duration", where, 20);
  spec.senescence_duration = integer_or(t, "senescence_duration", where, 15);
  spec.germination_probability = num_or(t, "germination_probability", where, 1.0);
  spec.validate();
  return spec;
}

ClosedLoopConfig parse_closed_loop(const json& c) {
  ClosedLoopConfig cl;
  const json& rules = require(c, "rules", "closed_loop");
  if (!rules.is_array() || rules.empty())
    throw ConfigError("closed_loop.rules: expected a non-empty array");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const std::string where = "closed_loop.rules[" + std::to_string(i) + "]";
    IrrigationRule r;
    r.threshold_vwc = num(rules[i], "threshold_vwc", where);
    r.duration_s = integer(rules[i], "duration_s", where);
    r.min_interval_h = num(rules[i], "min_interval_h", where);
    cl.rules.push_back(r);
  }
  const json& sensors = require(c, "sensors", "closed_loop");
  if (!sensors.is_array() || sensors.empty())
    throw ConfigError("closed_loop.sensors: expected a non-empty array");
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const std::string where = "closed_loop.sensors[" + std::to_string(i) + "]";
    SensorSpec s;
    s.id = text(sensors[i], "id", where);
    s.x = num(sensors[i], "x", where);
    s.y = num(sensors[i], "y", where);
    s.cadence_min = integer_or(sensors[i], "cadence_min", where, 30);
    cl.sensors.push_back(std::move(s));
  }
  const json& emitters = require(c, "emitters", "closed_loop");
  if (!emitters.is_array() || emitters.empty())
    throw ConfigError("closed_loop.emitters: expected a non-empty array");
  for (std::size_t i = 0; i < emitters.size(); ++i) {
    const std::string where = "closed_loop.emitters[" + std::to_string(i) + "]";
    EmitterSpec e;
    e.plant_id = integer(emitters[i], "plant_id", where);
    e.group = emitters[i].contains("group")
                  ? water_group(emitters[i].at("group"), where)
                  : WaterGroup::Group1;
    e.turns = integer(emitters[i], "turns", where);
    cl.emitters.push_back(e);
  }
  cl.sensor_noise_sigma = num_or(c, "sensor_noise_sigma", "closed_loop", 0.0);
  return cl;
}

ExperimentConfig parse_json(const json& j, const std::string& origin) {
  ExperimentConfig cfg;
  cfg.name = j.contains("name") ? text(j, "name", origin) : "experiment";

  const json& bed = require(j, "bed", origin);
  cfg.garden.bed_w = num(bed, "width_cm", "bed");
  cfg.garden.bed_h = num(bed, "height_cm", "bed");

  if (j.contains("soil")) {
    const json& soil = j.at("soil");
    cfg.garden.cell_size = num_or(soil, "cell_size_cm", "soil", 10.0);
    cfg.garden.cell_depth = num_or(soil, "depth_cm", "soil", 10.0);
    cfg.garden.initial_vwc = num_or(soil, "initial_vwc", "soil", 0.2);
    cfg.garden.residual_vwc = num_or(soil, "residual_vwc", "soil", 0.05);
    cfg.garden.saturation_vwc = num_or(soil, "saturation_vwc", "soil", 0.5);
  }

  const json& types = require(j, "types", origin);
  if (!types.is_array() || types.empty())
    throw ConfigError("types: expected a non-empty array");
  for (std::size_t i = 0; i < types.size(); ++i)
    cfg.garden.types.push_back(parse_type(types[i], "types[" + std::to_string(i) + "]"));

  const json& placements = require(j, "placements", origin);
  if (!placements.is_array() || placements.empty())
    throw ConfigError("placements: expected a non-empty array");
  for (std::size_t i = 0; i < placements.size(); ++i) {
    const std::string where = "placements[" + std::to_string(i) + "]";
    Placement p;
    p.type_name = text(placements[i], "type", where);
    p.x = num(placements[i], "x", where);
    p.y = num(placements[i], "y", where);
    const bool known =
        std::any_of(cfg.garden.types.begin(), cfg.garden.types.end(),
                    [&](const PlantTypeSpec& t) { return t.name == p.type_name; });
    if (!known) throw ConfigError(where + ": unknown plant type '" + p.type_name + "'");
    cfg.garden.placements.push_back(std::move(p));
  }
  if (j.contains("mirror_placements")) {
    const json& m = j.at("mirror_placements");
    if (!m.is_boolean()) throw ConfigError("mirror_placements: expected a boolean");
    cfg.garden.mirror_placements = m.get<bool>();
  }
  cfg.garden.placement_jitter_cm = num_or(j, "placement_jitter_cm", origin, 0.0);

  if (j.contains("growth")) {
    const json& g = j.at("growth");
    cfg.growth.prune_delta = num_or(g, "prune_delta", "growth", cfg.growth.prune_delta);
    cfg.growth.decay_retain =
        num_or(g, "decay_retain", "growth", cfg.growth.decay_retain);
    cfg.growth.senescence_decay =
        num_or(g, "senescence_decay", "growth", cfg.growth.senescence_decay);
    cfg.growth.influence_radius =
        num_or(g, "influence_radius_cm", "growth", cfg.growth.influence_radius);
  }
  cfg.growth.validate();

  if (j.contains("policy")) {
    const json& p = j.at("policy");
    if (p.contains("irrigation"))
      cfg.policy.irrigation = parse_policy(text(p, "irrigation", "policy"));
    if (p.contains("discrete_levels")) {
      const json& levels = p.at("discrete_levels");
      if (!levels.is_array())
        throw ConfigError("policy.discrete_levels: expected an array");
      cfg.policy.discrete_levels.clear();
      for (const auto& v : levels) {
        if (!v.is_number())
          throw ConfigError("policy.discrete_levels: expected numbers");
        cfg.policy.discrete_levels.push_back(v.get<double>());
      }
    }
    cfg.policy.binary_dose_ml =
        num_or(p, "binary_dose_ml", "policy", cfg.policy.binary_dose_ml);
    cfg.policy.max_dose_ml = num_or(p, "max_dose_ml", "policy", cfg.policy.max_dose_ml);
    cfg.policy.prune_interval_days =
        integer_or(p, "prune_interval_days", "policy", cfg.policy.prune_interval_days);
    cfg.policy.prune_tolerance =
        num_or(p, "prune_tolerance", "policy", cfg.policy.prune_tolerance);
  }
  cfg.policy.validate();

  if (j.contains("closed_loop")) cfg.closed_loop = parse_closed_loop(j.at("closed_loop"));

  cfg.cycle_length = integer(j, "cycle_length", origin);
  const json& window = require(j, "window", origin);
  cfg.window_from = integer(window, "from", "window");
  cfg.window_to = integer(window, "to", "window");

  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      throw ConfigError("seed: expected a non-negative integer");
    cfg.seed = s.get<unsigned long long>();
  }
  cfg.garden.seed = cfg.seed;
  cfg.trials = integer_or(j, "trials", origin, 1);

  if (j.contains("stagger")) {
    const json& st = j.at("stagger");
    const json& fast = require(st, "fast_types", "stagger");
    if (!fast.is_array()) throw ConfigError("stagger.fast_types: expected an array");
    for (const auto& v : fast) {
      if (!v.is_string()) throw ConfigError("stagger.fast_types: expected strings");
      cfg.fast_types.insert(v.get<std::string>());
    }
    cfg.stagger_offset = integer_or(st, "offset", "stagger", 0);
  }

  cfg.validate();
  return cfg;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (cycle_length <= 0) throw ConfigError("cycle_length: must be > 0");
  if (window_from < 0 || window_to < window_from || window_to >= cycle_length)
    throw ConfigError("window: need 0 <= from <= to < cycle_length");
  if (trials < 1) throw ConfigError("trials: must be >= 1");
  if (stagger_offset < 0) throw ConfigError("stagger.offset: must be >= 0");
  for (const auto& name : fast_types) {
    const bool known =
        std::any_of(garden.types.begin(), garden.types.end(),
                    [&](const PlantTypeSpec& t) { return t.name == name; });
    if (!known)
      throw ConfigError("stagger.fast_types: unknown plant type '" + name + "'");
  }
  if (policy.irrigation == IrrigationPolicy::ClosedLoop && !closed_loop)
    throw ConfigError("policy.irrigation: closed_loop requires a closed_loop block");
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

ExperimentConfig parse_config_text(const std::string& content, const std::string& origin) {
  json j;
  try {
    j = json::parse(content);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": JSON parse error: " + e.what());
  }
  try {
    return parse_json(j, origin);
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

std::string config_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["name"] = cfg.name;
  j["bed"] = {{"width_cm", cfg.garden.bed_w}, {"height_cm", cfg.garden.bed_h}};
  j["soil"] = {{"cell_size_cm", cfg.garden.cell_size},
               {"depth_cm", cfg.garden.cell_depth},
               {"initial_vwc", cfg.garden.initial_vwc},
               {"residual_vwc", cfg.garden.residual_vwc},
               {"saturation_vwc", cfg.garden.saturation_vwc}};
  auto types = ordered_json::array();
  for (const auto& t : cfg.garden.types) {
    types.push_back({{"name", t.name},
                     {"germination_time", t.germination_time},
                     {"maturation_time", t.maturation_time},
                     {"max_radius", t.max_radius},
                     {"water_group", to_string(t.water_group)},
                     {"plant_day", t.plant_day},
                     {"reproductive_duration", t.reproductive_duration},
                     {"senescence_duration", t.senescence_duration},
                     {"germination_probability", t.germination_probability}});
  }
  j["types"] = std::move(types);
  auto placements = ordered_json::array();
  for (const auto& p : cfg.garden.placements)
    placements.push_back({{"type", p.type_name}, {"x", p.x}, {"y", p.y}});
  j["placements"] = std::move(placements);
  j["mirror_placements"] = cfg.garden.mirror_placements;
  j["placement_jitter_cm"] = cfg.garden.placement_jitter_cm;
  j["growth"] = {{"prune_delta", cfg.growth.prune_delta},
                 {"decay_retain", cfg.growth.decay_retain},
                 {"senescence_decay", cfg.growth.senescence_decay},
                 {"influence_radius_cm", cfg.growth.influence_radius}};
  j["policy"] = {{"irrigation", to_string(cfg.policy.irrigation)},
                 {"discrete_levels", cfg.policy.discrete_levels},
                 {"binary_dose_ml", cfg.policy.binary_dose_ml},
                 {"max_dose_ml", cfg.policy.max_dose_ml},
                 {"prune_interval_days", cfg.policy.prune_interval_days},
                 {"prune_tolerance", cfg.policy.prune_tolerance}};
  if (cfg.closed_loop) {
    auto rules = ordered_json::array();
    for (const auto& r : cfg.closed_loop->rules)
      rules.push_back({{"threshold_vwc", r.threshold_vwc},
                       {"duration_s", r.duration_s},
                       {"min_interval_h", r.min_interval_h}});
    auto sensors = ordered_json::array();
    for (const auto& s : cfg.closed_loop->sensors)
      sensors.push_back(
          {{"id", s.id}, {"x", s.x}, {"y", s.y}, {"cadence_min", s.cadence_min}});
    auto emitters = ordered_json::array();
    for (const auto& e : cfg.closed_loop->emitters)
      emitters.push_back({{"plant_id", e.plant_id},
                          {"group", to_string(e.group)},
                          {"turns", e.turns}});
    j["closed_loop"] = {{"rules", std::move(rules)},
                        {"sensors", std::move(sensors)},
                        {"emitters", std::move(emitters)},
                        {"sensor_noise_sigma", cfg.closed_loop->sensor_noise_sigma}};
  }
  j["cycle_length"] = cfg.cycle_length;
  j["window"] = {{"from", cfg.window_from}, {"to", cfg.window_to}};
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  if (!cfg.fast_types.empty() || cfg.stagger_offset > 0) {
    j["stagger"] = {{"fast_types", cfg.fast_types}, {"offset", cfg.stagger_offset}};
  }
  return j.dump(2);
}

}  // namespace polysim
