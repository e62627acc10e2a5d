#include "polysim/closed_loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polysim/engine.hpp"
#include "polysim/errors.hpp"
#include "polysim/format.hpp"

namespace polysim {

const std::map<int, double>& emitter_flow_table() {
  static const std::map<int, double> table = {{6, 191.0}, {7, 284.0}, {8, 383.0}};
  return table;
}

double duration_to_volume_ml(const EmitterSpec& emitter, double duration_s) {
  if (duration_s < 0.0)
    throw DomainError("duration_to_volume: negative duration");
  const auto& table = emitter_flow_table();
  const auto it = table.find(emitter.turns);
  if (it == table.end())
    throw ConfigError("emitter for plant " + std::to_string(emitter.plant_id) +
                      ": turns " + std::to_string(emitter.turns) +
                      " not in the flow table");
  return it->second * duration_s / 60.0;
}

ControllerState ControllerState::make(std::vector<IrrigationRule> rules,
                                      std::vector<SensorSpec> sensors,
                                      std::vector<EmitterSpec> emitters,
                                      double noise_sigma) {
  if (rules.empty()) throw ConfigError("closed_loop: rules must be non-empty");
  for (const auto& r : rules) {
    if (r.threshold_vwc <= 0.0 || r.threshold_vwc >= 1.0)
      throw ConfigError("closed_loop: rule threshold must be in (0, 1)");
    if (r.duration_s <= 0) throw ConfigError("closed_loop: rule duration must be > 0");
    if (r.min_interval_h <= 0.0)
      throw ConfigError("closed_loop: rule min_interval must be > 0");
  }
  if (sensors.empty()) throw ConfigError("closed_loop: sensors must be non-empty");
  for (const auto& s : sensors) {
    if (s.id.empty()) throw ConfigError("closed_loop: sensor id must be non-empty");
    if (s.cadence_min <= 0)
      throw ConfigError("closed_loop: sensor '" + s.id + "': cadence must be > 0");
  }
  for (const auto& e : emitters)
    if (!emitter_flow_table().count(e.turns))
      throw ConfigError("emitter for plant " + std::to_string(e.plant_id) +
                        ": turns " + std::to_string(e.turns) +
                        " not in the flow table");
  if (noise_sigma < 0.0)
    throw ConfigError("closed_loop: sensor_noise_sigma must be >= 0");

  std::sort(rules.begin(), rules.end(),
            [](const IrrigationRule& a, const IrrigationRule& b) {
              return a.threshold_vwc < b.threshold_vwc;
            });
  ControllerState c;
  c.rules = std::move(rules);
  c.sensors = std::move(sensors);
  c.emitters = std::move(emitters);
  c.sensor_noise_sigma = noise_sigma;
  c.last_fired_min.assign(c.rules.size(), -std::numeric_limits<double>::infinity());
  return c;
}

std::vector<SensorReading> sample_sensors(GardenState& state,
                                          const ControllerState& controller,
                                          int day, int minute) {
  std::vector<SensorReading> readings;
  readings.reserve(controller.sensors.size());
  for (const auto& sensor : controller.sensors) {
    if (sensor.x < 0.0 || sensor.x > state.bed_w || sensor.y < 0.0 ||
        sensor.y > state.bed_h)
      throw ConfigError("sensor '" + sensor.id + "': position outside bed");
    const int ix = state.soil.cell_of_x(sensor.x);
    const int iy = state.soil.cell_of_y(sensor.y);
    double vwc = state.soil.at(ix, iy);
    if (controller.sensor_noise_sigma > 0.0)
      vwc = std::clamp(vwc + state.rng.gauss(0.0, controller.sensor_noise_sigma),
                       0.0, 1.0);
    SensorReading r;
    r.sensor_id = sensor.id;
    r.day = day;
    r.minute = minute;
    r.vwc = vwc;
    readings.push_back(std::move(r));
  }
  return readings;
}

std::optional<int> evaluate_rules(const std::vector<IrrigationRule>& rules,
                                  const std::vector<double>& last_fired_min,
                                  double mean_vwc, double now_min) {
  if (rules.empty()) throw ConfigError("evaluate_rules: empty rule list");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (mean_vwc >= rules[i].threshold_vwc) continue;
    // Interval-blocked rules are skipped; a wetter threshold may still fire.
    if (now_min - last_fired_min[i] < rules[i].min_interval_h * 60.0) continue;
    return static_cast<int>(i);
  }
  return std::nullopt;
}

void controller_tick(GardenState& state, const GrowthParams& params,
                     ControllerState& controller, int day, int minute) {
  std::vector<SensorReading> readings = sample_sensors(state, controller, day, minute);
  double mean = 0.0;
  for (const auto& r : readings) mean += r.vwc;
  mean /= static_cast<double>(readings.size());
  for (auto& r : readings) controller.readings.push_back(std::move(r));

  const double now_min = day * 1440.0 + minute;
  const std::optional<int> fired =
      evaluate_rules(controller.rules, controller.last_fired_min, mean, now_min);
  if (!fired) return;

  const IrrigationRule& rule = controller.rules[static_cast<std::size_t>(*fired)];
  double volume = 0.0;
  // One valve: every emitter delivers for the full duration.
  for (const auto& emitter : controller.emitters) {
    const double v = duration_to_volume_ml(emitter, rule.duration_s);
    const auto plant = std::find_if(
        state.plants.begin(), state.plants.end(),
        [&](const PlantInstance& p) { return p.id == emitter.plant_id; });
    if (plant == state.plants.end())
      throw ConfigError("emitter references unknown plant id " +
                        std::to_string(emitter.plant_id));
    apply_irrigation(state, params, plant->x, plant->y, v);
    state.events.push_back({day, minute, "irrigation", emitter.plant_id, v});
    volume += v;
  }
  controller.last_fired_min[static_cast<std::size_t>(*fired)] = now_min;
  controller.firings.push_back({day, minute, *fired, rule.duration_s, volume});
}

std::string readings_csv(const std::vector<SensorReading>& readings) {
  std::string out = "day,minute,sensor_id,vwc\n";
  for (const auto& r : readings) {
    out += std::to_string(r.day);
    out += ',';
    out += std::to_string(r.minute);
    out += ',';
    out += r.sensor_id;
    out += ',';
    out += fixed(r.vwc);
    out += '\n';
  }
  return out;
}

std::string firings_csv(const std::vector<FiringRecord>& firings) {
  std::string out = "day,minute,rule_index,duration_s,volume_mL\n";
  for (const auto& f : firings) {
    out += std::to_string(f.day);
    out += ',';
    out += std::to_string(f.minute);
    out += ',';
    out += std::to_string(f.rule_index);
    out += ',';
    out += std::to_string(f.duration_s);
    out += ',';
    out += fixed(f.volume_ml);
    out += '\n';
  }
  return out;
}

}  // namespace polysim
