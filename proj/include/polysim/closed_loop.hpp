#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polysim/types.hpp"

namespace polysim {

struct SensorSpec {
  std::string id;
  double x = 0.0;  // cm
  double y = 0.0;  // cm
  int cadence_min = 30;
};

struct SensorReading {
  std::string sensor_id;
  int day = 0;
  int minute = 0;
  double vwc = 0.0;
  // Placeholders for channels the simulation does not model.
  double temperature_c = 20.0;
  double humidity_pct = 50.0;
};

struct IrrigationRule {
  double threshold_vwc = 0.0;
  int duration_s = 0;
  double min_interval_h = 0.0;
};

struct EmitterSpec {
  int plant_id = 0;
  WaterGroup group = WaterGroup::Group1;
  int turns = 6;
};

/// Valve turns to mL per 60 s, from bench calibration.
const std::map<int, double>& emitter_flow_table();

/// volume = flow(turns) * duration / 60. Unknown turns throw ConfigError;
/// negative duration throws DomainError.
double duration_to_volume_ml(const EmitterSpec& emitter, double duration_s);

struct FiringRecord {
  int day = 0;
  int minute = 0;
  int rule_index = 0;
  int duration_s = 0;
  double volume_ml = 0.0;
};

struct ControllerState {
  std::vector<IrrigationRule> rules;        // sorted ascending by threshold
  std::vector<SensorSpec> sensors;
  std::vector<EmitterSpec> emitters;
  double sensor_noise_sigma = 0.0;
  std::vector<double> last_fired_min;       // per rule, minutes since day 0; -inf if never
  std::vector<SensorReading> readings;      // full log
  std::vector<FiringRecord> firings;        // full log

  /// Validates, sorts rules, and initializes last_fired. Throws ConfigError
  /// on empty rules, bad thresholds, unknown turns, or sensors outside the
  /// bed (checked against state in controller_tick setup).
  static ControllerState make(std::vector<IrrigationRule> rules,
                              std::vector<SensorSpec> sensors,
                              std::vector<EmitterSpec> emitters,
                              double noise_sigma);
};

/// One reading per sensor: the VWC of the cell containing the sensor, plus
/// optional Gaussian noise drawn from the garden's generator. Sensors
/// outside the bed throw ConfigError.
std::vector<SensorReading> sample_sensors(GardenState& state,
                                          const ControllerState& controller,
                                          int day, int minute);

/// Mean of the latest reading per sensor, scanned against rules in
/// ascending-threshold order. The first rule whose threshold exceeds the
/// mean and whose min_interval has elapsed fires. Interval-blocked rules
/// are skipped, not terminal. Empty rules throw ConfigError.
std::optional<int> evaluate_rules(const std::vector<IrrigationRule>& rules,
                                  const std::vector<double>& last_fired_min,
                                  double mean_vwc, double now_min);

/// One controller step: sample, evaluate, and when a rule fires deliver
/// duration_to_volume to every emitter at its plant's position (one valve
/// drives all emitters). Updates last_fired and the logs.
void controller_tick(GardenState& state, const GrowthParams& params,
                     ControllerState& controller, int day, int minute);

/// CSV logs: `day,minute,sensor_id,vwc` and
/// `day,minute,rule_index,duration_s,volume_mL`.
std::string readings_csv(const std::vector<SensorReading>& readings);
std::string firings_csv(const std::vector<FiringRecord>& firings);

}  // namespace polysim
