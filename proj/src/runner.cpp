#include "polysim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "polysim/errors.hpp"
#include "polysim/format.hpp"
#include "polysim/garden.hpp"
#include "polysim/policies.hpp"

namespace polysim {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  out << content;
}

/// Daily per-plant dosing for the four open-loop policies.
void daily_irrigation(GardenState& state, const GrowthParams& params,
                      const PolicyBundle& policy) {
  for (const auto& plant : state.plants) {
    const double dose = plant_dose_ml(state, params, plant, policy);
    if (dose <= 0.0) continue;
    apply_irrigation(state, params, plant.x, plant.y, dose);
    state.events.push_back({state.day, 0, "irrigation", plant.id, dose});
  }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, long long seed_override) {
  GardenConfig garden_cfg = config.garden;
  if (seed_override >= 0)
    garden_cfg.seed = static_cast<unsigned long long>(seed_override);
  GardenState state = new_garden(garden_cfg);

  const bool closed = config.policy.irrigation == IrrigationPolicy::ClosedLoop;
  ControllerState controller;
  if (closed) {
    if (!config.closed_loop)
      throw ConfigError("closed_loop policy requires a closed_loop config block");
    controller = ControllerState::make(
        config.closed_loop->rules, config.closed_loop->sensors,
        config.closed_loop->emitters, config.closed_loop->sensor_noise_sigma);
  }

  StepPlan plan;
  plan.prune_delta = config.growth.prune_delta;
  if (closed) {
    // 48 half-hour ticks share the day's evaporation so the daily pass
    // becomes a no-op; retention composes back to decay_retain.
    const double tick_retain = std::pow(config.growth.decay_retain, 1.0 / 48.0);
    plan.evaporate_retain_override = 1.0;
    plan.irrigate = [&controller, &config, tick_retain](GardenState& s) {
      for (int minute = 0; minute < 1440; minute += 30) {
        controller_tick(s, config.growth, controller, s.day, minute);
        evaporate(s, tick_retain);
      }
    };
  } else {
    plan.irrigate = [&config](GardenState& s) {
      daily_irrigation(s, config.growth, config.policy);
    };
  }
  if (config.policy.prune_interval_days > 0) {
    plan.select_prune_targets = [&config](GardenState& s) {
      if (s.day == 0 || s.day % config.policy.prune_interval_days != 0)
        return std::vector<int>{};
      return prune_selection(s, config.policy.prune_tolerance);
    };
  }

  RunResult result;
  result.records.reserve(static_cast<std::size_t>(config.cycle_length));
  for (int day = 0; day < config.cycle_length; ++day)
    result.records.push_back(step_day(state, config.growth, plan));

  result.window = summarize(result.records, config.window_from, config.window_to);
  result.water_total_ml = state.water_total_ml;
  result.max_step_rel_error = state.max_step_rel_error;
  result.events = state.events;
  if (closed) {
    result.readings = std::move(controller.readings);
    result.firings = std::move(controller.firings);
  }
  result.final_state = std::move(state);
  return result;
}

namespace {

nlohmann::ordered_json summary_json(const ExperimentConfig& config,
                                    unsigned long long seed, const RunResult& result) {
  nlohmann::ordered_json j;
  j["name"] = config.name;
  j["policy"] = to_string(config.policy.irrigation);
  j["seed"] = seed;
  j["cycle_length"] = config.cycle_length;
  j["window"] = {{"from", config.window_from}, {"to", config.window_to}};
  j["mean_coverage"] = result.window.mean_coverage;
  j["mean_diversity"] = result.window.mean_diversity;
  j["water_total_mL"] = result.water_total_ml;
  j["max_step_rel_error"] = result.max_step_rel_error;
  j["config"] = nlohmann::ordered_json::parse(config_json(config));
  return j;
}

void write_run(const fs::path& dir, const ExperimentConfig& config,
               unsigned long long seed, const RunResult& result) {
  fs::create_directories(dir);
  write_file(dir / "timeseries.csv",
             timeseries_csv(result.records, config.garden.types));
  write_file(dir / "events.csv", events_csv(result.events));
  write_file(dir / "summary.json", summary_json(config, seed, result).dump(2) + "\n");
  if (config.policy.irrigation == IrrigationPolicy::ClosedLoop) {
    write_file(dir / "readings.csv", readings_csv(result.readings));
    write_file(dir / "firings.csv", firings_csv(result.firings));
  }
}

}  // namespace

void run_to_directory(const ExperimentConfig& config, const std::string& out_dir,
                      long long seed_override, bool quiet) {
  const unsigned long long base_seed =
      seed_override >= 0 ? static_cast<unsigned long long>(seed_override)
                         : config.seed;
  const fs::path root(out_dir);
  if (config.trials <= 1) {
    RunResult result = run_experiment(config, static_cast<long long>(base_seed));
    write_run(root, config, base_seed, result);
    if (!quiet)
      std::cout << config.name << ": seed " << base_seed << ", water "
                << fixed(result.water_total_ml / 1000.0, 1) << " L, coverage "
                << fixed(result.window.mean_coverage, 3) << ", diversity "
                << fixed(result.window.mean_diversity, 3) << "\n";
    return;
  }

  nlohmann::ordered_json aggregate;
  aggregate["name"] = config.name;
  aggregate["trials"] = config.trials;
  auto per_trial = nlohmann::ordered_json::array();
  double mean_cov = 0.0, mean_div = 0.0, mean_water = 0.0;
  for (int t = 0; t < config.trials; ++t) {
    const unsigned long long seed = base_seed + static_cast<unsigned long long>(t);
    RunResult result = run_experiment(config, static_cast<long long>(seed));
    char sub[32];
    std::snprintf(sub, sizeof(sub), "trial_%02d", t);
    write_run(root / sub, config, seed, result);
    per_trial.push_back({{"trial", t},
                         {"seed", seed},
                         {"mean_coverage", result.window.mean_coverage},
                         {"mean_diversity", result.window.mean_diversity},
                         {"water_total_mL", result.water_total_ml}});
    mean_cov += result.window.mean_coverage;
    mean_div += result.window.mean_diversity;
    mean_water += result.water_total_ml;
    if (!quiet)
      std::cout << config.name << " trial " << t << ": seed " << seed << ", water "
                << fixed(result.water_total_ml / 1000.0, 1) << " L\n";
  }
  aggregate["per_trial"] = std::move(per_trial);
  aggregate["mean_coverage"] = mean_cov / config.trials;
  aggregate["mean_diversity"] = mean_div / config.trials;
  aggregate["mean_water_total_mL"] = mean_water / config.trials;
  fs::create_directories(root);
  write_file(root / "aggregate.json", aggregate.dump(2) + "\n");
}

std::vector<ComparisonRow> compare_policies(const ExperimentConfig& config,
                                            const std::vector<std::string>& policies) {
  if (policies.size() < 2)
    throw ConfigError("compare: need at least two policy names");
  std::vector<ComparisonRow> rows;
  for (const auto& name : policies) {
    ExperimentConfig arm = config;
    arm.policy.irrigation = parse_policy(name);
    arm.validate();
    RunResult result = run_experiment(arm, static_cast<long long>(config.seed));
    ComparisonRow row;
    row.policy = name;
    row.mean_coverage = result.window.mean_coverage;
    row.mean_diversity = result.window.mean_diversity;
    row.water_total_ml = result.water_total_ml;
    row.water_pct_of_first =
        rows.empty() ? 100.0 : 100.0 * result.water_total_ml / rows.front().water_total_ml;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string comparison_table(const std::vector<ComparisonRow>& rows) {
  std::string out =
      "policy        mean_coverage  mean_diversity  water_total_mL  water_vs_first\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-13s %13s %15s %15s %14s%%\n",
                  r.policy.c_str(), fixed(r.mean_coverage, 4).c_str(),
                  fixed(r.mean_diversity, 4).c_str(),
                  fixed(r.water_total_ml, 1).c_str(),
                  fixed(r.water_pct_of_first, 1).c_str());
    out += line;
  }
  return out;
}

StaggerReport stagger_experiment(const ExperimentConfig& config, int offset,
                                 int trials) {
  if (trials < 1) throw ConfigError("stagger: trials must be >= 1");
  if (config.fast_types.empty())
    throw ConfigError("stagger: config must list stagger.fast_types");

  ExperimentConfig normal = config;
  normal.garden.types = staggered_schedule(config.garden.types, config.fast_types, 0);
  ExperimentConfig staggered = config;
  staggered.garden.types =
      staggered_schedule(config.garden.types, config.fast_types, offset);

  StaggerReport report;
  report.headline_day = std::min(50, config.cycle_length - 1);
  for (int t = 0; t < trials; ++t) {
    const unsigned long long seed = config.seed + static_cast<unsigned long long>(t);
    RunResult rn = run_experiment(normal, static_cast<long long>(seed));
    RunResult rs = run_experiment(staggered, static_cast<long long>(seed));
    StaggerTrial trial;
    trial.seed = seed;
    trial.normal_day50_coverage =
        rn.records[static_cast<std::size_t>(report.headline_day)].coverage;
    trial.staggered_day50_coverage =
        rs.records[static_cast<std::size_t>(report.headline_day)].coverage;
    trial.normal_diversity = rn.window.mean_diversity;
    trial.staggered_diversity = rs.window.mean_diversity;
    report.max_step_rel_error = std::max(
        {report.max_step_rel_error, rn.max_step_rel_error, rs.max_step_rel_error});
    report.mean_normal_coverage += trial.normal_day50_coverage;
    report.mean_staggered_coverage += trial.staggered_day50_coverage;
    report.mean_normal_diversity += trial.normal_diversity;
    report.mean_staggered_diversity += trial.staggered_diversity;
    if (trial.staggered_day50_coverage > trial.normal_day50_coverage)
      report.staggered_wins += 1;
    report.trials.push_back(trial);
  }
  report.mean_normal_coverage /= trials;
  report.mean_staggered_coverage /= trials;
  report.mean_normal_diversity /= trials;
  report.mean_staggered_diversity /= trials;
  return report;
}

std::string stagger_table(const StaggerReport& report) {
  std::string out = "trial  seed  normal_day" + std::to_string(report.headline_day) +
                    "  staggered_day" + std::to_string(report.headline_day) +
                    "  normal_div  staggered_div\n";
  for (std::size_t t = 0; t < report.trials.size(); ++t) {
    const StaggerTrial& tr = report.trials[t];
    char line[160];
    std::snprintf(line, sizeof(line), "%5zu %5llu %15s %17s %11s %14s\n", t,
                  static_cast<unsigned long long>(tr.seed),
                  fixed(tr.normal_day50_coverage, 4).c_str(),
                  fixed(tr.staggered_day50_coverage, 4).c_str(),
                  fixed(tr.normal_diversity, 4).c_str(),
                  fixed(tr.staggered_diversity, 4).c_str());
    out += line;
  }
  char tail[200];
  std::snprintf(tail, sizeof(tail),
                "mean coverage: normal %s, staggered %s (wins %d/%zu); mean "
                "diversity: normal %s, staggered %s\n",
                fixed(report.mean_normal_coverage, 4).c_str(),
                fixed(report.mean_staggered_coverage, 4).c_str(),
                report.staggered_wins, report.trials.size(),
                fixed(report.mean_normal_diversity, 4).c_str(),
                fixed(report.mean_staggered_diversity, 4).c_str());
  out += tail;
  return out;
}

}  // namespace polysim
