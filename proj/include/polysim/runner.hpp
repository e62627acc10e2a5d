#pragma once

#include <string>
#include <vector>

#include "polysim/config.hpp"
#include "polysim/engine.hpp"
#include "polysim/metrics.hpp"

namespace polysim {

/// Everything a finished run produces, before any files are written.
struct RunResult {
  std::vector<DayRecord> records;
  std::vector<Event> events;
  GardenState final_state;
  WindowSummary window;
  double water_total_ml = 0.0;
  double max_step_rel_error = 0.0;
  // Present only for closed-loop runs.
  std::vector<SensorReading> readings;
  std::vector<FiringRecord> firings;
};

/// Execute one seeded cycle. The seed overrides the config's seed when
/// nonnegative. Pure in-memory; no files.
RunResult run_experiment(const ExperimentConfig& config, long long seed_override = -1);

/// Execute and write timeseries.csv, events.csv, summary.json (and the
/// sensor/firing CSVs for closed-loop runs) into out_dir. With trials > 1,
/// writes per-trial subdirectories trial_00.. plus aggregate.json.
void run_to_directory(const ExperimentConfig& config, const std::string& out_dir,
                      long long seed_override, bool quiet);

struct ComparisonRow {
  std::string policy;
  double mean_coverage = 0.0;
  double mean_diversity = 0.0;
  double water_total_ml = 0.0;
  double water_pct_of_first = 100.0;
};

/// Run each policy on the same config with matched seeds. Unknown policy
/// names throw ConfigError. Requires at least two policies.
std::vector<ComparisonRow> compare_policies(const ExperimentConfig& config,
                                            const std::vector<std::string>& policies);

std::string comparison_table(const std::vector<ComparisonRow>& rows);

struct StaggerTrial {
  unsigned long long seed = 0;
  double normal_day50_coverage = 0.0;
  double staggered_day50_coverage = 0.0;
  double normal_diversity = 0.0;     // window mean
  double staggered_diversity = 0.0;  // window mean
};

struct StaggerReport {
  std::vector<StaggerTrial> trials;
  int headline_day = 50;
  double max_step_rel_error = 0.0;  // worst audit across every arm and trial
  double mean_normal_coverage = 0.0;
  double mean_staggered_coverage = 0.0;
  double mean_normal_diversity = 0.0;
  double mean_staggered_diversity = 0.0;
  int staggered_wins = 0;  // trials where staggered day-50 coverage is higher
};

/// Matched-seed arms: normal (offset 0) vs staggered (given offset applied
/// to the config's fast types). Seeds run seed+0..seed+trials-1.
StaggerReport stagger_experiment(const ExperimentConfig& config, int offset, int trials);

std::string stagger_table(const StaggerReport& report);

}  // namespace polysim
