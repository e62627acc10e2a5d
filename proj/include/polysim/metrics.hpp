#pragma once

#include <string>
#include <vector>

#include "polysim/types.hpp"

namespace polysim {

/// End-of-day metrics snapshot. Coverage and diversity are stored rounded
/// to 6 decimals (the CSV precision) so summaries recompute exactly from
/// the file; water totals stay exact.
struct DayRecord {
  int day = 0;
  double coverage = 0.0;   // fraction of bed cells under any canopy
  double diversity = 0.0;  // normalized entropy of weighted type coverage, [0, 1]
  std::vector<double> per_type_coverage;  // by type index
  double water_day_ml = 0.0;
  double water_total_ml = 0.0;
};

/// Normalized diversity of a weight vector: p = v / sum(v),
/// d = -sum(p ln p) / ln(k) with 0 ln 0 = 0. Returns 0 when k <= 1 or
/// all weights are 0. Negative weights throw DomainError.
double diversity_index(const std::vector<double>& weights);

/// Weighted coverage for the diversity index: v_k = c_k * (mean_R / R_k)^2,
/// where c_k is type k's assigned-cell fraction and mean_R the mean of all
/// configured max radii. Size equals the configured type count.
std::vector<double> coverage_weights(const std::vector<double>& per_type_coverage,
                                     const std::vector<PlantTypeSpec>& types);

/// Windowed means over records with from <= day <= to.
struct WindowSummary {
  double mean_coverage = 0.0;
  double mean_diversity = 0.0;
  double water_total_ml = 0.0;  // water_total at the last day of the window
  int days = 0;
};

/// Inclusive window bounds; a window containing no records throws DomainError.
WindowSummary summarize(const std::vector<DayRecord>& records, int from, int to);

/// Ceiling on total usage for daily-dose policies: every plant watered the
/// full 200 mL every day of the cycle.
double max_water_bound_ml(int n_plants, int days);

/// Header: day,coverage,diversity,water_day_mL,water_total_mL,<type names>.
/// All floats fixed 6-decimal, locale independent, '\n' line ends.
std::string timeseries_csv(const std::vector<DayRecord>& records,
                           const std::vector<PlantTypeSpec>& types);

std::string events_csv(const std::vector<Event>& events);

}  // namespace polysim
