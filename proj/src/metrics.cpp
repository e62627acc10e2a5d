#include "polysim/metrics.hpp"

#include <cmath>
#include <sstream>

#include "polysim/errors.hpp"
#include "polysim/format.hpp"

namespace polysim {

double diversity_index(const std::vector<double>& weights) {
  const std::size_t k = weights.size();
  if (k <= 1) return 0.0;
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw DomainError("diversity_index: negative weight");
    total += w;
  }
  if (total <= 0.0) return 0.0;
  double entropy = 0.0;
  for (double w : weights) {
    if (w <= 0.0) continue;  // 0 ln 0 = 0
    const double p = w / total;
    entropy -= p * std::log(p);
  }
  return entropy / std::log(static_cast<double>(k));
}

std::vector<double> coverage_weights(const std::vector<double>& per_type_coverage,
                                     const std::vector<PlantTypeSpec>& types) {
  if (per_type_coverage.size() != types.size())
    throw DomainError("coverage_weights: coverage/type size mismatch");
  double mean_r = 0.0;
  for (const auto& t : types) mean_r += t.max_radius;
  mean_r /= static_cast<double>(types.size());
  std::vector<double> weights(types.size());
  for (std::size_t k = 0; k < types.size(); ++k) {
    const double ratio = mean_r / types[k].max_radius;
    weights[k] = per_type_coverage[k] * ratio * ratio;
  }
  return weights;
}

WindowSummary summarize(const std::vector<DayRecord>& records, int from, int to) {
  WindowSummary s;
  for (const auto& rec : records) {
    if (rec.day < from || rec.day > to) continue;
    s.mean_coverage += rec.coverage;
    s.mean_diversity += rec.diversity;
    s.water_total_ml = rec.water_total_ml;
    s.days += 1;
  }
  if (s.days == 0)
    throw DomainError("summarize: window [" + std::to_string(from) + ", " +
                      std::to_string(to) + "] contains no records");
  s.mean_coverage /= s.days;
  s.mean_diversity /= s.days;
  return s;
}

double max_water_bound_ml(int n_plants, int days) {
  if (n_plants < 0 || days < 0)
    throw DomainError("max_water_bound: counts must be >= 0");
  return static_cast<double>(n_plants) * 200.0 * static_cast<double>(days);
}

std::string timeseries_csv(const std::vector<DayRecord>& records,
                           const std::vector<PlantTypeSpec>& types) {
  std::string out = "day,coverage,diversity,water_day_mL,water_total_mL";
  for (const auto& t : types) {
    out += ',';
    out += t.name;
  }
  out += '\n';
  for (const auto& rec : records) {
    out += std::to_string(rec.day);
    out += ',';
    out += fixed(rec.coverage);
    out += ',';
    out += fixed(rec.diversity);
    out += ',';
    out += fixed(rec.water_day_ml);
    out += ',';
    out += fixed(rec.water_total_ml);
    for (double c : rec.per_type_coverage) {
      out += ',';
      out += fixed(c);
    }
    out += '\n';
  }
  return out;
}

std::string events_csv(const std::vector<Event>& events) {
  std::string out = "day,tick,event_type,plant_id,value\n";
  for (const auto& e : events) {
    out += std::to_string(e.day);
    out += ',';
    out += std::to_string(e.tick);
    out += ',';
    out += e.type;
    out += ',';
    out += std::to_string(e.plant_id);
    out += ',';
    out += fixed(e.value);
    out += '\n';
  }
  return out;
}

}  // namespace polysim
