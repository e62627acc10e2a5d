// Python bindings for the simulator's main operations: seeded runs, policy
// comparison, staggering studies, and the standalone numeric helpers.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polysim/closed_loop.hpp"
#include "polysim/config.hpp"
#include "polysim/errors.hpp"
#include "polysim/metrics.hpp"
#include "polysim/policies.hpp"
#include "polysim/runner.hpp"

namespace py = pybind11;
using namespace polysim;

namespace {

py::dict run_to_dict(const ExperimentConfig& cfg, const RunResult& r) {
  py::dict d;
  d["name"] = cfg.name;
  d["policy"] = to_string(cfg.policy.irrigation);
  d["seed"] = cfg.seed;
  d["cycle_length"] = cfg.cycle_length;
  d["mean_coverage"] = r.window.mean_coverage;
  d["mean_diversity"] = r.window.mean_diversity;
  d["water_total_ml"] = r.water_total_ml;
  d["max_step_rel_error"] = r.max_step_rel_error;
  d["timeseries_csv"] = timeseries_csv(r.records, cfg.garden.types);
  d["events_csv"] = events_csv(r.events);
  if (cfg.policy.irrigation == IrrigationPolicy::ClosedLoop) {
    d["readings_csv"] = readings_csv(r.readings);
    d["firings_csv"] = firings_csv(r.firings);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_polysim, m) {
  m.doc() = "Deterministic polyculture garden simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_RuntimeError);

  m.def(
      "run_file",
      [](const std::string& path, long long seed) {
        const ExperimentConfig cfg = parse_config(path);
        return run_to_dict(cfg, run_experiment(cfg, seed));
      },
      py::arg("path"), py::arg("seed") = -1,
      "Run one seeded cycle from a config file; seed >= 0 overrides the "
      "config's seed.");

  m.def(
      "run_text",
      [](const std::string& text, long long seed) {
        const ExperimentConfig cfg = parse_config_text(text, "inline");
        return run_to_dict(cfg, run_experiment(cfg, seed));
      },
      py::arg("text"), py::arg("seed") = -1,
      "Run one seeded cycle from a JSON config string.");

  m.def(
      "compare",
      [](const std::string& path, const std::vector<std::string>& policies) {
        const ExperimentConfig cfg = parse_config(path);
        py::list rows;
        for (const ComparisonRow& row : compare_policies(cfg, policies)) {
          py::dict d;
          d["policy"] = row.policy;
          d["mean_coverage"] = row.mean_coverage;
          d["mean_diversity"] = row.mean_diversity;
          d["water_total_ml"] = row.water_total_ml;
          d["water_pct_of_first"] = row.water_pct_of_first;
          rows.append(d);
        }
        return rows;
      },
      py::arg("path"), py::arg("policies"),
      "Run each policy on the same bed with matched seeds.");

  m.def(
      "stagger",
      [](const std::string& path, int offset, int trials) {
        const ExperimentConfig cfg = parse_config(path);
        const StaggerReport r = stagger_experiment(cfg, offset, trials);
        py::list rows;
        for (const StaggerTrial& t : r.trials) {
          py::dict d;
          d["seed"] = t.seed;
          d["normal_coverage"] = t.normal_day50_coverage;
          d["staggered_coverage"] = t.staggered_day50_coverage;
          d["normal_diversity"] = t.normal_diversity;
          d["staggered_diversity"] = t.staggered_diversity;
          rows.append(d);
        }
        py::dict d;
        d["headline_day"] = r.headline_day;
        d["staggered_wins"] = r.staggered_wins;
        d["mean_normal_coverage"] = r.mean_normal_coverage;
        d["mean_staggered_coverage"] = r.mean_staggered_coverage;
        d["mean_normal_diversity"] = r.mean_normal_diversity;
        d["mean_staggered_diversity"] = r.mean_staggered_diversity;
        d["trials"] = rows;
        return d;
      },
      py::arg("path"), py::arg("offset"), py::arg("trials"),
      "Matched-seed normal vs staggered planting arms.");

  m.def("config_echo",
        [](const std::string& path) { return config_json(parse_config(path)); },
        py::arg("path"), "Parse a config file and echo the resolved settings.");

  m.def("diversity_index", &diversity_index, py::arg("weights"),
        "Normalized entropy of a weight vector, in [0, 1].");

  m.def("quantize", &quantize, py::arg("amount"), py::arg("levels"),
        "Smallest level >= amount, saturating at the top level.");

  m.def(
      "duration_to_volume_ml",
      [](int turns, double duration_s) {
        EmitterSpec e;
        e.turns = turns;
        return duration_to_volume_ml(e, duration_s);
      },
      py::arg("turns"), py::arg("duration_s"),
      "Emitter volume for a valve opening, from the calibration table.");

  m.def("max_water_bound_ml", &max_water_bound_ml, py::arg("n_plants"),
        py::arg("days"),
        "Ceiling on daily-dose policy usage: every plant at the full dose "
        "every day.");
}
