#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "polysim/errors.hpp"
#include "polysim/format.hpp"
#include "polysim/metrics.hpp"
#include "polysim/rng.hpp"

using namespace polysim;

namespace {

std::vector<PlantTypeSpec> radii_to_types(const std::vector<double>& radii) {
  std::vector<PlantTypeSpec> types;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    PlantTypeSpec t;
    t.name = "t" + std::to_string(i);
    t.germination_time = 1;
    t.maturation_time = 10;
    t.max_radius = radii[i];
    types.push_back(std::move(t));
  }
  return types;
}

}  // namespace

TEST_CASE("diversity hits the pinned reference points") {
  CHECK(diversity_index({1.0, 0.0, 0.0}) == 0.0);
  CHECK(diversity_index({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(diversity_index({1.0, 1.0, 0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(diversity_index({0.5, 0.3, 0.2}) ==
        doctest::Approx(0.9372305632161295).epsilon(1e-12));
  SUBCASE("degenerate inputs") {
    CHECK(diversity_index({}) == 0.0);
    CHECK(diversity_index({0.7}) == 0.0);
    CHECK(diversity_index({0.0, 0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(diversity_index({0.5, -0.1}), DomainError);
  }
}

TEST_CASE("diversity is permutation and scale invariant") {
  Rng rng(314);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(rng.uniform(0.0, 7.0));
    std::vector<double> v(k);
    for (auto& x : v) x = rng.u01() < 0.15 ? 0.0 : rng.uniform(0.0, 10.0);
    const double d = diversity_index(v);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0 + 1e-12);

    std::vector<double> shuffled = v;
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1],
                shuffled[static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(i)))]);
    CHECK(diversity_index(shuffled) == doctest::Approx(d).epsilon(1e-9));

    const double c = rng.uniform(0.001, 1000.0);
    std::vector<double> scaled = v;
    for (auto& x : scaled) x *= c;
    CHECK(diversity_index(scaled) == doctest::Approx(d).epsilon(1e-9));
  }
}

TEST_CASE("coverage weights equalize species by their maximum size") {
  const auto types = radii_to_types({20.0, 30.0, 40.0, 10.0});  // mean 25
  const auto w = coverage_weights({0.1, 0.2, 0.0, 0.05}, types);
  CHECK(w[0] == doctest::Approx(0.15625).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.13888888888888892).epsilon(1e-12));
  CHECK(w[2] == 0.0);
  CHECK(w[3] == doctest::Approx(0.3125).epsilon(1e-12));
  CHECK(diversity_index(w) == doctest::Approx(0.7419561507733055).epsilon(1e-12));
  SUBCASE("a species at the mean size keeps its raw coverage") {
    const auto types2 = radii_to_types({50.0, 10.0, 30.0});  // mean 30
    const auto w2 = coverage_weights({1.0, 1.0, 1.0}, types2);
    CHECK(w2[0] == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(w2[2] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("size mismatch is rejected") {
    CHECK_THROWS_AS(coverage_weights({0.1}, types), DomainError);
  }
}

TEST_CASE("summarize averages an inclusive window") {
  std::vector<DayRecord> records;
  for (int day = 0; day < 100; ++day) {
    DayRecord r;
    r.day = day;
    r.coverage = 0.6;
    r.diversity = 0.9;
    r.water_day_ml = 100.0;
    r.water_total_ml = 100.0 * (day + 1);
    records.push_back(r);
  }
  const WindowSummary s = summarize(records, 20, 70);
  CHECK(s.days == 51);
  CHECK(s.mean_coverage == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(s.mean_diversity == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(s.water_total_ml == 7100.0);  // last record inside the window
  SUBCASE("empty window") {
    CHECK_THROWS_AS(summarize(records, 200, 300), DomainError);
    CHECK_THROWS_AS(summarize({}, 0, 10), DomainError);
  }
  SUBCASE("single-day window") {
    const WindowSummary one = summarize(records, 50, 50);
    CHECK(one.days == 1);
    CHECK(one.water_total_ml == 5100.0);
  }
}

TEST_CASE("max water bound is plants times dose times days") {
  CHECK(max_water_bound_ml(16, 100) == 320000.0);
  CHECK(max_water_bound_ml(9, 100) == 180000.0);
  CHECK(max_water_bound_ml(0, 50) == 0.0);
}

TEST_CASE("timeseries CSV has one fixed-format row per record") {
  const auto types = radii_to_types({20.0, 30.0});
  std::vector<DayRecord> records(2);
  records[0].day = 0;
  records[0].coverage = 0.125;
  records[0].diversity = 0.5;
  records[0].per_type_coverage = {0.1, 0.025};
  records[0].water_day_ml = 200.0;
  records[0].water_total_ml = 200.0;
  records[1] = records[0];
  records[1].day = 1;
  records[1].water_total_ml = 400.0;
  const std::string csv = timeseries_csv(records, types);
  CHECK(csv ==
        "day,coverage,diversity,water_day_mL,water_total_mL,t0,t1\n"
        "0,0.125000,0.500000,200.000000,200.000000,0.100000,0.025000\n"
        "1,0.125000,0.500000,200.000000,400.000000,0.100000,0.025000\n");
}

TEST_CASE("events CSV carries type, plant, and value") {
  std::vector<Event> events;
  events.push_back({3, 0, "irrigation", 2, 200.0});
  events.push_back({4, 30, "prune", 1, 8.25});
  CHECK(events_csv(events) ==
        "day,tick,event_type,plant_id,value\n"
        "3,0,irrigation,2,200.000000\n"
        "4,30,prune,1,8.250000\n");
}

TEST_CASE("fixed formatting is exact and locale independent") {
  CHECK(fixed(0.125) == "0.125000");
  CHECK(fixed(-1.5, 2) == "-1.50");
  CHECK(fixed(0.0) == "0.000000");
  CHECK(fixed(-1e-12) == "0.000000");
  CHECK(fixed(123456.7890625, 4) == "123456.7891");
  CHECK(round_to(0.1234564) == doctest::Approx(0.123456).epsilon(1e-12));
  CHECK(round_to(0.1234567) == doctest::Approx(0.123457).epsilon(1e-12));
  CHECK(round_to(-0.0) == 0.0);
}
