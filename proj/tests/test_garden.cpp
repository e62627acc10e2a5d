#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "polysim/errors.hpp"
#include "polysim/garden.hpp"

using namespace polysim;

namespace {

GardenConfig small_config() {
  GardenConfig cfg;
  cfg.bed_w = 80.0;
  cfg.bed_h = 80.0;
  PlantTypeSpec a;
  a.name = "alpha";
  a.germination_time = 3;
  a.maturation_time = 20;
  a.max_radius = 15.0;
  PlantTypeSpec b = a;
  b.name = "beta";
  b.max_radius = 10.0;
  cfg.types = {a, b};
  cfg.placements = {{"alpha", 20.0, 40.0}, {"beta", 60.0, 40.0}};
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("mirror_placement reflects across the vertical midline") {
  const Placement p{"alpha", 30.0, 35.0};
  const Placement m = mirror_placement(p, 150.0);
  CHECK(m.x == 120.0);
  CHECK(m.y == 35.0);
  CHECK(m.type_name == "alpha");
  SUBCASE("involution") {
    const Placement back = mirror_placement(m, 150.0);
    CHECK(back.x == 30.0);
    CHECK(back.y == 35.0);
  }
  SUBCASE("edge positions are their own partner's mirror") {
    CHECK(mirror_placement({"alpha", 0.0, 1.0}, 150.0).x == 150.0);
    CHECK(mirror_placement({"alpha", 75.0, 1.0}, 150.0).x == 75.0);
  }
  SUBCASE("x outside the bed is rejected") {
    CHECK_THROWS_AS(mirror_placement({"alpha", -5.0, 0.0}, 150.0), DomainError);
    CHECK_THROWS_AS(mirror_placement({"alpha", 151.0, 0.0}, 150.0), DomainError);
  }
}

TEST_CASE("new_garden starts at day zero with uniform moisture") {
  const GardenState g = new_garden(small_config());
  CHECK(g.day == 0);
  CHECK(g.plants.size() == 2);
  CHECK(g.soil.nx == 8);
  CHECK(g.soil.ny == 8);
  for (double v : g.soil.vwc) CHECK(v == 0.2);
  for (const auto& p : g.plants) {
    CHECK(p.stage == LifecycleStage::Germination);
    CHECK(p.radius == 0.0);
    CHECK(p.age_since_planting == 0);
    CHECK_FALSE(p.germinated);
  }
  CHECK(g.plants[0].id == 0);
  CHECK(g.plants[1].id == 1);
  CHECK(g.water_total_ml == 0.0);
}

TEST_CASE("new_garden validates types and placements") {
  SUBCASE("unknown type name") {
    GardenConfig cfg = small_config();
    cfg.placements[0].type_name = "gamma";
    CHECK_THROWS_AS(new_garden(cfg), ConfigError);
  }
  SUBCASE("center outside bed") {
    GardenConfig cfg = small_config();
    cfg.placements[1].x = 90.0;
    CHECK_THROWS_AS(new_garden(cfg), ConfigError);
  }
  SUBCASE("duplicate type names") {
    GardenConfig cfg = small_config();
    cfg.types[1].name = "alpha";
    CHECK_THROWS_AS(new_garden(cfg), ConfigError);
  }
  SUBCASE("no placements") {
    GardenConfig cfg = small_config();
    cfg.placements.clear();
    CHECK_THROWS_AS(new_garden(cfg), ConfigError);
  }
  SUBCASE("bad type parameters are rejected with the type named") {
    GardenConfig cfg = small_config();
    cfg.types[0].maturation_time = cfg.types[0].germination_time;
    CHECK_THROWS_WITH_AS(new_garden(cfg),
                         doctest::Contains("alpha"), ConfigError);
  }
}

TEST_CASE("mirrored gardens append reflected placements") {
  GardenConfig cfg = small_config();
  cfg.placements = {{"alpha", 20.0, 40.0}};
  cfg.mirror_placements = true;
  const GardenState g = new_garden(cfg);
  REQUIRE(g.plants.size() == 2);
  CHECK(g.plants[0].x == 20.0);
  CHECK(g.plants[1].x == 60.0);
  CHECK(g.plants[1].y == 40.0);
  CHECK(g.plants[1].type_ref == g.plants[0].type_ref);
}

TEST_CASE("equal seeds give identical gardens, jitter stays in the bed") {
  GardenConfig cfg = small_config();
  cfg.placement_jitter_cm = 5.0;
  const GardenState a = new_garden(cfg);
  const GardenState b = new_garden(cfg);
  for (std::size_t i = 0; i < a.plants.size(); ++i) {
    CHECK(a.plants[i].x == b.plants[i].x);
    CHECK(a.plants[i].y == b.plants[i].y);
    CHECK(a.plants[i].will_germinate == b.plants[i].will_germinate);
    CHECK(a.plants[i].x >= 0.0);
    CHECK(a.plants[i].x <= cfg.bed_w);
  }
  SUBCASE("different seeds move the plants") {
    GardenConfig other = cfg;
    other.seed = 12;
    const GardenState c = new_garden(other);
    bool any_moved = false;
    for (std::size_t i = 0; i < a.plants.size(); ++i)
      any_moved = any_moved || a.plants[i].x != c.plants[i].x;
    CHECK(any_moved);
  }
}

TEST_CASE("germination fates are drawn even when certain") {
  GardenConfig cfg = small_config();
  for (const auto& fate_certain : {true, false}) {
    GardenConfig c = cfg;
    c.types[0].germination_probability = fate_certain ? 1.0 : 0.0;
    const GardenState g = new_garden(c);
    CHECK(g.plants[0].will_germinate == fate_certain);
  }
}

TEST_CASE("garden serializes with stable field names") {
  const GardenState g = new_garden(small_config());
  const auto j = nlohmann::json::parse(to_json(g));
  CHECK(j.at("day") == 0);
  CHECK(j.at("bed")[0] == 80.0);
  CHECK(j.at("plants").size() == 2);
  const auto& p = j.at("plants")[0];
  CHECK(p.at("id") == 0);
  CHECK(p.at("type_ref") == "alpha");
  CHECK(p.at("center")[0] == 20.0);
  CHECK(p.at("radius") == 0.0);
  CHECK(p.at("stage") == "Germination");
  CHECK(p.at("germinated") == false);
  CHECK(p.at("age_since_planting") == 0);
  CHECK(j.at("soil").at("vwc").size() == 8);
  CHECK(j.at("water_total") == 0.0);
  CHECK(j.contains("rng_state"));
}
