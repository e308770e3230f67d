#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "binloc/config_io.hpp"
#include "binloc/errors.hpp"

using namespace binloc;

TEST_CASE("empty file yields the reference default scenario") {
  ScenarioConfig cfg = parse_config_text("");
  CHECK(cfg.timing.period == 0.04);
  CHECK(cfg.timing.delay == 0.02);
  CHECK(cfg.model.threshold == 5e-3);
  CHECK(cfg.model.noise_sigma == 2.5e-3);
  CHECK(cfg.model.tx_power == 1.0);
  CHECK(cfg.model.wavelength == 1.0);
  CHECK(cfg.model.altitude == 10.0);
  CHECK(cfg.grid_per_side == 30);
  CHECK(cfg.agent_count == 4);
  CHECK(cfg.search_region.lo == Vec2{12.5, 12.5});
  CHECK(cfg.search_region.hi == Vec2{87.5, 87.5});
  CHECK(cfg.grid_region.lo == Vec2{0.0, 0.0});
  CHECK(cfg.grid_region.hi == Vec2{100.0, 100.0});
  CHECK(cfg.measurements == 1000);
  CHECK(!cfg.has_fixed_source());
  CHECK(!cfg.has_world_power());
  CHECK(cfg.control.enabled);
  CHECK(cfg.control.guidance == Guidance::posterior_mean);
}

TEST_CASE("timing violations are rejected") {
  CHECK_THROWS_AS(parse_config_text("[timing]\ndelay_s = 0.05\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[timing]\ndelay_s = 0.04\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[timing]\ndt_s = 0.009\n"), ConfigError);
  // dt must tile tau and T
  CHECK_THROWS_AS(parse_config_text("[timing]\ndt_s = 0.003\n"), ConfigError);
  CHECK_NOTHROW(parse_config_text("[timing]\ndelay_s = 0\ndt_s = 0.005\n"));
}

TEST_CASE("unknown keys and malformed lines carry diagnostics") {
  try {
    parse_config_text("[model]\nbogus_key = 3\n", "scenario.ini");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("scenario.ini:2") != std::string::npos);
    CHECK(msg.find("bogus_key") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config_text("[nonsense]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("orphan = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[model]\ntx_power_w = banana\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("[region]\nsearch = 1 2 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[grid]\nper_side = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[control]\nguidance = wrong\n"),
                  ConfigError);
}

TEST_CASE("structural validation") {
  // grid box must contain the search region
  CHECK_THROWS_AS(
      parse_config_text("[region]\ngrid = 20 20 80 80\n"), ConfigError);
  // agent starts must match the count
  CHECK_THROWS_AS(
      parse_config_text("[agents]\ncount = 4\nstart1 = 10 10\n"), ConfigError);
  CHECK_NOTHROW(parse_config_text(
      "[agents]\ncount = 2\nstart1 = 10 10\nstart2 = 20 20\n"));
  CHECK_THROWS_AS(
      parse_config_text("[agents]\ncount = 2\nstart1 = 10 10\nstart1 = 5 5\n"),
      ConfigError);
  // fixed source must sit inside the search region
  CHECK_THROWS_AS(parse_config_text("[run]\nsource = 5 5\n"), ConfigError);
  CHECK_NOTHROW(parse_config_text("[run]\nsource = 50 50\n"));
  // horizon must be whole epochs
  CHECK_THROWS_AS(parse_config_text("[run]\nmeasurements = 1001\n"),
                  ConfigError);
}

TEST_CASE("emit then re-parse reproduces the config") {
  ScenarioConfig cfg;
  cfg.grid_per_side = 24;
  cfg.measurements = 800;
  cfg.world_tx_power = 2.0;
  cfg.model.tx_power = 5.0;
  cfg.control.guidance = Guidance::map_estimate;
  cfg.control.radius = 2.5;
  cfg.source = {43.7, 61.2};
  cfg.agent_count = 2;
  cfg.agent_start = {{10.0, 10.0}, {90.0, 95.5}};
  cfg.timing.dt = 0.0025;

  std::string text = emit_config(cfg);
  ScenarioConfig back = parse_config_text(text);
  CHECK(emit_config(back) == text);
  CHECK(back.grid_per_side == 24);
  CHECK(back.world_tx_power == 2.0);
  CHECK(back.control.guidance == Guidance::map_estimate);
  CHECK(back.control.radius == 2.5);
  CHECK(back.source == Vec2{43.7, 61.2});
  CHECK(back.agent_start[1] == Vec2{90.0, 95.5});

  // Defaults round-trip too, including the auto radius marker.
  ScenarioConfig defaults;
  std::string dtext = emit_config(defaults);
  CHECK(dtext.find("radius_m = auto") != std::string::npos);
  CHECK(emit_config(parse_config_text(dtext)) == dtext);
}

TEST_CASE("comments and blank lines are ignored") {
  ScenarioConfig cfg = parse_config_text(
      "# leading comment\n\n[grid]\n; alt comment\nper_side = 12\n");
  CHECK(cfg.grid_per_side == 12);
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.04, 2.5e-3, 1.0 / 3.0, 7.348698982619592,
                   1e-300, 12345.6789, 0.1 + 0.2}) {
    std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}
