#include "binloc/scenario.hpp"

#include <cmath>

#include "binloc/errors.hpp"
#include "binloc/fisher_design.hpp"

namespace binloc {

void TimingModel::validate() const {
  if (!(period > 0.0) || !(delay >= 0.0) || !(dt > 0.0)) {
    throw ConfigError("timing values must be positive (delay may be zero)");
  }
  if (!(period > delay)) {
    throw ConfigError("measurement period T must exceed the delay tau");
  }
  double dt_cap = delay > 0.0 ? delay / 4.0 : period / 8.0;
  if (dt > dt_cap * (1.0 + 1e-9)) {
    throw ConfigError("dt too coarse: need dt <= tau/4 (or T/8 when tau = 0)");
  }
  // The event loop applies broadcasts on step boundaries, so the step must
  // tile both the delay and the period.
  auto divides = [this](double interval) {
    double steps = interval / dt;
    return std::abs(steps - std::round(steps)) < 1e-6;
  };
  if (!divides(period) || (delay > 0.0 && !divides(delay))) {
    throw ConfigError("dt must divide both tau and T");
  }
}

std::vector<Vec2> evenly_spaced_positions(const Box& box, int count) {
  std::vector<Vec2> pts;
  if (count < 1) return pts;
  int side = 1;
  while (side * side < count) ++side;
  double dx = box.width() / side;
  double dy = box.height() / side;
  for (int j = 0; j < side && static_cast<int>(pts.size()) < count; ++j) {
    for (int i = 0; i < side && static_cast<int>(pts.size()) < count; ++i) {
      pts.push_back({box.lo.x + (i + 0.5) * dx, box.lo.y + (j + 0.5) * dy});
    }
  }
  return pts;
}

DetectionModel ScenarioConfig::assumed_model() const {
  return DetectionModel::friis(model);
}

DetectionModel ScenarioConfig::true_model() const {
  if (!has_world_power()) return assumed_model();
  FriisParams world = model;
  world.tx_power = world_tx_power;
  return DetectionModel::friis(world);
}

std::vector<Vec2> ScenarioConfig::initial_positions() const {
  if (!agent_start.empty()) return agent_start;
  return evenly_spaced_positions(grid_region, agent_count);
}

double ScenarioConfig::control_radius() const {
  if (std::isfinite(control.radius)) return control.radius;
  return optimal_radius(assumed_model().as_range_profile(), control.radius_min,
                        control.radius_max);
}

void ScenarioConfig::validate() const {
  model.validate();
  timing.validate();
  if (!grid_region.contains(search_region)) {
    throw ConfigError("grid region must contain the search region");
  }
  if (grid_per_side < 1) throw ConfigError("grid per_side must be >= 1");
  if (agent_count < 1) throw ConfigError("agent count must be >= 1");
  if (!agent_start.empty() &&
      static_cast<int>(agent_start.size()) != agent_count) {
    throw ConfigError("explicit agent starts must match the agent count");
  }
  if (measurements < 1) throw ConfigError("measurement horizon must be >= 1");
  if (measurements % agent_count != 0) {
    throw ConfigError("measurement horizon must be a whole number of epochs");
  }
  if (has_world_power() && !(world_tx_power > 0.0)) {
    throw ConfigError("world transmitter power must be positive");
  }
  if (std::isfinite(control.radius) && !(control.radius > 0.0)) {
    throw ConfigError("control radius must be positive");
  }
  if (!(control.radius_min > 0.0) || control.radius_min > control.radius_max) {
    throw ConfigError("control radius range needs 0 < min <= max");
  }
  if (has_fixed_source() && !search_region.contains(source)) {
    throw ConfigError("fixed source must lie inside the search region");
  }
}

Guidance guidance_mode(const ScenarioConfig& cfg) {
  return cfg.control.guidance;
}

}  // namespace binloc
