#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "binloc/detection_model.hpp"
#include "binloc/geometry.hpp"

namespace binloc {

// Which estimate the fusion centre broadcasts to the control law.
enum class Guidance { posterior_mean, map_estimate };

// Synchronous measurement schedule with a fixed round-trip delay.
struct TimingModel {
  double period = 0.04;  // T, s
  double delay = 0.02;   // tau, s (round trip; one-way is tau/2)
  double dt = 0.005;     // Euler integration step, s

  void validate() const;  // throws ConfigError
};

struct ControlParams {
  bool enabled = true;
  Guidance guidance = Guidance::posterior_mean;
  // Formation radius in metres; NaN means "optimise the placement objective
  // over [radius_min, radius_max] for the assumed model".
  double radius = std::numeric_limits<double>::quiet_NaN();
  double radius_min = 5.0;
  double radius_max = 20.0;
};

// Full simulation description. Defaults reproduce the reference scenario:
// a 75 m x 75 m search region centred in a 100 m x 100 m grid box, four
// agents, and the Friis/Q-function sensor model.
struct ScenarioConfig {
  Box search_region{{12.5, 12.5}, {87.5, 87.5}};  // S
  Box grid_region{{0.0, 0.0}, {100.0, 100.0}};    // contains S
  int grid_per_side = 30;                         // M = per_side^2
  int agent_count = 4;
  std::vector<Vec2> agent_start;  // empty: evenly spaced over the grid box

  FriisParams model;  // assumed model (drives the estimator and the design)
  // True transmitter power of the world; NaN means matched to the model.
  double world_tx_power = std::numeric_limits<double>::quiet_NaN();

  TimingModel timing;
  ControlParams control;

  int measurements = 1000;  // horizon k_max (individual readings)
  // Fixed source; NaN components mean "sample uniformly over search_region".
  Vec2 source{std::numeric_limits<double>::quiet_NaN(),
              std::numeric_limits<double>::quiet_NaN()};

  bool has_fixed_source() const {
    return std::isfinite(source.x) && std::isfinite(source.y);
  }
  bool has_world_power() const { return std::isfinite(world_tx_power); }

  DetectionModel assumed_model() const;
  DetectionModel true_model() const;

  // Explicit starts if given, otherwise the first agent_count centres of the
  // smallest square grid covering them, evenly spaced over the grid box.
  std::vector<Vec2> initial_positions() const;

  // Resolves ControlParams::radius, running the radius optimisation when NaN.
  double control_radius() const;

  void validate() const;  // throws ConfigError
};

Guidance guidance_mode(const ScenarioConfig& cfg);

std::vector<Vec2> evenly_spaced_positions(const Box& box, int count);

}  // namespace binloc
