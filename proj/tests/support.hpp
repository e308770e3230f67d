// Shared test fixtures and independent oracles. Everything here is
// deliberately written from first principles (enumeration, finite
// differences, dense grids) so the library paths it checks stay honest.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "binloc/detection_model.hpp"
#include "binloc/estimator.hpp"
#include "binloc/fisher_design.hpp"
#include "binloc/rng.hpp"
#include "binloc/scenario.hpp"

namespace binloc::testing {

// Range model with a constant detection probability everywhere.
inline DetectionModel constant_model(double p) {
  RangeProfile prof;
  prof.value = [p](double) { return p; };
  prof.derivative_fn = [](double) { return 0.0; };
  prof.injective = false;
  return DetectionModel::range(prof);
}

// Two-level model: probability `near` within the breakpoint, `far` beyond.
// Handy for pinning exact likelihood values in estimator tests.
inline DetectionModel step_model(double breakpoint, double near, double far) {
  RangeProfile prof;
  prof.value = [=](double r) { return r < breakpoint ? near : far; };
  prof.injective = false;
  return DetectionModel::range(prof);
}

// Frozen consistency instance: a 20x20 grid over the default box, the source
// on a per-trial random centre, and a static non-collinear cross of four
// agents about it (the D-optimal pattern at the default model's radius,
// rotated off the grid axes per trial).
struct ConsistencyInstance {
  ScenarioConfig cfg;
  std::size_t source_index = 0;
};

inline ConsistencyInstance consistency_instance(std::uint64_t master,
                                                int trial, int k_max) {
  ConsistencyInstance inst;
  ScenarioConfig& cfg = inst.cfg;
  cfg.search_region = {{0.0, 0.0}, {100.0, 100.0}};
  cfg.grid_region = {{0.0, 0.0}, {100.0, 100.0}};
  cfg.grid_per_side = 20;  // M = 400
  cfg.agent_count = 4;
  cfg.timing.delay = 0.0;
  cfg.control.enabled = false;
  cfg.measurements = k_max;

  CentreSet cs = make_uniform_grid(cfg.grid_region, cfg.grid_per_side);
  Rng setup = Rng::stream(master, static_cast<std::uint64_t>(trial));
  inst.source_index = setup.index(cs.centres.size());
  cfg.source = cs.centres[inst.source_index];
  double phi = setup.uniform(0.0, 2.0 * std::acos(-1.0));
  const double radius = 7.35;
  for (int a = 0; a < 4; ++a) {
    double th = phi + a * std::acos(-1.0) / 2.0;
    cfg.agent_start.push_back(cfg.source +
                              radius * Vec2{std::cos(th), std::sin(th)});
  }
  return inst;
}

// Exhaustive KL between the 2^n-outcome product distributions G(.|s) and
// G(.|x); the additivity-free reference for kl_sequence.
inline double kl_bruteforce(const Vec2& s, const Vec2& x,
                            const std::vector<Vec2>& xs,
                            const DetectionModel& model) {
  std::size_t n = xs.size();
  std::vector<double> ls(n), lx(n);
  for (std::size_t k = 0; k < n; ++k) {
    ls[k] = detection_probability(s, xs[k], model);
    lx[k] = detection_probability(x, xs[k], model);
  }
  double kl = 0.0;
  for (std::uint64_t outcome = 0; outcome < (1ull << n); ++outcome) {
    double p = 1.0, q = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      int d = static_cast<int>((outcome >> k) & 1u);
      p *= d ? ls[k] : 1.0 - ls[k];
      q *= d ? lx[k] : 1.0 - lx[k];
    }
    kl += p * std::log(p / q);
  }
  return kl;
}

// -E[hessian of ln g] by central finite differences plus the exhaustive
// expectation over d in {0,1}; the reference for fim_single.
inline InfoMatrix2 fim_finite_difference(const Vec2& s, const Vec2& x,
                                         const DetectionModel& model,
                                         double h = 1e-3) {
  auto log_g = [&](int d, double sx, double sy) {
    return std::log(likelihood(d, {sx, sy}, x, model));
  };
  InfoMatrix2 fim;
  for (int d = 0; d <= 1; ++d) {
    double f0 = log_g(d, s.x, s.y);
    double hxx = (log_g(d, s.x + h, s.y) - 2.0 * f0 + log_g(d, s.x - h, s.y)) /
                 (h * h);
    double hyy = (log_g(d, s.x, s.y + h) - 2.0 * f0 + log_g(d, s.x, s.y - h)) /
                 (h * h);
    double hxy = (log_g(d, s.x + h, s.y + h) - log_g(d, s.x + h, s.y - h) -
                  log_g(d, s.x - h, s.y + h) + log_g(d, s.x - h, s.y - h)) /
                 (4.0 * h * h);
    double g = likelihood(d, s, x, model);
    fim.xx -= g * hxx;
    fim.xy -= g * hxy;
    fim.yy -= g * hyy;
  }
  return fim;
}

// Independent sequential-importance-sampling weight recursion: cumulative
// log-likelihoods normalised from scratch at every step.
struct SisOracle {
  std::vector<double> log_weights;  // ln w0_i + sum_k ln g_k(c_i)

  explicit SisOracle(const std::vector<double>& initial_weights) {
    log_weights.reserve(initial_weights.size());
    for (double w : initial_weights) log_weights.push_back(std::log(w));
  }

  void update(const std::vector<Vec2>& centres, const Vec2& x, int reading,
              const DetectionModel& model) {
    for (std::size_t i = 0; i < centres.size(); ++i) {
      log_weights[i] += std::log(likelihood(reading, centres[i], x, model));
    }
  }

  std::vector<double> normalised() const {
    double peak = log_weights.front();
    for (double lw : log_weights) peak = std::max(peak, lw);
    std::vector<double> out(log_weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::exp(log_weights[i] - peak);
      total += out[i];
    }
    for (double& w : out) w /= total;
    return out;
  }
};

// Dense-grid argmax of the placement objective; reference for optimal_radius.
inline double radius_grid_oracle(const RangeProfile& profile, double r1,
                                 double r2, int points) {
  double best_r = r1;
  double best_f = placement_objective(profile, r1);
  for (int i = 1; i < points; ++i) {
    double r = r1 + (r2 - r1) * i / (points - 1);
    double f = placement_objective(profile, r);
    if (f > best_f) {
      best_f = f;
      best_r = r;
    }
  }
  return best_r;
}

}  // namespace binloc::testing
