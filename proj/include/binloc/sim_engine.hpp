#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "binloc/estimator.hpp"
#include "binloc/geometry.hpp"
#include "binloc/rng.hpp"
#include "binloc/scenario.hpp"

namespace binloc {

// One agent of the team: integrator state plus its formation slot.
struct AgentState {
  Vec2 position;
  Vec2 local_mean;  // local copy of the broadcast estimate
  Vec2 offset;      // d_i = r (cos theta_i, sin theta_i)
};

// Velocity command -(x - s_hat - d); drives the agent to its slot about the
// estimate.
Vec2 control(const Vec2& position, const Vec2& local_mean, const Vec2& offset);

// Explicit Euler step of the single-integrator dynamics.
AgentState step_dynamics(const AgentState& agent, const Vec2& velocity,
                         double dt);

// Per-epoch trace row. k counts individual measurements, so after epoch e
// with N agents k_end = (e+1) * N.
struct EpochRecord {
  int epoch = 0;
  long k_end = 0;
  double t = 0.0;
  Vec2 guide;   // local estimate the agents were tracking while measuring
  Vec2 mean;    // posterior mean after fusing the epoch
  double entropy_nats = 0.0;
  double error_m = 0.0;  // ||mean - source||
  std::vector<Vec2> agent_positions;
  std::vector<int> readings;
};

struct SimTrace {
  Vec2 source;
  std::vector<EpochRecord> epochs;
  std::vector<MeasurementRecord> measurements;  // fusion-centre arrival order
  std::vector<Vec2> final_points;               // centres (or particles)
  std::vector<double> final_weights;
  std::vector<Vec2> final_agent_positions;
};

// Estimator slot in the closed loop; the grid filter and the SIR baseline
// both plug in here.
class FusionEstimator {
 public:
  virtual ~FusionEstimator() = default;
  virtual void ingest(const MeasurementRecord& rec) = 0;
  virtual void epoch_done(Rng& rng) { (void)rng; }
  virtual Vec2 mean() const = 0;
  virtual Vec2 map_point() const = 0;
  virtual double entropy() const = 0;
  virtual std::vector<Vec2> points() const = 0;
  virtual std::vector<double> weights() const = 0;
};

// Discrete Bayes recursion over a uniform grid with a uniform prior.
class GridEstimator : public FusionEstimator {
 public:
  GridEstimator(CentreSet centres, DetectionModel model);
  void ingest(const MeasurementRecord& rec) override;
  Vec2 mean() const override;
  Vec2 map_point() const override;
  double entropy() const override;
  std::vector<Vec2> points() const override;
  std::vector<double> weights() const override;
  const GridPosterior& posterior() const { return posterior_; }
  const CentreSet& centres() const { return centres_; }

 private:
  CentreSet centres_;
  DetectionModel model_;
  GridPosterior posterior_;
};

// Full closed loop: synchronous epochs every T, fusion on arrival, broadcast
// applied at exactly t_k + tau, Euler integration in between. Agents hold the
// prior mean until the first broadcast lands.
SimTrace run_closed_loop(const ScenarioConfig& cfg, std::uint64_t seed,
                         const DetectionModel& world,
                         FusionEstimator& estimator);

// Grid-estimator scenario with models built from the config.
SimTrace run_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

// Same loop with explicit assumed (estimator) and world (sampling) models;
// lets callers exercise range/tabulated models the file format cannot carry.
SimTrace run_scenario(const ScenarioConfig& cfg, std::uint64_t seed,
                      const DetectionModel& assumed,
                      const DetectionModel& world);

// Rows: k, t, sx_hat, sy_hat, entropy_nats, err_m.
void write_trace_csv(std::ostream& os, const SimTrace& trace);
// Rows: k, t, x, y, d (one per measurement, arrival order).
void write_measurements_csv(std::ostream& os, const SimTrace& trace);

}  // namespace binloc
