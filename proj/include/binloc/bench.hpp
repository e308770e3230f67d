#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "binloc/scenario.hpp"
#include "binloc/sim_engine.hpp"

namespace binloc {

// Monte Carlo sweep description. Each grid size in `grid_sides` is run for
// `trials` independent scenarios with the source sampled uniformly over the
// search region.
struct BenchConfig {
  std::vector<int> grid_sides{10, 20, 30, 40, 50};
  int trials = 100;
  int k_max = 1000;                // measurement horizon per trial
  double entropy_threshold = 1.0;  // nats; qualification for e_inf
  std::uint64_t master_seed = 0;
  int jobs = 1;
  ScenarioConfig scenario;  // base scenario; grid size and horizon overridden

  void validate() const;
};

// Aggregated results for one grid size.
struct GridCell {
  int grid_side = 0;
  double spacing_m = 0.0;
  std::vector<double> rms_curve;      // per epoch, RMS over trials
  std::vector<double> final_error;    // per trial, error at k_max
  std::vector<double> final_entropy;  // per trial, entropy at k_max
};

struct BenchResult {
  std::vector<GridCell> cells;
  int agents_per_epoch = 0;  // k = (epoch+1) * agents_per_epoch
};

struct AsymptoticError {
  double e_inf = 0.0;
  double qualifying_fraction = 0.0;
  int qualifying = 0;
  int trials = 0;
};

// Runs the sweep. Deterministic in master_seed regardless of jobs: trial
// seeds are derived from (master seed, cell, trial) and the reduction is
// ordered by trial index. A failing trial aborts the batch.
BenchResult monte_carlo(const BenchConfig& cfg);

// RMS of final errors over trials whose final entropy is below the
// threshold; throws NoQualifyingTrials when none qualify.
AsymptoticError asymptotic_error(const GridCell& cell, double threshold_nats);

// Closed-loop SIR particle filter baseline: stationary particles, likelihood
// weight updates, multinomial resampling every epoch, particle mean as the
// broadcast estimate.
SimTrace sir_baseline(const ScenarioConfig& cfg, int particles,
                      std::uint64_t seed);

class SirEstimator : public FusionEstimator {
 public:
  SirEstimator(int particles, const Box& support, DetectionModel model,
               Rng& init_rng);
  void ingest(const MeasurementRecord& rec) override;
  void epoch_done(Rng& rng) override;  // normalise + multinomial resample
  Vec2 mean() const override;
  Vec2 map_point() const override;
  double entropy() const override;
  std::vector<Vec2> points() const override;
  std::vector<double> weights() const override;

 private:
  DetectionModel model_;
  std::vector<Vec2> particles_;
  std::vector<double> weights_;
};

// Model-mismatch sweep: the estimator assumes `assumed_power`, the world
// transmits each value of `true_powers` in turn. MAP guidance with the tight
// formation radius (2.5 m) is forced, matching the envelope protocol.
// Requires assumed_power >= max(true_powers) (EnvelopeViolation otherwise).
struct EnvelopeSweepResult {
  double true_power = 0.0;
  GridCell cell;
};
std::vector<EnvelopeSweepResult> envelope_sweep(
    const BenchConfig& cfg, double assumed_power,
    std::span<const double> true_powers);

// Rows: M, spacing_m, e_inf_m, qualify_frac.
void write_table1_csv(std::ostream& os, const BenchResult& result,
                      double threshold_nats);
// Rows: k, rms_m.
void write_curve_csv(std::ostream& os, const GridCell& cell,
                     int agents_per_epoch);

}  // namespace binloc
