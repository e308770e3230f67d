#include "binloc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "binloc/errors.hpp"

namespace binloc {

void BenchConfig::validate() const {
  if (grid_sides.empty()) throw ConfigError("bench needs at least one grid");
  for (int g : grid_sides) {
    if (g < 1) throw ConfigError("grid sides must be >= 1");
  }
  if (trials < 1) throw ConfigError("bench needs trials >= 1");
  if (k_max < 1) throw ConfigError("bench needs k_max >= 1");
  if (!(entropy_threshold > 0.0)) {
    throw ConfigError("entropy threshold must be positive");
  }
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

namespace {

// Stable per-trial stream key; cell and trial are both folded in so any
// worker layout reproduces the same draws.
std::uint64_t trial_seed(std::uint64_t master, std::size_t cell, int trial) {
  return mix64(master ^ (0x100000001b3ull * (cell + 1))) +
         static_cast<std::uint64_t>(trial);
}

struct TrialOutputs {
  std::vector<double> error_curve;  // per epoch
  double final_entropy = 0.0;
};

template <typename RunTrial>
GridCell run_cell(const BenchConfig& cfg, std::size_t cell_idx, int grid_side,
                  const RunTrial& run_trial) {
  const int epochs = cfg.k_max / cfg.scenario.agent_count;
  std::vector<TrialOutputs> outputs(cfg.trials);

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      int t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      try {
        outputs[t] = run_trial(cell_idx, grid_side, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  int n_threads = std::min(cfg.jobs, cfg.trials);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  GridCell out;
  out.grid_side = grid_side;
  out.spacing_m = cfg.scenario.grid_region.width() / grid_side;
  out.rms_curve.assign(epochs, 0.0);
  out.final_error.reserve(cfg.trials);
  out.final_entropy.reserve(cfg.trials);
  for (int t = 0; t < cfg.trials; ++t) {  // ordered reduction: deterministic
    const auto& o = outputs[t];
    for (int e = 0; e < epochs; ++e) {
      out.rms_curve[e] += o.error_curve[e] * o.error_curve[e];
    }
    out.final_error.push_back(o.error_curve.back());
    out.final_entropy.push_back(o.final_entropy);
  }
  for (double& v : out.rms_curve) v = std::sqrt(v / cfg.trials);
  return out;
}

TrialOutputs outputs_from_trace(const SimTrace& trace) {
  TrialOutputs o;
  o.error_curve.reserve(trace.epochs.size());
  for (const auto& row : trace.epochs) o.error_curve.push_back(row.error_m);
  o.final_entropy = trace.epochs.back().entropy_nats;
  return o;
}

}  // namespace

BenchResult monte_carlo(const BenchConfig& cfg) {
  cfg.validate();
  ScenarioConfig base = cfg.scenario;
  base.measurements = cfg.k_max;
  base.validate();

  BenchResult result;
  result.agents_per_epoch = base.agent_count;
  result.cells.reserve(cfg.grid_sides.size());

  for (std::size_t c = 0; c < cfg.grid_sides.size(); ++c) {
    ScenarioConfig scenario = base;
    scenario.grid_per_side = cfg.grid_sides[c];
    // The control radius is scenario-wide; resolve it once so trials do not
    // repeat the optimisation.
    if (scenario.control.enabled) {
      scenario.control.radius = scenario.control_radius();
    }
    auto run_trial = [&](std::size_t cell_idx, int, int t) {
      return outputs_from_trace(run_scenario(
          scenario, trial_seed(cfg.master_seed, cell_idx, t)));
    };
    result.cells.push_back(run_cell(cfg, c, cfg.grid_sides[c], run_trial));
  }
  return result;
}

AsymptoticError asymptotic_error(const GridCell& cell, double threshold_nats) {
  AsymptoticError out;
  out.trials = static_cast<int>(cell.final_error.size());
  double sum_sq = 0.0;
  for (int t = 0; t < out.trials; ++t) {
    if (cell.final_entropy[t] < threshold_nats) {
      sum_sq += cell.final_error[t] * cell.final_error[t];
      ++out.qualifying;
    }
  }
  if (out.qualifying == 0) {
    throw NoQualifyingTrials("no trial finished below the entropy threshold");
  }
  out.e_inf = std::sqrt(sum_sq / out.qualifying);
  out.qualifying_fraction = static_cast<double>(out.qualifying) / out.trials;
  return out;
}

SirEstimator::SirEstimator(int particles, const Box& support,
                           DetectionModel model, Rng& init_rng)
    : model_(std::move(model)) {
  if (particles < 1) throw ConfigError("SIR needs at least one particle");
  particles_.reserve(particles);
  for (int i = 0; i < particles; ++i) {
    particles_.push_back(init_rng.point_in(support));
  }
  weights_.assign(particles, 1.0 / particles);
}

void SirEstimator::ingest(const MeasurementRecord& rec) {
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    weights_[i] *=
        likelihood(rec.reading, particles_[i], rec.location, model_);
  }
}

void SirEstimator::epoch_done(Rng& rng) {
  double total = 0.0;
  for (double w : weights_) total += w;
  if (!(total >= 1e-300)) {
    throw ParticleDegeneracy("all SIR weights underflowed");
  }
  std::vector<double> cdf(weights_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    acc += weights_[i] / total;
    cdf[i] = acc;
  }
  cdf.back() = 1.0;
  // Multinomial resampling every epoch: P iid categorical draws.
  std::vector<Vec2> resampled;
  resampled.reserve(particles_.size());
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    double u = rng.uniform();
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    resampled.push_back(particles_[it - cdf.begin()]);
  }
  particles_ = std::move(resampled);
  std::fill(weights_.begin(), weights_.end(), 1.0 / weights_.size());
}

Vec2 SirEstimator::mean() const {
  // Equal weights after resampling; mid-epoch callers still get the
  // weighted mean.
  Vec2 m{0.0, 0.0};
  double total = 0.0;
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    m += weights_[i] * particles_[i];
    total += weights_[i];
  }
  return (1.0 / total) * m;
}

Vec2 SirEstimator::map_point() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < weights_.size(); ++i) {
    if (weights_[i] > weights_[best]) best = i;
  }
  return particles_[best];
}

double SirEstimator::entropy() const {
  double h = 0.0;
  for (double w : weights_) {
    if (w > 0.0) h -= w * std::log(w);
  }
  return h;
}

std::vector<Vec2> SirEstimator::points() const { return particles_; }

std::vector<double> SirEstimator::weights() const { return weights_; }

SimTrace sir_baseline(const ScenarioConfig& cfg, int particles,
                      std::uint64_t seed) {
  cfg.validate();
  // Particle initialisation consumes a dedicated stream so the measurement
  // noise sequence matches the grid run with the same seed.
  Rng init_rng = Rng::stream(seed, 0x534952ull);
  SirEstimator sir(particles, cfg.grid_region, cfg.assumed_model(), init_rng);
  return run_closed_loop(cfg, seed, cfg.true_model(), sir);
}

std::vector<EnvelopeSweepResult> envelope_sweep(
    const BenchConfig& cfg, double assumed_power,
    std::span<const double> true_powers) {
  cfg.validate();
  if (true_powers.empty()) {
    throw ConfigError("envelope sweep needs at least one true power");
  }
  for (double p : true_powers) {
    if (!(p > 0.0)) throw ConfigError("true powers must be positive");
    if (p > assumed_power) {
      throw EnvelopeViolation(
          "assumed power must dominate every true power");
    }
  }

  ScenarioConfig scenario = cfg.scenario;
  scenario.measurements = cfg.k_max;
  scenario.model.tx_power = assumed_power;
  scenario.control.enabled = true;
  scenario.control.guidance = Guidance::map_estimate;
  scenario.control.radius = 2.5;  // tight formation about the MAP estimate
  if (!cfg.grid_sides.empty()) scenario.grid_per_side = cfg.grid_sides.front();
  scenario.validate();

  std::vector<EnvelopeSweepResult> results;
  results.reserve(true_powers.size());
  for (std::size_t v = 0; v < true_powers.size(); ++v) {
    ScenarioConfig run = scenario;
    run.world_tx_power = true_powers[v];
    auto run_trial = [&](std::size_t cell_idx, int, int t) {
      return outputs_from_trace(
          run_scenario(run, trial_seed(cfg.master_seed, cell_idx, t)));
    };
    EnvelopeSweepResult r;
    r.true_power = true_powers[v];
    r.cell = run_cell(cfg, v, run.grid_per_side, run_trial);
    results.push_back(std::move(r));
  }
  return results;
}

void write_table1_csv(std::ostream& os, const BenchResult& result,
                      double threshold_nats) {
  os << "M,spacing_m,e_inf_m,qualify_frac\n";
  char line[128];
  for (const auto& cell : result.cells) {
    auto a = asymptotic_error(cell, threshold_nats);
    std::snprintf(line, sizeof line, "%d,%.10g,%.10g,%.10g\n",
                  cell.grid_side * cell.grid_side, cell.spacing_m, a.e_inf,
                  a.qualifying_fraction);
    os << line;
  }
}

void write_curve_csv(std::ostream& os, const GridCell& cell,
                     int agents_per_epoch) {
  os << "k,rms_m\n";
  char line[64];
  for (std::size_t e = 0; e < cell.rms_curve.size(); ++e) {
    std::snprintf(line, sizeof line, "%ld,%.10g\n",
                  static_cast<long>((e + 1) * agents_per_epoch),
                  cell.rms_curve[e]);
    os << line;
  }
}

}  // namespace binloc
