#include "binloc/sim_engine.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "binloc/errors.hpp"
#include "binloc/fisher_design.hpp"

namespace binloc {

Vec2 control(const Vec2& position, const Vec2& local_mean,
             const Vec2& offset) {
  return -(position - local_mean - offset);
}

AgentState step_dynamics(const AgentState& agent, const Vec2& velocity,
                         double dt) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  AgentState next = agent;
  next.position += dt * velocity;
  return next;
}

GridEstimator::GridEstimator(CentreSet centres, DetectionModel model)
    : centres_(std::move(centres)),
      model_(std::move(model)),
      posterior_(uniform_prior(centres_.centres.size())) {}

void GridEstimator::ingest(const MeasurementRecord& rec) {
  bayes_update_inplace(posterior_, rec, centres_, model_);
}

Vec2 GridEstimator::mean() const { return posterior_mean(posterior_, centres_); }

Vec2 GridEstimator::map_point() const {
  return centres_.centres[map_index(posterior_)];
}

double GridEstimator::entropy() const { return binloc::entropy(posterior_); }

std::vector<Vec2> GridEstimator::points() const { return centres_.centres; }

std::vector<double> GridEstimator::weights() const {
  return posterior_.weights;
}

SimTrace run_closed_loop(const ScenarioConfig& cfg, std::uint64_t seed,
                         const DetectionModel& world,
                         FusionEstimator& estimator) {
  cfg.validate();
  Rng rng(seed);

  SimTrace trace;
  trace.source = cfg.has_fixed_source() ? cfg.source
                                        : rng.point_in(cfg.search_region);

  const int n_agents = cfg.agent_count;
  const int epochs = cfg.measurements / n_agents;
  const double dt = cfg.timing.dt;
  const int steps_per_epoch =
      static_cast<int>(std::llround(cfg.timing.period / dt));
  const int delay_steps = static_cast<int>(std::llround(cfg.timing.delay / dt));

  const double radius = cfg.control.enabled ? cfg.control_radius() : 0.0;
  std::vector<double> angles =
      n_agents >= 2 ? doptimal_angles(n_agents) : std::vector<double>{0.0};

  std::vector<AgentState> agents;
  agents.reserve(n_agents);
  const Vec2 prior_guide = estimator.mean();  // prior mean before any data
  const std::vector<Vec2> starts = cfg.initial_positions();
  for (int i = 0; i < n_agents; ++i) {
    Vec2 offset = cfg.control.enabled
                      ? radius * Vec2{std::cos(angles[i]), std::sin(angles[i])}
                      : Vec2{0.0, 0.0};
    agents.push_back({starts[i], prior_guide, offset});
  }

  trace.epochs.reserve(epochs);
  trace.measurements.reserve(static_cast<std::size_t>(cfg.measurements));

  long k = 0;
  for (int e = 0; e < epochs; ++e) {
    const double t = e * cfg.timing.period;

    EpochRecord row;
    row.epoch = e;
    row.t = t;
    row.guide = agents.front().local_mean;
    row.agent_positions.reserve(n_agents);
    row.readings.reserve(n_agents);

    // All agents measure synchronously; arrival order at the fusion centre
    // is agent-index order (the posterior is order-invariant within an epoch).
    for (int i = 0; i < n_agents; ++i) {
      int d = sample_measurement(rng, trace.source, agents[i].position, world);
      MeasurementRecord rec{agents[i].position, d, t, i};
      estimator.ingest(rec);
      trace.measurements.push_back(rec);
      row.agent_positions.push_back(agents[i].position);
      row.readings.push_back(d);
      ++k;
    }
    estimator.epoch_done(rng);

    row.k_end = k;
    row.mean = estimator.mean();
    row.entropy_nats = estimator.entropy();
    row.error_m = distance(row.mean, trace.source);
    trace.epochs.push_back(std::move(row));

    const Vec2 broadcast = cfg.control.guidance == Guidance::map_estimate
                               ? estimator.map_point()
                               : estimator.mean();

    // Integrate up to the broadcast instant t + tau under the old estimate,
    // swap in the new one, then finish the period.
    for (int step = 0; step < steps_per_epoch; ++step) {
      if (step == delay_steps) {
        for (auto& a : agents) a.local_mean = broadcast;
      }
      if (cfg.control.enabled) {
        for (auto& a : agents) {
          a = step_dynamics(a, control(a.position, a.local_mean, a.offset), dt);
        }
      }
    }
  }

  trace.final_points = estimator.points();
  trace.final_weights = estimator.weights();
  trace.final_agent_positions.reserve(n_agents);
  for (const auto& a : agents) trace.final_agent_positions.push_back(a.position);
  return trace;
}

SimTrace run_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  return run_scenario(cfg, seed, cfg.assumed_model(), cfg.true_model());
}

SimTrace run_scenario(const ScenarioConfig& cfg, std::uint64_t seed,
                      const DetectionModel& assumed,
                      const DetectionModel& world) {
  GridEstimator grid(make_uniform_grid(cfg.grid_region, cfg.grid_per_side),
                     assumed);
  return run_closed_loop(cfg, seed, world, grid);
}

void write_trace_csv(std::ostream& os, const SimTrace& trace) {
  os << "k,t,sx_hat,sy_hat,entropy_nats,err_m\n";
  char line[160];
  for (const auto& row : trace.epochs) {
    std::snprintf(line, sizeof line, "%ld,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                  row.k_end, row.t, row.mean.x, row.mean.y, row.entropy_nats,
                  row.error_m);
    os << line;
  }
}

void write_measurements_csv(std::ostream& os, const SimTrace& trace) {
  os << "k,t,x,y,d\n";
  char line[120];
  long k = 0;
  for (const auto& rec : trace.measurements) {
    ++k;
    std::snprintf(line, sizeof line, "%ld,%.10g,%.10g,%.10g,%d\n", k,
                  rec.timestamp, rec.location.x, rec.location.y, rec.reading);
    os << line;
  }
}

}  // namespace binloc
