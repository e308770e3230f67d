// binloc command-line front end: scenario simulation, Monte Carlo benchmarks,
// D-optimal geometry design, KL diagnostics, and the convergence test-bench.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "binloc/bench.hpp"
#include "binloc/config_io.hpp"
#include "binloc/convergence_lab.hpp"
#include "binloc/errors.hpp"
#include "binloc/fisher_design.hpp"
#include "binloc/info_geometry.hpp"
#include "binloc/sim_engine.hpp"

namespace fs = std::filesystem;
using namespace binloc;

namespace {

ScenarioConfig load_config(const std::string& path) {
  if (path.empty()) return ScenarioConfig{};
  return parse_config(path);
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(dir / name, std::ios::trunc);
  if (!os) throw ConfigError("cannot write " + (dir / name).string());
  return os;
}

int run_simulate(const std::string& config_path, std::uint64_t seed,
                 const std::string& out_dir, int measurements) {
  ScenarioConfig cfg = load_config(config_path);
  if (measurements > 0) cfg.measurements = measurements;
  cfg.validate();
  SimTrace trace = run_scenario(cfg, seed);

  auto trace_os = open_out(out_dir, "trace.csv");
  write_trace_csv(trace_os, trace);
  auto meas_os = open_out(out_dir, "measurements.csv");
  write_measurements_csv(meas_os, trace);

  GridPosterior post{trace.final_weights,
                     static_cast<long>(trace.measurements.size())};
  CentreSet cs{trace.final_points, cfg.grid_region};
  auto post_os = open_out(out_dir, "posterior.csv");
  write_posterior_csv(post_os, post, cs);

  const auto& last = trace.epochs.back();
  std::printf("source          %.3f %.3f\n", trace.source.x, trace.source.y);
  std::printf("posterior mean  %.3f %.3f\n", last.mean.x, last.mean.y);
  std::printf("error           %.3f m after k = %ld\n", last.error_m,
              last.k_end);
  std::printf("entropy         %.3f nats\n", last.entropy_nats);
  return 0;
}

int run_bench(const std::string& config_path, std::uint64_t seed,
              const std::string& out_dir, const std::vector<int>& grids,
              int trials, int k_max, int jobs, bool static_agents,
              int sir_particles, bool envelope, double assumed_power,
              std::vector<double> true_powers) {
  BenchConfig bench;
  bench.scenario = load_config(config_path);
  if (!grids.empty()) bench.grid_sides = grids;
  bench.trials = trials;
  bench.k_max = k_max;
  bench.master_seed = seed;
  bench.jobs = jobs;
  if (static_agents) bench.scenario.control.enabled = false;

  fs::path dir(out_dir);

  if (envelope) {
    auto sweep = envelope_sweep(bench, assumed_power, true_powers);
    auto summary = open_out(dir, "envelope_summary.csv");
    summary << "true_power_w,e_final_m\n";
    std::printf("%10s %12s\n", "P_T (W)", "e_final (m)");
    for (const auto& r : sweep) {
      char name[64];
      std::snprintf(name, sizeof name, "curves_envelope_P%g.csv",
                    r.true_power);
      auto curve_os = open_out(dir, name);
      write_curve_csv(curve_os, r.cell, bench.scenario.agent_count);
      double e_final = r.cell.rms_curve.back();
      summary << format_double(r.true_power) << ','
              << format_double(e_final) << '\n';
      std::printf("%10g %12.3f\n", r.true_power, e_final);
    }
    return 0;
  }

  BenchResult result = monte_carlo(bench);
  auto table_os = open_out(dir, "table1.csv");
  write_table1_csv(table_os, result, bench.entropy_threshold);

  std::printf("%8s %12s %12s %14s\n", "M", "spacing (m)", "e_inf (m)",
              "qualifying");
  for (const auto& cell : result.cells) {
    char name[64];
    std::snprintf(name, sizeof name, "curves_M%d.csv", cell.grid_side);
    auto curve_os = open_out(dir, name);
    write_curve_csv(curve_os, cell, result.agents_per_epoch);
    auto a = asymptotic_error(cell, bench.entropy_threshold);
    std::printf("%8d %12.3f %12.3f %13.0f%%\n",
                cell.grid_side * cell.grid_side, cell.spacing_m, a.e_inf,
                100.0 * a.qualifying_fraction);
  }

  if (sir_particles > 0) {
    // SIR baseline on the first grid configuration, same seeds.
    ScenarioConfig scenario = bench.scenario;
    scenario.grid_per_side = bench.grid_sides.front();
    scenario.measurements = bench.k_max;
    if (scenario.control.enabled) {
      scenario.control.radius = scenario.control_radius();
    }
    const int epochs = bench.k_max / scenario.agent_count;
    std::vector<double> sum_sq(epochs, 0.0);
    for (int t = 0; t < bench.trials; ++t) {
      std::uint64_t s = mix64(seed ^ 0x534952ull) + t;
      SimTrace trace = sir_baseline(scenario, sir_particles, s);
      for (int e = 0; e < epochs; ++e) {
        sum_sq[e] += trace.epochs[e].error_m * trace.epochs[e].error_m;
      }
    }
    GridCell cell;
    cell.grid_side = bench.grid_sides.front();
    cell.spacing_m = scenario.grid_region.width() / cell.grid_side;
    for (double v : sum_sq) cell.rms_curve.push_back(std::sqrt(v / trials));
    char name[64];
    std::snprintf(name, sizeof name, "curves_sir_M%d.csv", cell.grid_side);
    auto curve_os = open_out(dir, name);
    write_curve_csv(curve_os, cell, scenario.agent_count);
    std::printf("SIR baseline (%d particles): final RMS %.3f m\n",
                sir_particles, cell.rms_curve.back());
  }
  return 0;
}

int run_doptimal(const std::string& config_path, const std::string& out_dir,
                 int n, std::pair<double, double> r_range,
                 std::pair<double, double> anchor) {
  ScenarioConfig cfg = load_config(config_path);
  RangeProfile profile = cfg.assumed_model().as_range_profile();
  GeometrySpec spec = doptimal_geometry(profile, {anchor.first, anchor.second},
                                        n, r_range.first, r_range.second);
  auto residual = angle_condition_residual(spec.angles);

  auto os = open_out(out_dir, "geometry.csv");
  os << "k,theta_rad,x,y\n";
  auto pts = spec.positions();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    os << k << ',' << format_double(spec.angles[k]) << ','
       << format_double(pts[k].x) << ',' << format_double(pts[k].y) << '\n';
  }

  std::printf("radius          %.4f m over [%g, %g]\n", spec.radius,
              r_range.first, r_range.second);
  std::printf("angle residual  (%.3g, %.3g)\n", residual.first,
              residual.second);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::printf("agent %zu         %.4f %.4f\n", k, pts[k].x, pts[k].y);
  }
  return 0;
}

int run_diagnose(const std::string& config_path, std::uint64_t seed,
                 const std::string& out_dir, double tie_tol,
                 int candidate_side) {
  ScenarioConfig cfg = load_config(config_path);
  cfg.validate();
  Rng rng(seed);
  Vec2 source = cfg.has_fixed_source() ? cfg.source
                                       : rng.point_in(cfg.search_region);
  DetectionModel model = cfg.assumed_model();
  CentreSet cs = make_uniform_grid(cfg.grid_region, cfg.grid_per_side);
  std::vector<Vec2> xs = cfg.initial_positions();  // one period, static team

  KLReport report = minimiser_set_B(source, xs, cs, model, tie_tol);
  auto kl_os = open_out(out_dir, "kl_report.csv");
  write_kl_csv(kl_os, report);

  CentreSet cand = make_uniform_grid(cfg.grid_region, candidate_side);
  cand.centres.push_back(source);  // the source always belongs to the set
  std::vector<Vec2> ambiguous =
      ambiguity_set_A(source, xs, cand.centres, model, 1e-6);
  auto amb_os = open_out(out_dir, "ambiguity.csv");
  amb_os << "x,y\n";
  for (const Vec2& p : ambiguous) {
    amb_os << format_double(p.x) << ',' << format_double(p.y) << '\n';
  }

  RatioBounds rb = ratio_bounds(cs, xs, source, model);
  std::printf("source       %.3f %.3f\n", source.x, source.y);
  std::printf("min KL       %.6g nats, |B| = %zu\n", report.min_nats,
              report.minimisers.size());
  std::printf("|A| proxy    %zu of %zu candidates\n", ambiguous.size(),
              cand.centres.size());
  std::printf("ell range    [%.6g, %.6g]\n", rb.ell_lo, rb.ell_hi);
  std::printf("Z bounds     alpha = %.6g, beta = %.6g\n", rb.alpha, rb.beta);
  return 0;
}

int run_theory(std::uint64_t seed, const std::string& out_dir) {
  auto tail_os = open_out(out_dir, "theory_tail.csv");
  tail_os << "n,eps,empirical_freq,hoeffding_bound\n";
  std::printf("%8s %8s %16s %16s\n", "n", "eps", "empirical", "bound");

  FactorSpec z = FactorSpec::two_point(0.5, 1.5);  // E[ln Z] < 0
  double mean_log = z.mean_log();
  for (long n : {100L, 200L, 400L}) {
    for (double eps : {1.0, 0.1}) {
      ProductExperiment exp{z, n, 10000, eps};
      double freq = empirical_product_tail(exp, seed);
      double bound = hoeffding_bound(mean_log * n, n, z.lo(), z.hi(), eps);
      tail_os << n << ',' << format_double(eps) << ',' << format_double(freq)
              << ',' << format_double(bound) << '\n';
      std::printf("%8ld %8g %16.6g %16.6g\n", n, eps, freq, bound);
    }
  }

  auto ces_os = open_out(out_dir, "theory_cesaro.csv");
  ces_os << "p,n,drift\n";
  FactorSpec w = FactorSpec::two_point(-1.0, 1.0);  // zero mean, bounded
  for (double p : {0.75, 1.0}) {
    for (long n : {1000L, 10000L, 100000L}) {
      double drift = cesaro_drift(w, p, n, mix64(seed) + n);
      ces_os << format_double(p) << ',' << n << ',' << format_double(drift)
             << '\n';
    }
  }
  std::printf("cesaro drift table written\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Source localisation from binary detections"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool with_config = true) {
    if (with_config) {
      sub->add_option("--config", config_path, "Scenario file (INI)");
    }
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--out-dir", out_dir, "Output directory for CSV files");
  };

  auto* sim = app.add_subcommand("simulate", "Run one closed-loop trial");
  int sim_measurements = 0;
  add_common(sim);
  sim->add_option("--measurements", sim_measurements,
                  "Override the measurement horizon");

  auto* bench = app.add_subcommand("bench", "Monte Carlo benchmark sweep");
  std::vector<int> grids;
  int trials = 100, k_max = 1000, jobs = 1, sir_particles = 0;
  bool static_agents = false, envelope = false;
  double assumed_power = 5.0;
  std::vector<double> true_powers{1.0, 2.0, 3.0, 4.0, 5.0};
  add_common(bench);
  bench->add_option("--grids", grids, "Grid sides, e.g. 10,20,30,40,50")
      ->delimiter(',');
  bench->add_option("--trials", trials, "Trials per configuration");
  bench->add_option("--k-max", k_max, "Measurement horizon");
  bench->add_option("--jobs", jobs, "Worker threads");
  bench->add_flag("--static", static_agents, "Disable the formation control");
  bench->add_option("--sir-particles", sir_particles,
                    "Also run the SIR baseline with this many particles");
  bench->add_flag("--envelope", envelope,
                  "Run the transmitted-power mismatch sweep");
  bench->add_option("--assumed-power", assumed_power,
                    "Assumed transmitter power for --envelope (W)");
  bench->add_option("--true-powers", true_powers,
                    "True transmitter powers for --envelope (W)")
      ->delimiter(',');

  auto* dopt = app.add_subcommand("doptimal", "Print a D-optimal geometry");
  int n_agents = 4;
  std::vector<double> r_range{5.0, 20.0};
  std::vector<double> anchor{0.0, 0.0};
  std::string model_name = "friis";
  add_common(dopt);
  dopt->add_option("--model", model_name, "Model family (friis)");
  dopt->add_option("--n", n_agents, "Number of agents");
  dopt->add_option("--r-range", r_range, "Radius interval r1,r2 (m)")
      ->delimiter(',')
      ->expected(2);
  dopt->add_option("--anchor", anchor, "Anchor point x,y (m)")
      ->delimiter(',')
      ->expected(2);

  auto* diag = app.add_subcommand("diagnose", "KL report and sets A/B");
  double tie_tol = 1e-9;
  int candidate_side = 200;
  add_common(diag);
  diag->add_option("--tie-tol", tie_tol, "Tie tolerance for set B (nats)");
  diag->add_option("--candidate-grid", candidate_side,
                   "Candidate grid side for the set-A proxy");

  auto* theory = app.add_subcommand("theory", "Convergence-lab suites");
  add_common(theory, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return run_simulate(config_path, seed, out_dir, sim_measurements);
    }
    if (bench->parsed()) {
      return run_bench(config_path, seed, out_dir, grids, trials, k_max, jobs,
                       static_agents, sir_particles, envelope, assumed_power,
                       true_powers);
    }
    if (dopt->parsed()) {
      if (model_name != "friis") {
        throw ConfigError("only the friis model family is configurable here");
      }
      return run_doptimal(config_path, out_dir, n_agents,
                          {r_range[0], r_range[1]}, {anchor[0], anchor[1]});
    }
    if (diag->parsed()) {
      return run_diagnose(config_path, seed, out_dir, tie_tol, candidate_side);
    }
    if (theory->parsed()) {
      return run_theory(seed, out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
