#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "binloc/bench.hpp"
#include "binloc/config_io.hpp"
#include "binloc/convergence_lab.hpp"
#include "binloc/errors.hpp"
#include "binloc/fisher_design.hpp"
#include "binloc/info_geometry.hpp"
#include "binloc/sim_engine.hpp"

namespace py = pybind11;
using namespace binloc;

PYBIND11_MODULE(_binloc, m) {
  m.doc() = "Source localisation from binary detections";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<ModelDomainError>(m, "ModelDomainError");
  py::register_exception<NumericalUnderflow>(m, "NumericalUnderflowError");
  py::register_exception<DegenerateWeights>(m, "DegenerateWeightsError");
  py::register_exception<EnvelopeViolation>(m, "EnvelopeViolationError");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<ParticleDegeneracy>(m, "ParticleDegeneracyError");
  py::register_exception<NoQualifyingTrials>(m, "NoQualifyingTrialsError");

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<double, double>())
      .def(py::init([](py::sequence s) {
        return Vec2{s[0].cast<double>(), s[1].cast<double>()};
      }))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("__repr__", [](const Vec2& v) {
        return "Vec2(" + format_double(v.x) + ", " + format_double(v.y) + ")";
      });
  py::implicitly_convertible<py::sequence, Vec2>();

  py::class_<Box>(m, "Box")
      .def(py::init<Vec2, Vec2>())
      .def_readwrite("lo", &Box::lo)
      .def_readwrite("hi", &Box::hi)
      .def("centre", &Box::centre)
      .def("contains",
           [](const Box& b, const Vec2& p) { return b.contains(p); });

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>())
      .def_static("stream", &Rng::stream)
      .def("uniform", py::overload_cast<>(&Rng::uniform))
      .def("bernoulli", &Rng::bernoulli);

  py::class_<FriisParams>(m, "FriisParams")
      .def(py::init<>())
      .def_readwrite("rx_area", &FriisParams::rx_area)
      .def_readwrite("tx_area", &FriisParams::tx_area)
      .def_readwrite("tx_power", &FriisParams::tx_power)
      .def_readwrite("wavelength", &FriisParams::wavelength)
      .def_readwrite("altitude", &FriisParams::altitude)
      .def_readwrite("threshold", &FriisParams::threshold)
      .def_readwrite("noise_sigma", &FriisParams::noise_sigma);

  py::class_<RangeProfile>(m, "RangeProfile")
      .def("__call__",
           [](const RangeProfile& p, double r) { return p.value(r); })
      .def("derivative", &RangeProfile::derivative);
  m.def("logistic_range_profile", &logistic_range_profile, py::arg("midpoint"),
        py::arg("width"), py::arg("floor_prob") = 0.02);

  py::class_<DetectionModel>(m, "DetectionModel")
      .def_static("friis", &DetectionModel::friis)
      .def_static("range", &DetectionModel::range)
      .def_static("tabulated", &DetectionModel::tabulated)
      .def("range_profile", &DetectionModel::as_range_profile);

  m.def("friis_received_power", &friis_received_power);
  m.def("q_function", &q_function);
  m.def("detection_probability", &detection_probability);
  m.def("likelihood", &likelihood);
  m.def("sample_measurement", &sample_measurement);

  py::class_<CentreSet>(m, "CentreSet")
      .def_readonly("centres", &CentreSet::centres)
      .def_readonly("region", &CentreSet::region);
  m.def("make_uniform_grid", &make_uniform_grid);

  py::class_<GridPosterior>(m, "GridPosterior")
      .def_readonly("weights", &GridPosterior::weights)
      .def_readonly("step", &GridPosterior::step);
  m.def("uniform_prior", &uniform_prior);

  py::class_<MeasurementRecord>(m, "MeasurementRecord")
      .def(py::init([](Vec2 location, int reading, double timestamp,
                       int agent_id) {
             return MeasurementRecord{location, reading, timestamp, agent_id};
           }),
           py::arg("location"), py::arg("reading"), py::arg("timestamp") = 0.0,
           py::arg("agent_id") = -1)
      .def_readwrite("location", &MeasurementRecord::location)
      .def_readwrite("reading", &MeasurementRecord::reading)
      .def_readwrite("timestamp", &MeasurementRecord::timestamp)
      .def_readwrite("agent_id", &MeasurementRecord::agent_id);

  m.def("bayes_update", &bayes_update);
  m.def("posterior_mean", &posterior_mean);
  m.def("map_index", &map_index);
  m.def("entropy", &entropy);
  m.def("importance_init", &importance_init);

  py::class_<KLReport>(m, "KLReport")
      .def_readonly("kl_nats", &KLReport::kl_nats)
      .def_readonly("minimisers", &KLReport::minimisers)
      .def_readonly("min_nats", &KLReport::min_nats);
  py::class_<RatioBounds>(m, "RatioBounds")
      .def_readonly("ell_lo", &RatioBounds::ell_lo)
      .def_readonly("ell_hi", &RatioBounds::ell_hi)
      .def_readonly("alpha", &RatioBounds::alpha)
      .def_readonly("beta", &RatioBounds::beta);

  m.def("mu", &mu);
  m.def("expected_log_ratio", &expected_log_ratio);
  m.def("kl_single", &kl_single);
  m.def("kl_sequence",
        [](const Vec2& s, const Vec2& x, const std::vector<Vec2>& xs,
           const DetectionModel& model) {
          return kl_sequence(s, x, xs, model);
        });
  m.def("minimiser_set_B",
        [](const Vec2& s, const std::vector<Vec2>& xs, const CentreSet& cs,
           const DetectionModel& model, double tie_tol) {
          return minimiser_set_B(s, xs, cs, model, tie_tol);
        },
        py::arg("s"), py::arg("xs"), py::arg("cs"), py::arg("model"),
        py::arg("tie_tol") = 1e-9);
  m.def("ambiguity_set_A",
        [](const Vec2& s, const std::vector<Vec2>& xs,
           const std::vector<Vec2>& candidates, const DetectionModel& model,
           double tol) {
          return ambiguity_set_A(s, xs, candidates, model, tol);
        },
        py::arg("s"), py::arg("xs"), py::arg("candidates"), py::arg("model"),
        py::arg("tol") = 1e-6);
  m.def("ratio_bounds",
        [](const CentreSet& cs, const std::vector<Vec2>& xs, const Vec2& s,
           const DetectionModel& model) {
          return ratio_bounds(cs, xs, s, model);
        });
  m.def("envelope_minimiser_set",
        [](const Vec2& s, const std::vector<Vec2>& xs, const CentreSet& cs,
           const DetectionModel& true_model, const DetectionModel& env_model,
           double tie_tol) {
          return envelope_minimiser_set(s, xs, cs, true_model, env_model,
                                        tie_tol);
        },
        py::arg("s"), py::arg("xs"), py::arg("cs"), py::arg("true_model"),
        py::arg("envelope_model"), py::arg("tie_tol") = 1e-9);

  py::class_<InfoMatrix2>(m, "InfoMatrix2")
      .def_readonly("xx", &InfoMatrix2::xx)
      .def_readonly("xy", &InfoMatrix2::xy)
      .def_readonly("yy", &InfoMatrix2::yy)
      .def("det", &InfoMatrix2::det)
      .def("trace", &InfoMatrix2::trace)
      .def("min_eigenvalue", &InfoMatrix2::min_eigenvalue);

  m.def("fim_single", &fim_single);
  m.def("fim_total",
        [](const Vec2& s, const std::vector<Vec2>& xs,
           const DetectionModel& model) { return fim_total(s, xs, model); });
  m.def("angle_condition_residual", [](const std::vector<double>& angles) {
    return angle_condition_residual(angles);
  });
  m.def("placement_objective", &placement_objective);
  m.def("optimal_radius", &optimal_radius);
  m.def("doptimal_angles", &doptimal_angles);
  m.def("doptimal_placement", &doptimal_placement);

  py::enum_<Guidance>(m, "Guidance")
      .value("posterior_mean", Guidance::posterior_mean)
      .value("map_estimate", Guidance::map_estimate);

  py::class_<TimingModel>(m, "TimingModel")
      .def(py::init<>())
      .def_readwrite("period", &TimingModel::period)
      .def_readwrite("delay", &TimingModel::delay)
      .def_readwrite("dt", &TimingModel::dt);

  py::class_<ControlParams>(m, "ControlParams")
      .def(py::init<>())
      .def_readwrite("enabled", &ControlParams::enabled)
      .def_readwrite("guidance", &ControlParams::guidance)
      .def_readwrite("radius", &ControlParams::radius)
      .def_readwrite("radius_min", &ControlParams::radius_min)
      .def_readwrite("radius_max", &ControlParams::radius_max);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("search_region", &ScenarioConfig::search_region)
      .def_readwrite("grid_region", &ScenarioConfig::grid_region)
      .def_readwrite("grid_per_side", &ScenarioConfig::grid_per_side)
      .def_readwrite("agent_count", &ScenarioConfig::agent_count)
      .def_readwrite("agent_start", &ScenarioConfig::agent_start)
      .def_readwrite("model", &ScenarioConfig::model)
      .def_readwrite("world_tx_power", &ScenarioConfig::world_tx_power)
      .def_readwrite("timing", &ScenarioConfig::timing)
      .def_readwrite("control", &ScenarioConfig::control)
      .def_readwrite("measurements", &ScenarioConfig::measurements)
      .def_readwrite("source", &ScenarioConfig::source)
      .def("validate", &ScenarioConfig::validate)
      .def("control_radius", &ScenarioConfig::control_radius);

  m.def("guidance_mode", &guidance_mode);
  m.def("parse_config_text", &parse_config_text, py::arg("text"),
        py::arg("origin") = "<string>");
  m.def("emit_config", &emit_config);

  py::class_<EpochRecord>(m, "EpochRecord")
      .def_readonly("epoch", &EpochRecord::epoch)
      .def_readonly("k_end", &EpochRecord::k_end)
      .def_readonly("t", &EpochRecord::t)
      .def_readonly("guide", &EpochRecord::guide)
      .def_readonly("mean", &EpochRecord::mean)
      .def_readonly("entropy_nats", &EpochRecord::entropy_nats)
      .def_readonly("error_m", &EpochRecord::error_m)
      .def_readonly("agent_positions", &EpochRecord::agent_positions)
      .def_readonly("readings", &EpochRecord::readings);

  py::class_<SimTrace>(m, "SimTrace")
      .def_readonly("source", &SimTrace::source)
      .def_readonly("epochs", &SimTrace::epochs)
      .def_readonly("measurements", &SimTrace::measurements)
      .def_readonly("final_points", &SimTrace::final_points)
      .def_readonly("final_weights", &SimTrace::final_weights)
      .def_readonly("final_agent_positions", &SimTrace::final_agent_positions);

  m.def("control", &control);
  m.def("run_scenario",
        py::overload_cast<const ScenarioConfig&, std::uint64_t>(&run_scenario),
        py::call_guard<py::gil_scoped_release>());
  m.def("sir_baseline", &sir_baseline,
        py::call_guard<py::gil_scoped_release>());

  py::class_<FactorSpec>(m, "FactorSpec")
      .def_static("two_point", &FactorSpec::two_point, py::arg("a"),
                  py::arg("b"), py::arg("p_b") = 0.5)
      .def_static("uniform", &FactorSpec::uniform)
      .def("lo", &FactorSpec::lo)
      .def("hi", &FactorSpec::hi)
      .def("mean", &FactorSpec::mean)
      .def("mean_log", &FactorSpec::mean_log);

  py::class_<ProductExperiment>(m, "ProductExperiment")
      .def(py::init([](const FactorSpec& f, long horizon, int trials,
                       double eps) {
             return ProductExperiment{f, horizon, trials, eps};
           }),
           py::arg("factor"), py::arg("horizon"), py::arg("trials"),
           py::arg("eps"));

  m.def("hoeffding_bound", &hoeffding_bound);
  m.def("empirical_product_tail", &empirical_product_tail,
        py::call_guard<py::gil_scoped_release>());
  m.def("cesaro_drift", &cesaro_drift,
        py::call_guard<py::gil_scoped_release>());

  py::class_<AsymptoticError>(m, "AsymptoticError")
      .def_readonly("e_inf", &AsymptoticError::e_inf)
      .def_readonly("qualifying_fraction",
                    &AsymptoticError::qualifying_fraction)
      .def_readonly("qualifying", &AsymptoticError::qualifying)
      .def_readonly("trials", &AsymptoticError::trials);

  py::class_<GridCell>(m, "GridCell")
      .def_readonly("grid_side", &GridCell::grid_side)
      .def_readonly("spacing_m", &GridCell::spacing_m)
      .def_readonly("rms_curve", &GridCell::rms_curve)
      .def_readonly("final_error", &GridCell::final_error)
      .def_readonly("final_entropy", &GridCell::final_entropy);

  py::class_<BenchResult>(m, "BenchResult")
      .def_readonly("cells", &BenchResult::cells)
      .def_readonly("agents_per_epoch", &BenchResult::agents_per_epoch);

  py::class_<BenchConfig>(m, "BenchConfig")
      .def(py::init<>())
      .def_readwrite("grid_sides", &BenchConfig::grid_sides)
      .def_readwrite("trials", &BenchConfig::trials)
      .def_readwrite("k_max", &BenchConfig::k_max)
      .def_readwrite("entropy_threshold", &BenchConfig::entropy_threshold)
      .def_readwrite("master_seed", &BenchConfig::master_seed)
      .def_readwrite("jobs", &BenchConfig::jobs)
      .def_readwrite("scenario", &BenchConfig::scenario);

  m.def("monte_carlo", &monte_carlo, py::call_guard<py::gil_scoped_release>());
  m.def("asymptotic_error", &asymptotic_error);
  m.def("envelope_sweep",
        [](const BenchConfig& cfg, double assumed_power,
           const std::vector<double>& true_powers) {
          return envelope_sweep(cfg, assumed_power, true_powers);
        },
        py::call_guard<py::gil_scoped_release>());

  py::class_<EnvelopeSweepResult>(m, "EnvelopeSweepResult")
      .def_readonly("true_power", &EnvelopeSweepResult::true_power)
      .def_readonly("cell", &EnvelopeSweepResult::cell);

  m.attr("__version__") = "0.1.0";
}
