#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "binloc/detection_model.hpp"
#include "binloc/estimator.hpp"
#include "binloc/geometry.hpp"

namespace binloc {

// Per-centre KL divergences over one period of measurement locations,
// with the minimiser index set B.
struct KLReport {
  std::vector<double> kl_nats;          // K(s || c_i ; x_{1:n}) per centre
  std::vector<std::size_t> minimisers;  // indices within tie_tol of the min
  double min_nats = 0.0;
};

// Extremes of the detection probability over (centres u {s}) x measurement
// points, and the induced likelihood-ratio bounds 0 < alpha <= Z <= beta.
struct RatioBounds {
  double ell_lo = 0.0;
  double ell_hi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// Expected log-likelihood ratio as a scalar function of three probabilities:
// mu(x,y,z) = z ln(x/y) + (1-z) ln((1-x)/(1-y)). Throws DomainError outside
// (0,1)^3.
double mu(double x, double y, double z);

// mu composed with detection probabilities: mu(l(c_i,x_k), l(c_j,x_k), l(s,x_k)).
double expected_log_ratio(std::size_t i, std::size_t j, const Vec2& s,
                          const Vec2& x_k, const CentreSet& cs,
                          const DetectionModel& model);

// KL divergence between the reading distributions with source at s vs at x,
// for one measurement point. Non-negative; zero iff the probabilities match.
double kl_single(const Vec2& s, const Vec2& x, const Vec2& x_k,
                 const DetectionModel& model);

// Additive extension over a sequence of measurement points.
double kl_sequence(const Vec2& s, const Vec2& x, std::span<const Vec2> xs,
                   const DetectionModel& model);

// Set B: centres minimising K(s || c_i ; x_{1:n}) for one period xs,
// with ties resolved by tie_tol (nats), never floating equality.
KLReport minimiser_set_B(const Vec2& s, std::span<const Vec2> xs,
                         const CentreSet& cs, const DetectionModel& model,
                         double tie_tol = 1e-9);

// Numerical proxy for the ambiguity set A: candidates whose detection
// probability matches the source's at every measurement point within tol.
std::vector<Vec2> ambiguity_set_A(const Vec2& s, std::span<const Vec2> xs,
                                  std::span<const Vec2> candidates,
                                  const DetectionModel& model,
                                  double tol = 1e-6);

// l_0, l_1, alpha, beta over (centres u {s}) x xs.
RatioBounds ratio_bounds(const CentreSet& cs, std::span<const Vec2> xs,
                         const Vec2& s, const DetectionModel& model);

// Mismatched-model KL: K(s, l || x, l_env ; x_{1:n})
//   = -sum_k mu(l_env(x, x_k), l(s, x_k), l(s, x_k)).
double envelope_kl(const Vec2& s, const Vec2& x, std::span<const Vec2> xs,
                   const DetectionModel& true_model,
                   const DetectionModel& envelope_model);

// Checks l_env >= l_true on `samples` quasi-random (s,x) pairs drawn from
// region x region (fixed seed, reproducible).
bool envelope_dominates(const DetectionModel& envelope_model,
                        const DetectionModel& true_model, const Box& region,
                        int samples = 10000);

// Set B under an assumed envelope: minimisers of K(s, l || c_i, l_env).
// Verifies dominance on sampled pairs over cs.region plus the concrete
// centre/measurement pairs; throws EnvelopeViolation on failure.
KLReport envelope_minimiser_set(const Vec2& s, std::span<const Vec2> xs,
                                const CentreSet& cs,
                                const DetectionModel& true_model,
                                const DetectionModel& envelope_model,
                                double tie_tol = 1e-9);

// Closeness condition: for every centre i there is j in b_set with
// l_env(c_j, x_k) >= l_env(c_i, x_k) at every measurement point.
bool closeness_condition_holds(std::span<const std::size_t> b_set,
                               std::span<const Vec2> xs, const CentreSet& cs,
                               const DetectionModel& envelope_model);

// Rows: index, kl_nats, in_B flag.
void write_kl_csv(std::ostream& os, const KLReport& report);

}  // namespace binloc
