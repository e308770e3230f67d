#pragma once

#include <cstdint>

#include "binloc/rng.hpp"

namespace binloc {

// Bounded factor distributions for the product experiments: two-point and
// uniform-on-interval cover every hypothesis the tail bounds need.
struct FactorSpec {
  enum class Family { two_point, uniform };

  Family family = Family::two_point;
  double a = 1.0;
  double b = 1.0;
  double p_b = 0.5;  // two_point: P(Z = b)

  static FactorSpec two_point(double a, double b, double p_b = 0.5);
  static FactorSpec uniform(double lo, double hi);

  double lo() const;        // support minimum (alpha)
  double hi() const;        // support maximum (beta)
  double mean() const;      // E[Z]
  double mean_log() const;  // E[ln Z]; requires positive support
  double sample(Rng& rng) const;
};

// One tail experiment: how often does the running product of n iid factors
// stay at or above eps.
struct ProductExperiment {
  FactorSpec factor;
  long horizon = 1;
  int trials = 1;
  double eps = 1.0;

  void validate() const;
};

// Hoeffding tail bound exp(-2 (ln eps - gamma_n)^2 / (n (ln beta - ln alpha)^2)).
// Requires 0 < alpha < beta, eps > 0 and ln eps > gamma_n (the bound regime);
// throws DomainError otherwise.
double hoeffding_bound(double gamma_n, long n, double alpha, double beta,
                       double eps);

// Fraction of seeded trials whose product of horizon factors is >= eps.
// Products accumulate in the log domain.
double empirical_product_tail(const ProductExperiment& exp,
                              std::uint64_t seed);

// Realised n^{-p} sum_{k<=n} W_k for one seeded path of iid draws from w.
double cesaro_drift(const FactorSpec& w, double p, long n, std::uint64_t seed);

}  // namespace binloc
