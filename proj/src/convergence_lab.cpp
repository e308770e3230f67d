#include "binloc/convergence_lab.hpp"

#include <cmath>

#include "binloc/errors.hpp"

namespace binloc {

FactorSpec FactorSpec::two_point(double a, double b, double p_b) {
  if (!(p_b >= 0.0 && p_b <= 1.0)) {
    throw DomainError("two-point probability must lie in [0,1]");
  }
  FactorSpec f;
  f.family = Family::two_point;
  f.a = a;
  f.b = b;
  f.p_b = p_b;
  return f;
}

FactorSpec FactorSpec::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw DomainError("uniform interval needs lo <= hi");
  FactorSpec f;
  f.family = Family::uniform;
  f.a = lo;
  f.b = hi;
  return f;
}

double FactorSpec::lo() const {
  return family == Family::uniform ? a : std::min(a, b);
}

double FactorSpec::hi() const {
  return family == Family::uniform ? b : std::max(a, b);
}

double FactorSpec::mean() const {
  if (family == Family::two_point) return (1.0 - p_b) * a + p_b * b;
  return 0.5 * (a + b);
}

double FactorSpec::mean_log() const {
  if (!(lo() > 0.0)) {
    throw DomainError("mean_log requires strictly positive support");
  }
  if (family == Family::two_point) {
    return (1.0 - p_b) * std::log(a) + p_b * std::log(b);
  }
  if (a == b) return std::log(a);
  // integral of ln z over [a,b] divided by the width
  return (b * std::log(b) - a * std::log(a) - (b - a)) / (b - a);
}

double FactorSpec::sample(Rng& rng) const {
  if (family == Family::two_point) return rng.uniform() < p_b ? b : a;
  return rng.uniform(a, b);
}

void ProductExperiment::validate() const {
  if (horizon < 1 || trials < 1) {
    throw DomainError("product experiment needs horizon, trials >= 1");
  }
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (!(factor.lo() > 0.0)) {
    throw DomainError("product factors must have positive support");
  }
}

double hoeffding_bound(double gamma_n, long n, double alpha, double beta,
                       double eps) {
  if (!(alpha > 0.0) || !(alpha <= beta)) {
    throw DomainError("need 0 < alpha <= beta");
  }
  if (alpha == beta) {
    throw DomainError("degenerate support: bound denominator is zero");
  }
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (n < 1) throw DomainError("n must be >= 1");
  double gap = std::log(eps) - gamma_n;
  if (!(gap > 0.0)) {
    throw DomainError("bound regime requires ln eps > gamma_n");
  }
  double width = std::log(beta) - std::log(alpha);
  return std::exp(-2.0 * gap * gap / (static_cast<double>(n) * width * width));
}

double empirical_product_tail(const ProductExperiment& exp,
                              std::uint64_t seed) {
  exp.validate();
  const double log_eps = std::log(exp.eps);
  int hits = 0;
  for (int t = 0; t < exp.trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    double log_prod = 0.0;
    for (long k = 0; k < exp.horizon; ++k) {
      log_prod += std::log(exp.factor.sample(rng));
    }
    if (log_prod >= log_eps) ++hits;
  }
  return static_cast<double>(hits) / exp.trials;
}

double cesaro_drift(const FactorSpec& w, double p, long n, std::uint64_t seed) {
  if (!(p > 0.5)) throw DomainError("cesaro exponent must exceed 1/2");
  if (n < 1) throw DomainError("horizon must be >= 1");
  Rng rng(seed);
  double sum = 0.0;
  for (long k = 0; k < n; ++k) sum += w.sample(rng);
  return sum / std::pow(static_cast<double>(n), p);
}

}  // namespace binloc
