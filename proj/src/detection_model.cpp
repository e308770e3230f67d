#include "binloc/detection_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "binloc/errors.hpp"

namespace binloc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double interp_table(const std::vector<double>& rs, const std::vector<double>& ps,
                    double r) {
  if (r < rs.front() || r > rs.back()) {
    throw ModelDomainError("tabulated model queried outside its table");
  }
  auto it = std::upper_bound(rs.begin(), rs.end(), r);
  if (it == rs.begin()) return ps.front();
  if (it == rs.end()) return ps.back();
  std::size_t hi = static_cast<std::size_t>(it - rs.begin());
  std::size_t lo = hi - 1;
  double t = (r - rs[lo]) / (rs[hi] - rs[lo]);
  return ps[lo] + t * (ps[hi] - ps[lo]);
}

}  // namespace

void FriisParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(rx_area) || !positive(tx_area) || !positive(tx_power) ||
      !positive(wavelength) || !positive(altitude) || !positive(threshold) ||
      !positive(noise_sigma)) {
    throw ConfigError("friis parameters must all be strictly positive");
  }
}

double RangeProfile::derivative(double r) const {
  if (derivative_fn) return derivative_fn(r);
  const double h = 1e-4;  // metres
  double lo = std::max(0.0, r - h);
  return (value(r + h) - value(lo)) / (r + h - lo);
}

RangeProfile logistic_range_profile(double midpoint, double width,
                                    double floor_prob) {
  double span = 1.0 - 2.0 * floor_prob;
  RangeProfile p;
  p.value = [=](double r) {
    return floor_prob + span / (1.0 + std::exp((r - midpoint) / width));
  };
  p.derivative_fn = [=](double r) {
    double s = 1.0 / (1.0 + std::exp((r - midpoint) / width));
    return -span * s * (1.0 - s) / width;
  };
  p.injective = true;
  return p;
}

DetectionModel DetectionModel::friis(const FriisParams& params) {
  params.validate();
  DetectionModel m;
  m.kind_ = Kind::friis_q;
  m.friis_ = params;
  return m;
}

DetectionModel DetectionModel::range(RangeProfile profile) {
  if (!profile.value) throw ConfigError("range profile has no value function");
  DetectionModel m;
  m.kind_ = Kind::generic_range;
  m.profile_ = std::move(profile);
  return m;
}

DetectionModel DetectionModel::tabulated(std::vector<double> radii,
                                         std::vector<double> probs) {
  if (radii.size() < 2 || radii.size() != probs.size()) {
    throw ConfigError("tabulated model needs >= 2 matched (radius, prob) rows");
  }
  if (!std::is_sorted(radii.begin(), radii.end())) {
    throw ConfigError("tabulated radii must be increasing");
  }
  for (double p : probs) {
    if (!(p > 0.0 && p < 1.0)) {
      throw ConfigError("tabulated probabilities must lie in (0,1)");
    }
  }
  DetectionModel m;
  m.kind_ = Kind::tabulated;
  m.table_r_ = std::move(radii);
  m.table_p_ = std::move(probs);
  return m;
}

const FriisParams& DetectionModel::friis_params() const {
  if (kind_ != Kind::friis_q) {
    throw std::logic_error("friis_params() on a non-friis model");
  }
  return friis_;
}

RangeProfile DetectionModel::as_range_profile() const {
  switch (kind_) {
    case Kind::friis_q: {
      FriisParams p = friis_;
      RangeProfile rp;
      rp.value = [p](double r) {
        double pr = p.power_gain() / (r * r + p.altitude * p.altitude);
        return clamp_probability(q_function((p.threshold - pr) / p.noise_sigma));
      };
      rp.derivative_fn = [p](double r) {
        double denom = r * r + p.altitude * p.altitude;
        double pr = p.power_gain() / denom;
        double u = (p.threshold - pr) / p.noise_sigma;
        double du_dr = 2.0 * p.power_gain() * r / (p.noise_sigma * denom * denom);
        double phi = std::exp(-0.5 * u * u) / 2.5066282746310002;
        return -phi * du_dr;
      };
      rp.injective = true;  // strictly decreasing in r for z > 0
      return rp;
    }
    case Kind::generic_range:
      return profile_;
    case Kind::tabulated: {
      auto rs = table_r_;
      auto ps = table_p_;
      RangeProfile rp;
      rp.value = [rs, ps](double r) { return interp_table(rs, ps, r); };
      rp.injective = std::is_sorted(ps.rbegin(), ps.rend()) ||
                     std::is_sorted(ps.begin(), ps.end());
      return rp;
    }
  }
  throw std::logic_error("unreachable");
}

bool DetectionModel::has_analytic_gradient() const {
  switch (kind_) {
    case Kind::friis_q:
      return true;
    case Kind::generic_range:
      return static_cast<bool>(profile_.derivative_fn);
    case Kind::tabulated:
      return false;
  }
  return false;
}

double friis_received_power(const Vec2& source, const Vec2& agent,
                            const FriisParams& params) {
  double d2 = dot(source - agent, source - agent);
  return params.power_gain() / (d2 + params.altitude * params.altitude);
}

double q_function(double u) { return 0.5 * std::erfc(u / kSqrt2); }

double detection_probability(const Vec2& source, const Vec2& agent,
                             const DetectionModel& model) {
  switch (model.kind_) {
    case DetectionModel::Kind::friis_q: {
      double pr = friis_received_power(source, agent, model.friis_);
      double u = (model.friis_.threshold - pr) / model.friis_.noise_sigma;
      return clamp_probability(q_function(u));
    }
    case DetectionModel::Kind::generic_range:
      return clamp_probability(model.profile_.value(distance(source, agent)));
    case DetectionModel::Kind::tabulated:
      return clamp_probability(
          interp_table(model.table_r_, model.table_p_, distance(source, agent)));
  }
  throw std::logic_error("unreachable");
}

double likelihood(int reading, const Vec2& source, const Vec2& agent,
                  const DetectionModel& model) {
  double l = detection_probability(source, agent, model);
  return reading ? l : 1.0 - l;
}

int sample_measurement(Rng& rng, const Vec2& source, const Vec2& agent,
                       const DetectionModel& model) {
  return rng.bernoulli(detection_probability(source, agent, model));
}

Vec2 detection_gradient(const Vec2& source, const Vec2& agent,
                        const DetectionModel& model) {
  switch (model.kind_) {
    case DetectionModel::Kind::friis_q: {
      const FriisParams& p = model.friis_;
      double denom = dot(source - agent, source - agent) +
                     p.altitude * p.altitude;
      double pr = p.power_gain() / denom;
      double u = (p.threshold - pr) / p.noise_sigma;
      double phi = std::exp(-0.5 * u * u) / 2.5066282746310002;
      // dl/ds = phi(u)/sigma * dPr/ds, dPr/ds = -2 C (s - x) / denom^2
      double scale = -2.0 * phi * p.power_gain() /
                     (p.noise_sigma * denom * denom);
      return scale * (source - agent);
    }
    case DetectionModel::Kind::generic_range: {
      double r = distance(source, agent);
      if (r == 0.0) return {0.0, 0.0};
      if (model.profile_.derivative_fn) {
        return (model.profile_.derivative_fn(r) / r) * (source - agent);
      }
      break;  // fall through to finite differences
    }
    case DetectionModel::Kind::tabulated:
      break;
  }
  // Central differences on l itself, step 1e-5 m.
  const double h = 1e-5;
  double gx = (detection_probability({source.x + h, source.y}, agent, model) -
               detection_probability({source.x - h, source.y}, agent, model)) /
              (2.0 * h);
  double gy = (detection_probability({source.x, source.y + h}, agent, model) -
               detection_probability({source.x, source.y - h}, agent, model)) /
              (2.0 * h);
  return {gx, gy};
}

}  // namespace binloc
