#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "binloc/geometry.hpp"
#include "binloc/rng.hpp"

namespace binloc {

// Detection probabilities are kept strictly inside (0,1) so that Bernoulli
// likelihoods and their logs stay finite no matter how saturated the model is.
inline constexpr double kProbFloor = 1e-12;
inline constexpr double kProbCeil = 1.0 - 1e-12;

inline double clamp_probability(double p) {
  if (p < kProbFloor) return kProbFloor;
  if (p > kProbCeil) return kProbCeil;
  return p;
}

// Friis/Q-function model parameters, SI units.
struct FriisParams {
  double rx_area = 1.0;         // A_R, m^2
  double tx_area = 1.0;         // A_T, m^2
  double tx_power = 1.0;        // P_T, W
  double wavelength = 1.0;      // lambda, m
  double altitude = 10.0;       // z, m; z > 0 keeps received power finite
  double threshold = 5e-3;      // eta, W
  double noise_sigma = 2.5e-3;  // sigma, W

  double power_gain() const {
    return rx_area * tx_area * tx_power / (wavelength * wavelength);
  }
  void validate() const;  // throws ConfigError if any field is not positive
};

// Detection probability as a function of source-agent distance.
// Derivative is analytic when supplied, otherwise a central difference.
struct RangeProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative_fn;  // optional
  bool injective = true;

  double operator()(double r) const { return value(r); }
  double derivative(double r) const;
};

// Smooth injective reference profile: floor + (1-2*floor) * logistic((mid-r)/width).
RangeProfile logistic_range_profile(double midpoint, double width,
                                    double floor_prob = 0.02);

// Closed set of supported probability-of-detection functions.
class DetectionModel {
 public:
  enum class Kind { friis_q, generic_range, tabulated };

  static DetectionModel friis(const FriisParams& params);
  static DetectionModel range(RangeProfile profile);
  // Distance -> probability samples, linearly interpolated. Queries outside
  // [radii.front(), radii.back()] raise ModelDomainError.
  static DetectionModel tabulated(std::vector<double> radii,
                                  std::vector<double> probs);

  Kind kind() const { return kind_; }
  const FriisParams& friis_params() const;

  // Every kind reduces to a profile of distance; for friis_q the derivative
  // is analytic, for tabulated it is the interpolant's central difference.
  RangeProfile as_range_profile() const;

  // True when the gradient of the detection probability with respect to the
  // source can be evaluated without finite differences.
  bool has_analytic_gradient() const;

 private:
  DetectionModel() = default;

  Kind kind_ = Kind::friis_q;
  FriisParams friis_{};
  RangeProfile profile_{};
  std::vector<double> table_r_;
  std::vector<double> table_p_;

  friend double detection_probability(const Vec2&, const Vec2&,
                                      const DetectionModel&);
  friend Vec2 detection_gradient(const Vec2&, const Vec2&,
                                 const DetectionModel&);
};

// Received power A_R*A_T*P_T / (lambda^2 (||s-x||^2 + z^2)), watts.
double friis_received_power(const Vec2& source, const Vec2& agent,
                            const FriisParams& params);

// Upper tail of the standard normal, via the complementary error function.
double q_function(double u);

// Probability-of-detection l(s, x), clamped into (0,1).
double detection_probability(const Vec2& source, const Vec2& agent,
                             const DetectionModel& model);

// Bernoulli likelihood g(d | s; x) = l^d (1-l)^(1-d).
double likelihood(int reading, const Vec2& source, const Vec2& agent,
                  const DetectionModel& model);

// One Bernoulli(l(s,x)) draw; equivalent in law to thresholding received
// power plus Gaussian noise.
int sample_measurement(Rng& rng, const Vec2& source, const Vec2& agent,
                       const DetectionModel& model);

// Gradient of l with respect to the source location. Analytic for friis_q
// and analytic-derivative range profiles; central difference (1e-5 m) for
// the rest. Zero vector at r = 0 for pure range models.
Vec2 detection_gradient(const Vec2& source, const Vec2& agent,
                        const DetectionModel& model);

}  // namespace binloc
