#pragma once

#include <span>
#include <utility>
#include <vector>

#include "binloc/detection_model.hpp"
#include "binloc/geometry.hpp"

namespace binloc {

// Symmetric 2x2 information matrix; symmetry is structural (one off-diagonal
// entry is stored).
struct InfoMatrix2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }
  double min_eigenvalue() const {
    double mean = 0.5 * (xx + yy);
    double disc = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
    return mean - disc;
  }
  InfoMatrix2& operator+=(const InfoMatrix2& o) {
    xx += o.xx;
    xy += o.xy;
    yy += o.yy;
    return *this;
  }
};

inline InfoMatrix2 operator+(InfoMatrix2 a, const InfoMatrix2& b) {
  return a += b;
}

// Equidistant measurement geometry about an anchor (the estimated source).
struct GeometrySpec {
  double radius = 0.0;
  std::vector<double> angles;  // radians
  Vec2 anchor;

  std::vector<Vec2> positions() const;
};

// FIM for a single reading: grad l grad l^T / (l (1-l)). Rank <= 1. Returns
// the zero matrix when the gradient vanishes (e.g. x = s for a range model).
InfoMatrix2 fim_single(const Vec2& s, const Vec2& x,
                       const DetectionModel& model);

// Sum of per-reading FIMs over the measurement points.
InfoMatrix2 fim_total(const Vec2& s, std::span<const Vec2> xs,
                      const DetectionModel& model);

// (sum cos 2theta_k, sum sin 2theta_k); D-optimal geometries null both sums.
std::pair<double, double> angle_condition_residual(
    std::span<const double> angles);

// Scalar placement objective rho'(r)^2 / (rho(r)(1 - rho(r))).
double placement_objective(const RangeProfile& profile, double r);

// Maximiser of the placement objective on [r1, r2]: 1000-point grid plus
// golden-section refinement to 1e-4 m, ties broken toward smaller r.
double optimal_radius(const RangeProfile& profile, double r1, double r2);

// Angles satisfying the D-optimality condition: 2*pi*k/N for N >= 3;
// equal spacing fails the condition at N = 2, so {0, pi/2} is used there.
std::vector<double> doptimal_angles(int n);

// anchor + r (cos theta_k, sin theta_k) for the D-optimal angles.
std::vector<Vec2> doptimal_placement(const Vec2& anchor, int n, double r);

// Full geometry: D-optimal angles plus the radius optimised over [r1, r2].
GeometrySpec doptimal_geometry(const RangeProfile& profile, const Vec2& anchor,
                               int n, double r1, double r2);

}  // namespace binloc
