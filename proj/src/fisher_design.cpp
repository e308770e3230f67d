#include "binloc/fisher_design.hpp"

#include <cmath>
#include <numbers>

#include "binloc/errors.hpp"

namespace binloc {

std::vector<Vec2> GeometrySpec::positions() const {
  std::vector<Vec2> pts;
  pts.reserve(angles.size());
  for (double th : angles) {
    pts.push_back(anchor + radius * Vec2{std::cos(th), std::sin(th)});
  }
  return pts;
}

InfoMatrix2 fim_single(const Vec2& s, const Vec2& x,
                       const DetectionModel& model) {
  Vec2 g = detection_gradient(s, x, model);
  if (g.x == 0.0 && g.y == 0.0) return {};  // singular gradient: zero matrix
  double l = detection_probability(s, x, model);
  double scale = 1.0 / (l * (1.0 - l));
  return {scale * g.x * g.x, scale * g.x * g.y, scale * g.y * g.y};
}

InfoMatrix2 fim_total(const Vec2& s, std::span<const Vec2> xs,
                      const DetectionModel& model) {
  if (xs.empty()) throw DomainError("fim_total needs at least one location");
  InfoMatrix2 total;
  for (const Vec2& x : xs) total += fim_single(s, x, model);
  return total;
}

std::pair<double, double> angle_condition_residual(
    std::span<const double> angles) {
  double c = 0.0, s = 0.0;
  for (double th : angles) {
    c += std::cos(2.0 * th);
    s += std::sin(2.0 * th);
  }
  return {c, s};
}

double placement_objective(const RangeProfile& profile, double r) {
  double rho = profile.value(r);
  double d = profile.derivative(r);
  return d * d / (rho * (1.0 - rho));
}

double optimal_radius(const RangeProfile& profile, double r1, double r2) {
  if (!(r1 > 0.0) || r1 > r2) {
    throw DomainError("optimal_radius needs 0 < r1 <= r2");
  }
  if (r1 == r2) return r1;

  constexpr int kGridPoints = 1000;
  double step = (r2 - r1) / (kGridPoints - 1);
  double best_r = r1;
  double best_f = placement_objective(profile, r1);
  for (int i = 1; i < kGridPoints; ++i) {
    double r = r1 + i * step;
    double f = placement_objective(profile, r);
    if (f > best_f) {  // strict: ties stay at the smaller radius
      best_f = f;
      best_r = r;
    }
  }

  // Golden-section refinement inside the bracketing grid interval.
  double a = std::max(r1, best_r - step);
  double b = std::min(r2, best_r + step);
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = placement_objective(profile, c);
  double fd = placement_objective(profile, d);
  while (b - a > 1e-4) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = placement_objective(profile, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = placement_objective(profile, d);
    }
  }
  double refined = 0.5 * (a + b);
  // Keep the grid answer unless refinement strictly improved it; preserves
  // the smaller-radius tie-break on flat objectives.
  return placement_objective(profile, refined) > best_f ? refined : best_r;
}

std::vector<double> doptimal_angles(int n) {
  if (n < 2) throw DomainError("doptimal geometry needs n >= 2");
  std::vector<double> angles(n);
  // Equal spacing 2*pi*k/n nulls the residual for n >= 3 but gives {0, pi}
  // for n = 2, which violates the optimality condition (sum cos 2theta = 2);
  // an orthogonal pair is used instead.
  double step = (n == 2) ? std::numbers::pi / 2.0
                         : 2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) angles[k] = step * k;
  return angles;
}

std::vector<Vec2> doptimal_placement(const Vec2& anchor, int n, double r) {
  if (!(r > 0.0)) throw DomainError("doptimal placement needs r > 0");
  GeometrySpec spec{r, doptimal_angles(n), anchor};
  return spec.positions();
}

GeometrySpec doptimal_geometry(const RangeProfile& profile, const Vec2& anchor,
                               int n, double r1, double r2) {
  return {optimal_radius(profile, r1, r2), doptimal_angles(n), anchor};
}

}  // namespace binloc
