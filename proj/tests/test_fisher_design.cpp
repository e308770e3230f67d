#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "binloc/errors.hpp"
#include "binloc/fisher_design.hpp"
#include "binloc/rng.hpp"
#include "support.hpp"

using namespace binloc;
using binloc::testing::fim_finite_difference;
using binloc::testing::radius_grid_oracle;

namespace {

DetectionModel random_friis(Rng& rng) {
  FriisParams p;
  p.tx_power = rng.uniform(0.5, 4.0);
  p.altitude = rng.uniform(6.0, 14.0);
  p.threshold = rng.uniform(3e-3, 7e-3);
  p.noise_sigma = rng.uniform(1.5e-3, 4e-3);
  return DetectionModel::friis(p);
}

DetectionModel random_logistic(Rng& rng) {
  return DetectionModel::range(
      logistic_range_profile(rng.uniform(6.0, 18.0), rng.uniform(2.0, 6.0)));
}

double max_abs_entry(const InfoMatrix2& m) {
  return std::max({std::abs(m.xx), std::abs(m.xy), std::abs(m.yy)});
}

}  // namespace

TEST_CASE("fim_single for a range model, agent due east") {
  RangeProfile prof = logistic_range_profile(10.0, 3.0);
  DetectionModel m = DetectionModel::range(prof);
  Vec2 s{20, 30};
  double r = 8.0;
  Vec2 x{s.x + r, s.y};  // theta = 0
  InfoMatrix2 fim = fim_single(s, x, m);
  double rho = prof.value(r);
  double kappa = prof.derivative(r) * prof.derivative(r) / (rho * (1 - rho));
  CHECK(fim.xx == doctest::Approx(kappa).epsilon(1e-12));
  CHECK(fim.xy == doctest::Approx(0.0));
  CHECK(fim.yy == doctest::Approx(0.0));
  CHECK(fim.det() == doctest::Approx(0.0));
}

TEST_CASE("fim_single matches the finite-difference Hessian oracle") {
  Rng rng(61);
  for (int t = 0; t < 40; ++t) {
    DetectionModel m = t % 2 ? random_friis(rng) : random_logistic(rng);
    Vec2 s{rng.uniform(20, 80), rng.uniform(20, 80)};
    double r = rng.uniform(3.0, 25.0);
    double th = rng.uniform(0.0, 2 * std::numbers::pi);
    Vec2 x = s + r * Vec2{std::cos(th), std::sin(th)};
    InfoMatrix2 lib = fim_single(s, x, m);
    InfoMatrix2 ref = fim_finite_difference(s, x, m);
    double scale = std::max(max_abs_entry(lib), 1e-9);
    CHECK(std::abs(lib.xx - ref.xx) < 1e-4 * scale);
    CHECK(std::abs(lib.xy - ref.xy) < 1e-4 * scale);
    CHECK(std::abs(lib.yy - ref.yy) < 1e-4 * scale);
  }
}

TEST_CASE("fim_single trace identity and singular gradient") {
  DetectionModel m = DetectionModel::friis(FriisParams{});
  Rng rng(67);
  for (int t = 0; t < 200; ++t) {
    Vec2 s{rng.uniform(0, 100), rng.uniform(0, 100)};
    Vec2 x{rng.uniform(0, 100), rng.uniform(0, 100)};
    Vec2 g = detection_gradient(s, x, m);
    double l = detection_probability(s, x, m);
    InfoMatrix2 fim = fim_single(s, x, m);
    CHECK(fim.trace() ==
          doctest::Approx(dot(g, g) / (l * (1 - l))).epsilon(1e-12));
  }
  // x = s for a pure range model: gradient vanishes, zero matrix flags it.
  DetectionModel range = random_logistic(rng);
  InfoMatrix2 z = fim_single({5, 5}, {5, 5}, range);
  CHECK(z.xx == 0.0);
  CHECK(z.xy == 0.0);
  CHECK(z.yy == 0.0);
}

TEST_CASE("fim_total") {
  RangeProfile prof = logistic_range_profile(10.0, 3.0);
  DetectionModel m = DetectionModel::range(prof);
  Vec2 s{0, 0};
  double r = 7.0;
  double rho = prof.value(r);
  double kappa = prof.derivative(r) * prof.derivative(r) / (rho * (1 - rho));

  SUBCASE("orthogonal pair sums to kappa * identity") {
    std::vector<Vec2> xs = {{r, 0}, {0, r}};
    InfoMatrix2 fim = fim_total(s, xs, m);
    CHECK(fim.xx == doctest::Approx(kappa).epsilon(1e-12));
    CHECK(fim.yy == doctest::Approx(kappa).epsilon(1e-12));
    CHECK(fim.xy == doctest::Approx(0.0));
    CHECK(fim.det() == doctest::Approx(kappa * kappa).epsilon(1e-12));
  }

  SUBCASE("a single reading is always rank deficient") {
    Rng rng(71);
    for (int t = 0; t < 100; ++t) {
      Vec2 x{rng.uniform(-20, 20), rng.uniform(-20, 20)};
      std::vector<Vec2> xs = {x};
      CHECK(std::abs(fim_total(s, xs, m).det()) < 1e-15);
    }
  }

  SUBCASE("matches the closed form for range models") {
    Rng rng(73);
    for (int t = 0; t < 100; ++t) {
      std::vector<Vec2> xs;
      InfoMatrix2 closed;
      for (int k = 0; k < 5; ++k) {
        double rk = rng.uniform(2.0, 20.0);
        double th = rng.uniform(0.0, 2 * std::numbers::pi);
        xs.push_back(s + rk * Vec2{std::cos(th), std::sin(th)});
        double rho_k = prof.value(rk);
        double kap = prof.derivative(rk) * prof.derivative(rk) /
                     (rho_k * (1 - rho_k));
        closed += InfoMatrix2{kap * std::cos(th) * std::cos(th),
                              kap * 0.5 * std::sin(2 * th),
                              kap * std::sin(th) * std::sin(th)};
      }
      InfoMatrix2 generic = fim_total(s, xs, m);
      double scale = std::max(max_abs_entry(generic), 1e-12);
      CHECK(std::abs(generic.xx - closed.xx) < 1e-10 * scale);
      CHECK(std::abs(generic.xy - closed.xy) < 1e-10 * scale);
      CHECK(std::abs(generic.yy - closed.yy) < 1e-10 * scale);
    }
  }
}

TEST_CASE("fim invariants: PSD, rotation equivariance, relabelling") {
  DetectionModel m = DetectionModel::friis(FriisParams{});
  Rng rng(79);
  Vec2 s{50, 50};
  for (int t = 0; t < 100; ++t) {
    std::vector<Vec2> xs;
    for (int k = 0; k < 4; ++k) {
      xs.push_back({rng.uniform(20, 80), rng.uniform(20, 80)});
    }
    InfoMatrix2 fim = fim_total(s, xs, m);
    CHECK(fim.min_eigenvalue() >= -1e-10);

    // Rotate all agents about the source by phi: I' = R I R^T.
    double phi = rng.uniform(0.0, 2 * std::numbers::pi);
    double c = std::cos(phi), sn = std::sin(phi);
    std::vector<Vec2> rotated;
    for (const Vec2& x : xs) {
      Vec2 d = x - s;
      rotated.push_back(s + Vec2{c * d.x - sn * d.y, sn * d.x + c * d.y});
    }
    InfoMatrix2 fr = fim_total(s, rotated, m);
    InfoMatrix2 expect{
        c * c * fim.xx - 2 * sn * c * fim.xy + sn * sn * fim.yy,
        sn * c * (fim.xx - fim.yy) + (c * c - sn * sn) * fim.xy,
        sn * sn * fim.xx + 2 * sn * c * fim.xy + c * c * fim.yy};
    double scale = std::max(max_abs_entry(fim), 1e-12);
    CHECK(std::abs(fr.xx - expect.xx) < 1e-10 * scale);
    CHECK(std::abs(fr.xy - expect.xy) < 1e-10 * scale);
    CHECK(std::abs(fr.yy - expect.yy) < 1e-10 * scale);

    // Relabelling leaves the determinant untouched.
    std::swap(xs[0], xs[3]);
    std::swap(xs[1], xs[2]);
    CHECK(fim_total(s, xs, m).det() == doctest::Approx(fim.det()));
  }
}

TEST_CASE("angle condition residual") {
  std::vector<double> axes = {0.0, std::numbers::pi / 2, std::numbers::pi,
                              3 * std::numbers::pi / 2};
  auto [c4, s4] = angle_condition_residual(axes);
  CHECK(c4 == doctest::Approx(0.0));
  CHECK(s4 == doctest::Approx(0.0));

  for (int n = 3; n <= 12; ++n) {
    std::vector<double> th(n);
    for (int k = 0; k < n; ++k) th[k] = 2 * std::numbers::pi * k / n;
    auto [c, s] = angle_condition_residual(th);
    CHECK(std::abs(c) < 1e-12);
    CHECK(std::abs(s) < 1e-12);
  }

  std::vector<double> one = {0.0};
  auto [c1, s1] = angle_condition_residual(one);
  CHECK(c1 == doctest::Approx(1.0));
  CHECK(s1 == doctest::Approx(0.0));

  // Equal spacing at n = 2 fails the condition; that is why the default
  // two-agent pattern is the orthogonal pair.
  std::vector<double> antipodal = {0.0, std::numbers::pi};
  CHECK(angle_condition_residual(antipodal).first == doctest::Approx(2.0));
}

TEST_CASE("optimal radius") {
  SUBCASE("constant objective returns the left endpoint") {
    RangeProfile flat;
    flat.value = [](double) { return 0.4; };
    flat.derivative_fn = [](double) { return 0.1; };  // objective constant
    CHECK(optimal_radius(flat, 2.0, 9.0) == doctest::Approx(2.0));
  }

  SUBCASE("degenerate interval returns r1") {
    RangeProfile prof = logistic_range_profile(10.0, 3.0);
    CHECK(optimal_radius(prof, 4.0, 4.0) == doctest::Approx(4.0));
  }

  SUBCASE("matches a dense-grid oracle on the reference model") {
    RangeProfile prof =
        DetectionModel::friis(FriisParams{}).as_range_profile();
    double lib = optimal_radius(prof, 5.0, 20.0);
    double ref = radius_grid_oracle(prof, 5.0, 20.0, 200000);
    CHECK(std::abs(lib - ref) < 1e-3);
  }

  SUBCASE("invalid interval") {
    RangeProfile prof = logistic_range_profile(10.0, 3.0);
    CHECK_THROWS_AS(optimal_radius(prof, 0.0, 5.0), DomainError);
    CHECK_THROWS_AS(optimal_radius(prof, 6.0, 5.0), DomainError);
  }
}

TEST_CASE("doptimal placement") {
  SUBCASE("square pattern example") {
    auto pts = doptimal_placement({0, 0}, 4, 10.0);
    REQUIRE(pts.size() == 4);
    CHECK(distance(pts[0], {10, 0}) < 1e-12);
    CHECK(distance(pts[1], {0, 10}) < 1e-12);
    CHECK(distance(pts[2], {-10, 0}) < 1e-12);
    CHECK(distance(pts[3], {0, -10}) < 1e-12);
  }

  SUBCASE("residual vanishes for every n >= 2") {
    for (int n = 2; n <= 9; ++n) {
      auto angles = doptimal_angles(n);
      auto [c, s] = angle_condition_residual(angles);
      CHECK(std::abs(c) < 1e-12);
      CHECK(std::abs(s) < 1e-12);
    }
  }

  SUBCASE("n = 2 is the orthogonal pair") {
    auto pts = doptimal_placement({5, 5}, 2, 3.0);
    CHECK(distance(pts[0], {8, 5}) < 1e-12);
    CHECK(distance(pts[1], {5, 8}) < 1e-12);
  }

  SUBCASE("anchored translation") {
    auto pts = doptimal_placement({30, -10}, 4, 2.0);
    CHECK(distance(pts[2], {28, -10}) < 1e-12);
  }

  CHECK_THROWS_AS(doptimal_placement({0, 0}, 1, 5.0), DomainError);
  CHECK_THROWS_AS(doptimal_placement({0, 0}, 4, 0.0), DomainError);
}

TEST_CASE("residual-zero geometries attain the determinant maximum") {
  RangeProfile prof = logistic_range_profile(10.0, 3.0);
  DetectionModel m = DetectionModel::range(prof);
  Vec2 s{12, -7};
  double r = 8.5;
  int n = 4;

  auto det_at = [&](const std::vector<double>& angles) {
    std::vector<Vec2> xs;
    for (double th : angles) {
      xs.push_back(s + r * Vec2{std::cos(th), std::sin(th)});
    }
    return fim_total(s, xs, m).det();
  };

  double det_opt = det_at(doptimal_angles(n));

  // Equidistant closed form: det <= kappa^2 n^2 / 4, equality iff residual 0.
  double rho = prof.value(r);
  double kappa = prof.derivative(r) * prof.derivative(r) / (rho * (1 - rho));
  CHECK(det_opt ==
        doctest::Approx(kappa * kappa * n * n / 4.0).epsilon(1e-12));

  Rng rng(83);
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> angles;
    for (int k = 0; k < n; ++k) {
      angles.push_back(rng.uniform(0.0, 2 * std::numbers::pi));
    }
    CHECK(det_at(angles) <= det_opt * (1.0 + 1e-9));
  }

  // Constructed near-zero-residual sets attain the maximum: two orthogonal
  // pairs at arbitrary phases.
  for (int t = 0; t < 200; ++t) {
    double a = rng.uniform(0.0, 2 * std::numbers::pi);
    double b = rng.uniform(0.0, 2 * std::numbers::pi);
    std::vector<double> angles = {a, a + std::numbers::pi / 2, b,
                                  b + std::numbers::pi / 2};
    auto [rc, rs] = angle_condition_residual(angles);
    REQUIRE(std::abs(rc) < 1e-9);
    REQUIRE(std::abs(rs) < 1e-9);
    CHECK(det_at(angles) == doctest::Approx(det_opt).epsilon(1e-9));
  }
}
