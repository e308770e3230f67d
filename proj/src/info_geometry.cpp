#include "binloc/info_geometry.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "binloc/errors.hpp"
#include "binloc/rng.hpp"

namespace binloc {

double mu(double x, double y, double z) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0 && z > 0.0 && z < 1.0)) {
    throw DomainError("mu arguments must lie strictly inside (0,1)");
  }
  return z * std::log(x / y) + (1.0 - z) * std::log((1.0 - x) / (1.0 - y));
}

double expected_log_ratio(std::size_t i, std::size_t j, const Vec2& s,
                          const Vec2& x_k, const CentreSet& cs,
                          const DetectionModel& model) {
  return mu(detection_probability(cs.centres[i], x_k, model),
            detection_probability(cs.centres[j], x_k, model),
            detection_probability(s, x_k, model));
}

double kl_single(const Vec2& s, const Vec2& x, const Vec2& x_k,
                 const DetectionModel& model) {
  double ls = detection_probability(s, x_k, model);
  double lx = detection_probability(x, x_k, model);
  double v = -mu(lx, ls, ls);
  return v < 0.0 ? 0.0 : v;  // guards the tiny negative rounding residue
}

double kl_sequence(const Vec2& s, const Vec2& x, std::span<const Vec2> xs,
                   const DetectionModel& model) {
  double total = 0.0;
  for (const Vec2& x_k : xs) total += kl_single(s, x, x_k, model);
  return total;
}

namespace {

KLReport report_from_values(std::vector<double> values, double tie_tol) {
  KLReport rep;
  rep.kl_nats = std::move(values);
  rep.min_nats = rep.kl_nats.front();
  for (double v : rep.kl_nats) rep.min_nats = std::min(rep.min_nats, v);
  for (std::size_t i = 0; i < rep.kl_nats.size(); ++i) {
    if (rep.kl_nats[i] <= rep.min_nats + tie_tol) rep.minimisers.push_back(i);
  }
  return rep;
}

}  // namespace

KLReport minimiser_set_B(const Vec2& s, std::span<const Vec2> xs,
                         const CentreSet& cs, const DetectionModel& model,
                         double tie_tol) {
  std::vector<double> values;
  values.reserve(cs.centres.size());
  for (const Vec2& c : cs.centres) {
    values.push_back(kl_sequence(s, c, xs, model));
  }
  return report_from_values(std::move(values), tie_tol);
}

std::vector<Vec2> ambiguity_set_A(const Vec2& s, std::span<const Vec2> xs,
                                  std::span<const Vec2> candidates,
                                  const DetectionModel& model, double tol) {
  if (!(tol > 0.0)) throw DomainError("ambiguity tolerance must be positive");
  std::vector<Vec2> members;
  for (const Vec2& cand : candidates) {
    bool keep = true;
    for (const Vec2& x_k : xs) {
      double diff = detection_probability(cand, x_k, model) -
                    detection_probability(s, x_k, model);
      if (std::abs(diff) > tol) {
        keep = false;
        break;
      }
    }
    if (keep) members.push_back(cand);
  }
  return members;
}

RatioBounds ratio_bounds(const CentreSet& cs, std::span<const Vec2> xs,
                         const Vec2& s, const DetectionModel& model) {
  if (xs.empty() || cs.centres.empty()) {
    throw DomainError("ratio_bounds needs non-empty centres and locations");
  }
  RatioBounds rb;
  rb.ell_lo = 1.0;
  rb.ell_hi = 0.0;
  auto fold = [&](const Vec2& hypothesis) {
    for (const Vec2& x_k : xs) {
      double l = detection_probability(hypothesis, x_k, model);
      rb.ell_lo = std::min(rb.ell_lo, l);
      rb.ell_hi = std::max(rb.ell_hi, l);
    }
  };
  for (const Vec2& c : cs.centres) fold(c);
  fold(s);
  rb.alpha = std::min(rb.ell_lo / rb.ell_hi,
                      (1.0 - rb.ell_hi) / (1.0 - rb.ell_lo));
  rb.beta = std::max(rb.ell_hi / rb.ell_lo,
                     (1.0 - rb.ell_lo) / (1.0 - rb.ell_hi));
  return rb;
}

double envelope_kl(const Vec2& s, const Vec2& x, std::span<const Vec2> xs,
                   const DetectionModel& true_model,
                   const DetectionModel& envelope_model) {
  double total = 0.0;
  for (const Vec2& x_k : xs) {
    double z = detection_probability(s, x_k, true_model);
    double w = detection_probability(x, x_k, envelope_model);
    total -= mu(w, z, z);
  }
  return total;
}

bool envelope_dominates(const DetectionModel& envelope_model,
                        const DetectionModel& true_model, const Box& region,
                        int samples) {
  Rng rng(0x6e76656c6f7065ull);  // fixed stream; the check is reproducible
  for (int i = 0; i < samples; ++i) {
    Vec2 s = rng.point_in(region);
    Vec2 x = rng.point_in(region);
    if (detection_probability(s, x, envelope_model) <
        detection_probability(s, x, true_model)) {
      return false;
    }
  }
  return true;
}

KLReport envelope_minimiser_set(const Vec2& s, std::span<const Vec2> xs,
                                const CentreSet& cs,
                                const DetectionModel& true_model,
                                const DetectionModel& envelope_model,
                                double tie_tol) {
  if (!envelope_dominates(envelope_model, true_model, cs.region)) {
    throw EnvelopeViolation("assumed model does not dominate the true model");
  }
  for (const Vec2& x_k : xs) {
    if (detection_probability(s, x_k, envelope_model) <
        detection_probability(s, x_k, true_model)) {
      throw EnvelopeViolation("envelope violated at a measurement point");
    }
    for (const Vec2& c : cs.centres) {
      if (detection_probability(c, x_k, envelope_model) <
          detection_probability(c, x_k, true_model)) {
        throw EnvelopeViolation("envelope violated at a centre");
      }
    }
  }
  std::vector<double> values;
  values.reserve(cs.centres.size());
  for (const Vec2& c : cs.centres) {
    values.push_back(envelope_kl(s, c, xs, true_model, envelope_model));
  }
  return report_from_values(std::move(values), tie_tol);
}

bool closeness_condition_holds(std::span<const std::size_t> b_set,
                               std::span<const Vec2> xs, const CentreSet& cs,
                               const DetectionModel& envelope_model) {
  for (std::size_t i = 0; i < cs.centres.size(); ++i) {
    bool dominated = false;
    for (std::size_t j : b_set) {
      bool all = true;
      for (const Vec2& x_k : xs) {
        if (detection_probability(cs.centres[j], x_k, envelope_model) <
            detection_probability(cs.centres[i], x_k, envelope_model)) {
          all = false;
          break;
        }
      }
      if (all) {
        dominated = true;
        break;
      }
    }
    if (!dominated) return false;
  }
  return true;
}

void write_kl_csv(std::ostream& os, const KLReport& report) {
  os << "index,kl_nats,in_B\n";
  std::vector<char> flags(report.kl_nats.size(), 0);
  for (std::size_t idx : report.minimisers) flags[idx] = 1;
  char line[96];
  for (std::size_t i = 0; i < report.kl_nats.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.12g,%d\n", i, report.kl_nats[i],
                  static_cast<int>(flags[i]));
    os << line;
  }
}

}  // namespace binloc
