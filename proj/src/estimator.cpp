#include "binloc/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "binloc/errors.hpp"

namespace binloc {

CentreSet make_uniform_grid(const Box& region, int per_side) {
  if (per_side < 1) throw ConfigError("grid per_side must be >= 1");
  CentreSet cs;
  cs.region = region;
  cs.centres.reserve(static_cast<std::size_t>(per_side) * per_side);
  double dx = region.width() / per_side;
  double dy = region.height() / per_side;
  for (int j = 0; j < per_side; ++j) {
    for (int i = 0; i < per_side; ++i) {
      cs.centres.push_back({region.lo.x + (i + 0.5) * dx,
                            region.lo.y + (j + 0.5) * dy});
    }
  }
  return cs;
}

GridPosterior uniform_prior(std::size_t m) {
  if (m == 0) throw ConfigError("posterior needs at least one centre");
  GridPosterior p;
  p.weights.assign(m, 1.0 / static_cast<double>(m));
  return p;
}

void bayes_update_inplace(GridPosterior& posterior,
                          const MeasurementRecord& rec, const CentreSet& cs,
                          const DetectionModel& model) {
  if (rec.reading != 0 && rec.reading != 1) {
    throw DomainError("measurement reading must be 0 or 1");
  }
  double total = 0.0;
  const std::size_t m = posterior.weights.size();
  for (std::size_t i = 0; i < m; ++i) {
    double l = detection_probability(cs.centres[i], rec.location, model);
    double g = rec.reading ? l : 1.0 - l;
    posterior.weights[i] *= g;
    total += posterior.weights[i];
  }
  if (!(total >= 1e-300)) {
    throw NumericalUnderflow("bayes normaliser underflowed");
  }
  double inv = 1.0 / total;
  for (double& w : posterior.weights) w *= inv;
  ++posterior.step;
}

GridPosterior bayes_update(const GridPosterior& prior,
                           const MeasurementRecord& rec, const CentreSet& cs,
                           const DetectionModel& model) {
  GridPosterior out = prior;
  bayes_update_inplace(out, rec, cs, model);
  return out;
}

Vec2 posterior_mean(const GridPosterior& p, const CentreSet& cs) {
  Vec2 mean{0.0, 0.0};
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    mean += p.weights[i] * cs.centres[i];
  }
  return mean;
}

std::size_t map_index(const GridPosterior& p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.weights.size(); ++i) {
    if (p.weights[i] > p.weights[best]) best = i;
  }
  return best;
}

std::vector<std::size_t> low_weight_indices(const GridPosterior& p,
                                            double eps) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    if (p.weights[i] < eps) out.push_back(i);
  }
  return out;
}

double entropy(const GridPosterior& p) {
  double h = 0.0;
  for (double w : p.weights) {
    if (w > 0.0) h -= w * std::log(w);
  }
  return h;
}

std::pair<CentreSet, GridPosterior> importance_init(
    const std::vector<Vec2>& particles, const std::vector<double>& phi_values,
    const std::function<double(const Vec2&)>& prior_density) {
  if (particles.empty() || particles.size() != phi_values.size()) {
    throw ConfigError("importance_init needs matched particles and densities");
  }
  CentreSet cs;
  GridPosterior post;
  double total = 0.0;
  Vec2 lo = particles.front(), hi = particles.front();
  for (std::size_t i = 0; i < particles.size(); ++i) {
    if (!(phi_values[i] > 0.0)) {
      throw ConfigError("importance density must be positive at each particle");
    }
    double w = prior_density(particles[i]) / phi_values[i];
    if (w <= 0.0) continue;  // zero-prior particles are simply omitted
    cs.centres.push_back(particles[i]);
    post.weights.push_back(w);
    total += w;
    lo.x = std::min(lo.x, particles[i].x);
    lo.y = std::min(lo.y, particles[i].y);
    hi.x = std::max(hi.x, particles[i].x);
    hi.y = std::max(hi.y, particles[i].y);
  }
  if (post.weights.empty()) {
    throw DegenerateWeights("prior density vanished at every particle");
  }
  cs.region = {lo, hi};
  for (double& w : post.weights) w /= total;
  return {std::move(cs), std::move(post)};
}

void write_posterior_csv(std::ostream& os, const GridPosterior& p,
                         const CentreSet& cs) {
  os << "index,cx,cy,weight\n";
  char line[128];
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.10g,%.10g,%.12g\n", i,
                  cs.centres[i].x, cs.centres[i].y, p.weights[i]);
    os << line;
  }
}

}  // namespace binloc
