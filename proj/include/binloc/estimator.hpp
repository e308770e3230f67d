#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "binloc/detection_model.hpp"
#include "binloc/geometry.hpp"

namespace binloc {

// Discretisation points c_1..c_M of the search region.
struct CentreSet {
  std::vector<Vec2> centres;
  Box region;  // bounding box enclosing all centres
};

// Uniform per_side x per_side grid of cell centres over `region`.
CentreSet make_uniform_grid(const Box& region, int per_side);

// Discrete posterior over centres. Weights stay strictly positive and sum
// to one after every update.
struct GridPosterior {
  std::vector<double> weights;
  long step = 0;  // number of measurements folded in
};

GridPosterior uniform_prior(std::size_t m);

// One (x_k, d_k, t_k) triple as processed by the fusion centre. The agent id
// is informational only; fusion is agnostic to it.
struct MeasurementRecord {
  Vec2 location;
  int reading = 0;  // d in {0,1}
  double timestamp = 0.0;
  int agent_id = -1;
};

// One step of the discrete Bayes recursion: w_i <- g(d | c_i; x) w_i,
// renormalised. Throws NumericalUnderflow if the normaliser collapses.
GridPosterior bayes_update(const GridPosterior& prior,
                           const MeasurementRecord& rec, const CentreSet& cs,
                           const DetectionModel& model);
void bayes_update_inplace(GridPosterior& posterior,
                          const MeasurementRecord& rec, const CentreSet& cs,
                          const DetectionModel& model);

// Weighted mean of the centres.
Vec2 posterior_mean(const GridPosterior& p, const CentreSet& cs);

// Argmax weight, ties broken by lowest index. 0-based.
std::size_t map_index(const GridPosterior& p);

// Shannon entropy in nats, with 0 ln 0 := 0.
double entropy(const GridPosterior& p);

// Finite-horizon proxy for the asymptotic decay set: indices whose weight
// has fallen below eps after the updates so far. The limit set itself is not
// finitely computable.
std::vector<std::size_t> low_weight_indices(const GridPosterior& p,
                                            double eps);

// Importance-sampling initialisation: centres are the particles, weights
// proportional to prior(c_i)/phi(c_i). Particles whose prior density is zero
// are omitted; throws DegenerateWeights if that empties the set.
std::pair<CentreSet, GridPosterior> importance_init(
    const std::vector<Vec2>& particles, const std::vector<double>& phi_values,
    const std::function<double(const Vec2&)>& prior_density);

// Snapshot rows: index, cx, cy, weight.
void write_posterior_csv(std::ostream& os, const GridPosterior& p,
                         const CentreSet& cs);

}  // namespace binloc
