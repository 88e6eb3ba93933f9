#pragma once

#include <functional>
#include <vector>

#include "glesim/estimate.hpp"
#include "glesim/model.hpp"

namespace glesim {

// Histogram estimators for distances to the stationary measure, computed on
// low-dimensional marginals (full-state histograms are infeasible; a marginal
// relative entropy lower-bounds the full one).
enum class Marginal { q, p, qp };

struct Binning {
  Marginal marginal = Marginal::qp;
  int bins = 64;        // per dimension
  int bootstrap = 200;  // resamples for the entropy CI
  // bin ranges; when lo >= hi the range is taken from the samples (q on the
  // torus always uses [0, 2*pi))
  double q_lo = 0.0, q_hi = 0.0;
  double p_lo = 0.0, p_hi = 0.0;
  std::uint64_t bootstrap_seed = 2024;
};

struct MarginalDistances {
  EstimateWithCI entropy;   // H(f || rho) >= 0
  double fisher = 0.0;      // I(f || rho) >= 0
  double l1 = 0.0;          // ||f - rho||_L1 over the grid
  double outside_fraction = 0.0;
};

// All three distances from one histogram pass.
MarginalDistances estimate_distances(const std::vector<State>& samples,
                                     const GleModel& model,
                                     const Binning& binning);

EstimateWithCI estimate_relative_entropy(const std::vector<State>& samples,
                                         const GleModel& model,
                                         const Binning& binning);

double estimate_fisher(const std::vector<State>& samples, const GleModel& model,
                       const Binning& binning);

// normalized q-marginal density of the stationary measure (coordinate 0)
std::function<double(double)> stationary_q_density(const GleModel& model);

} // namespace glesim
