#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "glesim/rng.hpp"

namespace glesim {

// Brownian increments on a fixed time grid, reproducible from
// (seed, replica, stream): increment(k, j, i) is the increment of mode j,
// coordinate i over step k, with variance dt. Identical keys regenerate
// bit-identical values regardless of evaluation order.
struct NoisePath {
  rng::Key key;
  double dt = 0.0;
  int m = 1;
  int d = 1;

  double increment(std::uint64_t step, int mode, int coord) const {
    return std::sqrt(dt) * key.normal(step, static_cast<std::uint64_t>(coord) * m + mode);
  }

  Eigen::MatrixXd increments(std::uint64_t step) const {
    Eigen::MatrixXd dw(m, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < m; ++j) dw(j, i) = increment(step, j, i);
    return dw;
  }

  // standard normals for the exact (p,z)-block update; rows = block size
  Eigen::MatrixXd normals(std::uint64_t step, int rows) const {
    Eigen::MatrixXd xi(rows, d);
    for (int i = 0; i < d; ++i)
      for (int r = 0; r < rows; ++r)
        xi(r, i) = key.normal(step, static_cast<std::uint64_t>(i) * rows + r);
    return xi;
  }
};

inline NoisePath make_noise_path(std::uint64_t seed, std::uint64_t replica,
                                 double dt, int m, int d) {
  return NoisePath{rng::make_key(seed, replica, rng::Stream::trajectory_noise),
                   dt, m, d};
}

} // namespace glesim
