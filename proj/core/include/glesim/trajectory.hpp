#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "glesim/model.hpp"

namespace glesim {

// Stored sample path. Positions are stored both torus-wrapped (q) and
// unwrapped (q_abs); displacement statistics need the winding.
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<Eigen::VectorXd> q_abs;
  std::uint64_t replica_id = 0;
  std::uint64_t seed = 0;
  std::uint64_t noise_stream = 0;
  std::uint64_t model_fingerprint = 0;

  std::size_t size() const { return times.size(); }
  void check_consistent() const;
};

// Columnar export: t, q[0..d), p[0..d), z[0..m*d), replica_id per row.
void export_trajectories(const std::string& path,
                         const std::vector<Trajectory>& trajectories,
                         std::size_t stride = 1);

} // namespace glesim
