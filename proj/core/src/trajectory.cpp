#include "glesim/trajectory.hpp"

#include "glesim/csv.hpp"
#include "glesim/errors.hpp"
#include "glesim/hash.hpp"

namespace glesim {

void Trajectory::check_consistent() const {
  require(states.size() == times.size(), ErrorKind::dimension_mismatch,
          "trajectory: states/times length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], ErrorKind::invalid_argument,
            "trajectory: times must be strictly increasing");
}

void export_trajectories(const std::string& path,
                         const std::vector<Trajectory>& trajectories,
                         std::size_t stride) {
  require(stride >= 1, ErrorKind::invalid_argument, "export stride must be >= 1");
  CsvWriter w(path);
  if (!trajectories.empty()) {
    w.comment("model_fingerprint=" + to_hex(trajectories[0].model_fingerprint) +
              " seed=" + std::to_string(trajectories[0].seed));
  }
  std::vector<std::string> cols = {"t"};
  if (!trajectories.empty() && !trajectories[0].states.empty()) {
    const State& s0 = trajectories[0].states[0];
    for (int i = 0; i < s0.q.size(); ++i) cols.push_back("q" + std::to_string(i));
    for (int i = 0; i < s0.p.size(); ++i) cols.push_back("p" + std::to_string(i));
    for (int j = 0; j < s0.z.rows(); ++j)
      for (int i = 0; i < s0.z.cols(); ++i)
        cols.push_back("z" + std::to_string(j) + "_" + std::to_string(i));
  }
  cols.push_back("replica_id");
  w.header(cols);
  for (const auto& tr : trajectories) {
    for (std::size_t k = 0; k < tr.size(); k += stride) {
      std::vector<double> row;
      row.push_back(tr.times[k]);
      const State& s = tr.states[k];
      for (int i = 0; i < s.q.size(); ++i) row.push_back(s.q[i]);
      for (int i = 0; i < s.p.size(); ++i) row.push_back(s.p[i]);
      for (int j = 0; j < s.z.rows(); ++j)
        for (int i = 0; i < s.z.cols(); ++i) row.push_back(s.z(j, i));
      row.push_back(static_cast<double>(tr.replica_id));
      w.row(row);
    }
  }
}

} // namespace glesim
