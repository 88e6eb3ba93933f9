#include "glesim/fdt.hpp"

#include <algorithm>

#include "glesim/errors.hpp"

namespace glesim {

FdtReport check_fdt(const Eigen::MatrixXd& drift, const Eigen::MatrixXd& noise,
                    double beta) {
  require(drift.rows() == drift.cols(), ErrorKind::dimension_mismatch,
          "fdt: drift matrix must be square");
  require(noise.rows() == noise.cols(), ErrorKind::dimension_mismatch,
          "fdt: noise matrix must be square");
  require(drift.rows() == noise.rows(), ErrorKind::dimension_mismatch,
          "fdt: drift and noise matrices must have equal size");
  require(beta > 0, ErrorKind::invalid_argument, "fdt: beta must be > 0");

  FdtReport r;
  Eigen::MatrixXd lhs = noise * noise.transpose();
  Eigen::MatrixXd rhs = (drift + drift.transpose()) / beta;
  r.residual = (lhs - rhs).norm();
  r.scale = std::max(1.0, drift.norm());
  r.pass = r.residual <= 1e-12 * r.scale;
  return r;
}

} // namespace glesim
