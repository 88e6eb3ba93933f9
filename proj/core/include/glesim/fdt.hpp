#pragma once

#include <Eigen/Dense>

namespace glesim {

struct FdtReport {
  double residual = 0.0;  // ||C C^T - beta^{-1} (A + A^T)||_F
  double scale = 0.0;     // max(1, ||A||_F)
  bool pass = false;      // residual <= 1e-12 * scale
};

// Fluctuation-dissipation check C C^T = beta^{-1} (A + A^T) for the
// auxiliary-variable drift A and noise matrix C.
FdtReport check_fdt(const Eigen::MatrixXd& drift, const Eigen::MatrixXd& noise,
                    double beta);

} // namespace glesim
