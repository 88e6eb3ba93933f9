#pragma once

#include <Eigen/Dense>
#include <vector>

#include "glesim/potential.hpp"

namespace glesim {

// Radial sample grid for confining-potential checks: every radius is probed
// along a fixed set of directions (+/-1 when d = 1, deterministic unit
// vectors otherwise).
struct AdmissibilityGrid {
  int d = 1;
  Eigen::VectorXd radii;   // strictly increasing, > 0
  int directions = 2;

  static AdmissibilityGrid standard(int d);
};

struct AdmissibilityReport {
  // confinement: per-radius minimum of V increases without bound
  bool confining_growth = false;

  // drift inequality <grad V, q> >= sigma V + b |q|^2 for fitted sigma, b > 0
  bool drift_inequality = false;
  double fitted_sigma = 0.0;
  double fitted_b = 0.0;
  double drift_margin = 0.0;  // min over grid of lhs - sigma V - b |q|^2

  // bounded Hessian (Frobenius norm)
  bool hessian_bounded = false;
  double hessian_max = 0.0;

  // |grad V|^2 / 2 - laplacian V grows monotonically along radii
  bool poincare_growth = false;

  bool all_pass() const {
    return confining_growth && drift_inequality && hessian_bounded &&
           poincare_growth;
  }
};

AdmissibilityReport confining_admissibility(const Potential& potential,
                                            const AdmissibilityGrid& grid);

} // namespace glesim
