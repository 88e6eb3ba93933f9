#pragma once

#include <Eigen/Dense>

namespace glesim {

// Dense matrix exponential, Pade(13) with scaling and squaring.
// Used for the small matrices of the integrator caches and the Hessenberg
// blocks of the Krylov propagator.
Eigen::MatrixXd expm_pade(const Eigen::MatrixXd& a);

} // namespace glesim
