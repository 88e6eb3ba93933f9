#pragma once

#include <Eigen/Sparse>
#include <string>

#include "glesim/spectral_basis.hpp"

namespace glesim {

struct OperatorMatrix {
  Eigen::SparseMatrix<double> mat;
  std::string tag;
  std::uint64_t basis_fingerprint = 0;
};

// Galerkin matrix of the (positive) operator
//
//   L = -p d_q + V'(q) d_p - sum_j lambda_j (z_j d_p - p d_z_j)
//       + sum_j alpha_j beta^{-1} d_z_j^* d_z_j
//
// in the orthonormal tensor basis. Column and row 0 vanish (constants span
// the kernel and the rho-mean is conserved); the transport part is
// antisymmetric and the dissipative part is diagonal (sum_j alpha_j l_j).
OperatorMatrix assemble_generator(const SpectralBasis& basis);

// transport (antisymmetric) part alone, for structural tests
OperatorMatrix assemble_transport(const SpectralBasis& basis);

// <L u, u> should equal sum_j alpha_j / beta ||d_z_j u||^2; returns both
struct AccretivityCheck {
  double quadratic_form = 0.0;
  double dissipation = 0.0;
};
AccretivityCheck accretivity_check(const SpectralBasis& basis,
                                   const OperatorMatrix& L,
                                   const Eigen::VectorXd& u);

} // namespace glesim
