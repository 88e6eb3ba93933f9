#pragma once

#include "glesim/generator_matrix.hpp"

namespace glesim {

struct PoissonSolution {
  Eigen::VectorXd phi;      // mean-zero Galerkin solution of L phi = rhs
  double rel_residual = 0.0;
  int iterations = 0;
};

// rhs coefficient vector of the p-projection (the function p itself)
Eigen::VectorXd rhs_p_projection(const SpectralBasis& basis);

// GMRES on the mean-zero subspace with Hermite-degree diagonal
// preconditioning; requires |rho-mean of rhs| <= 1e-12 * ||rhs||.
PoissonSolution solve_poisson(const SpectralBasis& basis,
                              const OperatorMatrix& L,
                              const Eigen::VectorXd& rhs,
                              double tol = 1e-8);

struct DiffusionResult {
  double D = 0.0;
  double upper_bound = 0.0;  // (4/beta) sum_i alpha_i / lambda_i^2
  bool bound_holds = false;  // 0 < D <= upper_bound
  std::vector<double> mode_contributions;
};

// effective diffusion D = beta^{-1} sum_j alpha_j || d_{z_j} phi ||^2 with the
// norms taken by the exact Hermite ladder recurrence.
DiffusionResult diffusion_from_poisson(const SpectralBasis& basis,
                                       const Eigen::VectorXd& phi);

} // namespace glesim
