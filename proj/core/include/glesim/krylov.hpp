#pragma once

#include <Eigen/Sparse>
#include <functional>

namespace glesim {

using LinOp = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct ArnoldiResult {
  Eigen::MatrixXd V;  // n x (k+1) orthonormal
  Eigen::MatrixXd H;  // (k+1) x k upper Hessenberg
  int k = 0;          // completed steps (may stop early on breakdown)
  double vnorm = 0.0; // norm of the start vector
};

// Arnoldi with full re-orthogonalization.
ArnoldiResult arnoldi(const LinOp& op, const Eigen::VectorXd& v0, int steps,
                      double breakdown_tol = 1e-14);

// u(t) = exp(-t A) u0 via a Krylov subspace per substep; the substep is
// halved until the a-posteriori estimate meets tol * ||u||.
Eigen::VectorXd expm_multiply(const Eigen::SparseMatrix<double>& a,
                              const Eigen::VectorXd& u0, double t,
                              double tol = 1e-9, int krylov_dim = 40);

struct GmresResult {
  Eigen::VectorXd x;
  double rel_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Restarted GMRES with right diagonal preconditioning (pass the inverse
// diagonal; an empty vector disables preconditioning).
GmresResult gmres(const LinOp& op, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& inv_diag, double tol, int restart,
                  int max_iterations);

} // namespace glesim
