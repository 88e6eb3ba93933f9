#include "glesim/poisson.hpp"

#include <cmath>

#include "glesim/krylov.hpp"

namespace glesim {

Eigen::VectorXd rhs_p_projection(const SpectralBasis& basis) {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.dim());
  // p = beta^{-1/2} h_1(p): coefficient at (q const, n = 1, l = 0)
  std::vector<int> ls(basis.model().m, 0);
  rhs[basis.flatten(0, 1, ls)] = 1.0 / std::sqrt(basis.model().beta);
  return rhs;
}

PoissonSolution solve_poisson(const SpectralBasis& basis,
                              const OperatorMatrix& L,
                              const Eigen::VectorXd& rhs, double tol) {
  require(L.basis_fingerprint == basis.fingerprint(), ErrorKind::invalid_argument,
          "solve_poisson: operator was assembled on a different basis");
  require(rhs.size() == basis.dim(), ErrorKind::dimension_mismatch,
          "solve_poisson: rhs has wrong dimension");
  const double rnorm = rhs.norm();
  require(std::abs(rhs[0]) <= 1e-12 * std::max(1.0, rnorm), ErrorKind::domain,
          "solve_poisson: rhs must have zero rho-mean");

  PoissonSolution sol;
  sol.phi = Eigen::VectorXd::Zero(basis.dim());
  if (rnorm == 0) return sol;  // unique mean-zero solution of L phi = 0

  // restrict to the mean-zero subspace: indices 1..dim-1
  const Eigen::Index n = basis.dim() - 1;
  const Eigen::VectorXd b = rhs.tail(n);
  const Eigen::SparseMatrix<double>& A = L.mat;
  LinOp op = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(basis.dim());
    full.tail(n) = x;
    const Eigen::VectorXd y = A * full;
    return y.tail(n);
  };

  // Hermite-degree diagonal preconditioner: sum_j alpha_j l_j, floored at 1
  Eigen::VectorXd inv_diag(n);
  {
    const GleModel& model = basis.model();
    std::vector<int> ls(model.m, 0);
    for (Eigen::Index idx = 1; idx < basis.dim(); ++idx) {
      int kq, nn;
      basis.unflatten(idx, kq, nn, ls);
      double dg = 0.0;
      for (int j = 0; j < model.m; ++j) dg += model.alpha[j] * ls[j];
      inv_diag[idx - 1] = 1.0 / std::max(1.0, dg);
    }
  }

  GmresResult g = gmres(op, b, inv_diag, tol, 220,
                        static_cast<int>(std::min<Eigen::Index>(20000, 8 * n)));
  require(g.converged, ErrorKind::numerical,
          "solve_poisson: GMRES did not converge, relative residual " +
              std::to_string(g.rel_residual));
  sol.phi.tail(n) = g.x;
  sol.rel_residual = g.rel_residual;
  sol.iterations = g.iterations;
  return sol;
}

DiffusionResult diffusion_from_poisson(const SpectralBasis& basis,
                                       const Eigen::VectorXd& phi) {
  const GleModel& model = basis.model();
  DiffusionResult r;
  for (int j = 0; j < model.m; ++j) {
    const double nrm2 = basis.apply_z_deriv(j, phi).squaredNorm();
    const double contrib = model.alpha[j] / model.beta * nrm2;
    r.mode_contributions.push_back(contrib);
    r.D += contrib;
    r.upper_bound += 4.0 / model.beta * model.alpha[j] /
                     (model.lambda[j] * model.lambda[j]);
  }
  require(r.D > 0, ErrorKind::numerical,
          "diffusion_from_poisson: nonpositive D signals a discretization "
          "failure");
  r.bound_holds = r.D > 0 && r.D <= r.upper_bound * (1.0 + 1e-12);
  return r;
}

} // namespace glesim
