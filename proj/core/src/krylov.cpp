#include "glesim/krylov.hpp"

#include <cmath>

#include "glesim/errors.hpp"
#include "glesim/expm.hpp"

namespace glesim {

ArnoldiResult arnoldi(const LinOp& op, const Eigen::VectorXd& v0, int steps,
                      double breakdown_tol) {
  const Eigen::Index n = v0.size();
  ArnoldiResult r;
  r.vnorm = v0.norm();
  require(r.vnorm > 0, ErrorKind::invalid_argument,
          "arnoldi: zero start vector");
  r.V.resize(n, steps + 1);
  r.H = Eigen::MatrixXd::Zero(steps + 1, steps);
  r.V.col(0) = v0 / r.vnorm;
  for (int j = 0; j < steps; ++j) {
    Eigen::VectorXd w = op(r.V.col(j));
    for (int i = 0; i <= j; ++i) {
      const double hij = r.V.col(i).dot(w);
      r.H(i, j) = hij;
      w -= hij * r.V.col(i);
    }
    // second orthogonalization pass
    for (int i = 0; i <= j; ++i) {
      const double c = r.V.col(i).dot(w);
      r.H(i, j) += c;
      w -= c * r.V.col(i);
    }
    const double hnext = w.norm();
    r.H(j + 1, j) = hnext;
    r.k = j + 1;
    if (hnext < breakdown_tol * std::max(1.0, r.H.cwiseAbs().maxCoeff())) {
      r.V.conservativeResize(n, r.k + 1);
      r.H.conservativeResize(r.k + 1, r.k);
      return r;  // happy breakdown: exact invariant subspace
    }
    r.V.col(j + 1) = w / hnext;
  }
  return r;
}

Eigen::VectorXd expm_multiply(const Eigen::SparseMatrix<double>& a,
                              const Eigen::VectorXd& u0, double t,
                              double tol, int krylov_dim) {
  require(t >= 0, ErrorKind::invalid_argument, "expm_multiply: t must be >= 0");
  if (t == 0 || u0.norm() == 0) return u0;
  LinOp op = [&](const Eigen::VectorXd& x) { return a * x; };

  Eigen::VectorXd u = u0;
  double remaining = t;
  int guard = 0;
  while (remaining > 1e-14 * t) {
    require(++guard < 10000, ErrorKind::numerical,
            "expm_multiply failed to advance");
    const int m = std::min<int>(krylov_dim, static_cast<int>(u.size()) - 1);
    ArnoldiResult ar = arnoldi(op, u, m);
    const int k = ar.k;
    const Eigen::MatrixXd Hk = ar.H.topLeftCorner(k, k);
    const double hk1 = ar.H(k, k - 1);
    const bool breakdown = ar.V.cols() == k + 1 && hk1 == 0.0;

    double tau = remaining;
    for (int halvings = 0; halvings < 60; ++halvings) {
      const Eigen::MatrixXd e = expm_pade(-tau * Hk);
      // a-posteriori estimate: next-subspace leakage of the propagated basis
      const double err = breakdown ? 0.0
                                   : std::abs(hk1) * std::abs(e(k - 1, 0)) *
                                         ar.vnorm * tau;
      if (err <= tol * std::max(1.0, ar.vnorm) || tau < 1e-12 * t) {
        u = ar.V.leftCols(k) * (ar.vnorm * e.col(0));
        remaining -= tau;
        break;
      }
      tau *= 0.5;
    }
  }
  return u;
}

GmresResult gmres(const LinOp& op, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& inv_diag, double tol, int restart,
                  int max_iterations) {
  const Eigen::Index n = b.size();
  const double bnorm = b.norm();
  GmresResult res;
  res.x = Eigen::VectorXd::Zero(n);
  if (bnorm == 0) {
    res.converged = true;
    return res;
  }
  const bool precond = inv_diag.size() == n;
  auto apply_m = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return precond ? inv_diag.cwiseProduct(v).eval() : v;
  };

  int total_iters = 0;
  while (total_iters < max_iterations) {
    const Eigen::VectorXd r0 = b - op(res.x);
    const double rnorm = r0.norm();
    res.rel_residual = rnorm / bnorm;
    if (res.rel_residual <= tol) {
      res.converged = true;
      return res;
    }
    const int m = std::min<int>(restart, max_iterations - total_iters);
    Eigen::MatrixXd V(n, m + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd cs = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd sn = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
    V.col(0) = r0 / rnorm;
    g[0] = rnorm;
    int j = 0;
    for (; j < m; ++j) {
      ++total_iters;
      Eigen::VectorXd w = op(apply_m(V.col(j)));
      for (int i = 0; i <= j; ++i) {
        H(i, j) = V.col(i).dot(w);
        w -= H(i, j) * V.col(i);
      }
      for (int i = 0; i <= j; ++i) {  // re-orthogonalize
        const double c = V.col(i).dot(w);
        H(i, j) += c;
        w -= c * V.col(i);
      }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) > 1e-300) V.col(j + 1) = w / H(j + 1, j);
      // apply saved Givens rotations to the new column
      for (int i = 0; i < j; ++i) {
        const double t1 = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        const double t2 = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t1;
        H(i + 1, j) = t2;
      }
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      if (denom == 0) break;
      cs[j] = H(j, j) / denom;
      sn[j] = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      if (std::abs(g[j + 1]) / bnorm <= tol) {
        ++j;
        break;
      }
    }
    if (j > 0) {
      const Eigen::VectorXd y =
          H.topLeftCorner(j, j)
              .triangularView<Eigen::Upper>()
              .solve(g.head(j));
      res.x += apply_m(V.leftCols(j) * y);
    }
    res.iterations = total_iters;
    if (j == 0) break;
  }
  const double final_res = (b - op(res.x)).norm() / bnorm;
  res.rel_residual = final_res;
  res.converged = final_res <= tol;
  return res;
}

} // namespace glesim
