#include "glesim/integrator.hpp"

#include <Eigen/Eigenvalues>

#include "glesim/expm.hpp"

namespace glesim {

void IntegratorScheme::validate(const GleModel& model) const {
  require(dt > 0, ErrorKind::invalid_argument, "scheme.dt must be > 0");
  if (kind == SchemeKind::euler_maruyama) {
    require(dt * model.alpha.maxCoeff() <= 0.1 + 1e-12, ErrorKind::invalid_argument,
            "euler_maruyama requires dt * max(alpha) <= 0.1; use ou_splitting "
            "for stiff (rescaled) models");
  }
}

LinearBlockCache LinearBlockCache::build(const Eigen::MatrixXd& M,
                                         const Eigen::MatrixXd& force_inputs,
                                         const Eigen::MatrixXd& noise_cov,
                                         double dt) {
  const int n = static_cast<int>(M.rows());
  const int nf = static_cast<int>(force_inputs.cols());
  LinearBlockCache c;

  // affine part: exp of [[-M, F],[0,0]] carries both the mean map and the
  // constant-force response, even when M is singular
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + nf, n + nf);
  aug.topLeftCorner(n, n) = -M;
  aug.topRightCorner(n, nf) = force_inputs;
  const Eigen::MatrixXd eaug = expm_pade(aug * dt);
  c.mean_map = eaug.topLeftCorner(n, n);
  c.force_response = eaug.topRightCorner(n, nf);

  // Van Loan: exp of [[-M, Q],[0, M^T]] dt = [[F1, G1],[0, F2]] gives the
  // Lyapunov integral as cov = G1 * F1^T
  Eigen::MatrixXd vl = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  vl.topLeftCorner(n, n) = -M;
  vl.topRightCorner(n, n) = noise_cov;
  vl.bottomRightCorner(n, n) = M.transpose();
  const Eigen::MatrixXd evl = expm_pade(vl * dt);
  Eigen::MatrixXd cov =
      evl.topRightCorner(n, n) * evl.topLeftCorner(n, n).transpose();
  c.cov = 0.5 * (cov + cov.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.cov);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  c.cov_sqrt = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  return c;
}

OuSplitCache OuSplitCache::build(const GleModel& model, double dt) {
  require(dt > 0, ErrorKind::invalid_argument, "ou cache: dt must be > 0");
  Eigen::MatrixXd force = Eigen::MatrixXd::Zero(model.m + 1, 1);
  force(0, 0) = 1.0;
  LinearBlockCache lb = LinearBlockCache::build(
      model.pz_drift_matrix(), force, model.pz_noise_diag().asDiagonal(), dt);
  OuSplitCache c;
  c.dt = dt;
  c.model_fingerprint = model.fingerprint();
  c.mean_map = std::move(lb.mean_map);
  c.force_response = lb.force_response.col(0);
  c.cov = std::move(lb.cov);
  c.cov_sqrt = std::move(lb.cov_sqrt);
  return c;
}

State step_em(const GleModel& model, const State& state, double dt,
              const Eigen::MatrixXd& noise_increments) {
  require(state.finite(), ErrorKind::numerical,
          "step_em: non-finite input state");
  require(noise_increments.rows() == model.m &&
              noise_increments.cols() == model.d,
          ErrorKind::dimension_mismatch, "step_em: noise must be m x d");
  IntegratorScheme{SchemeKind::euler_maruyama, dt}.validate(model);

  State next = state;
  const Eigen::VectorXd gradv = model.potential.grad(state.q);
  next.q = state.q + dt * state.p;
  next.p = state.p - dt * gradv;
  for (int j = 0; j < model.m; ++j) {
    next.p += dt * model.lambda[j] * state.z.row(j).transpose();
    next.z.row(j) =
        state.z.row(j) - dt * (model.lambda[j] * state.p.transpose() +
                               model.alpha[j] * state.z.row(j)) +
        std::sqrt(2.0 * model.alpha[j] / model.beta) *
            noise_increments.row(j);
  }
  if (model.domain == DomainKind::torus)
    for (int i = 0; i < model.d; ++i) next.q[i] = wrap_torus(next.q[i]);
  return next;
}

State step_splitting(const GleModel& model, const OuSplitCache& cache,
                     const State& state, const Eigen::MatrixXd& normals) {
  require(state.finite(), ErrorKind::numerical,
          "step_splitting: non-finite input state");
  require(normals.rows() == model.m + 1 && normals.cols() == model.d,
          ErrorKind::dimension_mismatch,
          "step_splitting: normals must be (m+1) x d");
  require(cache.model_fingerprint == model.fingerprint(),
          ErrorKind::invalid_argument,
          "step_splitting: cache was built for a different model");

  const double dt = cache.dt;
  State next = state;
  Eigen::VectorXd qh = state.q + 0.5 * dt * state.p;
  const Eigen::VectorXd force = -model.potential.grad(qh);

  Eigen::VectorXd y(model.m + 1);
  for (int i = 0; i < model.d; ++i) {
    y[0] = state.p[i];
    for (int j = 0; j < model.m; ++j) y[1 + j] = state.z(j, i);
    y = (cache.mean_map * y + cache.force_response * force[i] +
         cache.cov_sqrt * normals.col(i))
            .eval();
    next.p[i] = y[0];
    for (int j = 0; j < model.m; ++j) next.z(j, i) = y[1 + j];
  }
  next.q = qh + 0.5 * dt * next.p;
  if (model.domain == DomainKind::torus)
    for (int i = 0; i < model.d; ++i) next.q[i] = wrap_torus(next.q[i]);
  return next;
}

} // namespace glesim
