#pragma once

#include <Eigen/Dense>

#include "glesim/model.hpp"

namespace glesim {

enum class SchemeKind { euler_maruyama, ou_splitting };

struct IntegratorScheme {
  SchemeKind kind = SchemeKind::ou_splitting;
  double dt = 1e-2;

  void validate(const GleModel& model) const;
};

// Exact one-step law of the linear (p,z) block
//
//   dy = (-M y + f e_p) dt + Q^{1/2} dW,   y = (p, z_1..z_m)
//
// for frozen force f: mean_map = exp(-M dt), force_response =
// int_0^dt exp(-M s) e_p ds, and cov solving the Lyapunov integral
// int_0^dt exp(-M s) Q exp(-M^T s) ds (computed via the Van Loan block
// exponential). cov is symmetric positive semidefinite; cov_sqrt is its
// symmetric PSD square root.
struct OuSplitCache {
  double dt = 0.0;
  std::uint64_t model_fingerprint = 0;
  Eigen::MatrixXd mean_map;
  Eigen::VectorXd force_response;
  Eigen::MatrixXd cov;
  Eigen::MatrixXd cov_sqrt;

  static OuSplitCache build(const GleModel& model, double dt);
};

// generic affine+noise cache for any linear block dy = (-M y + F u) dt + noise,
// noise covariance N N^T; used by the coupled whitenoise integrator
struct LinearBlockCache {
  Eigen::MatrixXd mean_map;       // exp(-M dt)
  Eigen::MatrixXd force_response; // int_0^dt exp(-M s) F ds (one column per input)
  Eigen::MatrixXd cov;
  Eigen::MatrixXd cov_sqrt;

  static LinearBlockCache build(const Eigen::MatrixXd& M,
                                const Eigen::MatrixXd& force_inputs,
                                const Eigen::MatrixXd& noise_cov, double dt);
};

// One Euler-Maruyama step; noise_increments is m x d of Brownian increments
// (variance dt). Drift is evaluated at the incoming state; q is torus-wrapped
// afterwards. Requires dt * max(alpha) <= 0.1 (explicit-scheme stiffness
// guard) and a finite input state.
State step_em(const GleModel& model, const State& state, double dt,
              const Eigen::MatrixXd& noise_increments);

// One Strang step: half q-drift, exact Gaussian (p,z) update with the force
// frozen at the midpoint position, half q-drift. normals is (m+1) x d of
// independent standard normals.
State step_splitting(const GleModel& model, const OuSplitCache& cache,
                     const State& state, const Eigen::MatrixXd& normals);

} // namespace glesim
