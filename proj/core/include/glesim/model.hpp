#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "glesim/potential.hpp"

namespace glesim {

enum class DomainKind { torus, confining };

inline double wrap_torus(double q) {
  const double L = 6.283185307179586476925286766559;
  double x = std::fmod(q, L);
  if (x < 0) x += L;
  return x;
}

// Full parameter set of the quasi-Markovian model
//
//   dq = p dt
//   dp = (-grad V(q) + sum_j lambda_j z_j) dt
//   dz_j = (-lambda_j p - alpha_j z_j) dt + sqrt(2 alpha_j / beta) dW_j
//
// with memory kernel gamma(t) = sum_j lambda_j^2 exp(-alpha_j |t|).
struct GleModel {
  int d = 1;                 // spatial dimension
  int m = 1;                 // number of auxiliary modes
  Eigen::VectorXd lambda;    // coupling coefficients, size m
  Eigen::VectorXd alpha;     // relaxation rates, size m, all > 0
  double beta = 1.0;         // inverse temperature, > 0
  Potential potential = Potential::cosine(1.0);
  DomainKind domain = DomainKind::torus;

  void validate() const;

  // (p, z) linear-block drift matrix M of size (m+1): dy/dt = -M y with
  // y = (p, z_1..z_m); row 0 is p.
  Eigen::MatrixXd pz_drift_matrix() const;

  // diagonal noise covariance of the (p,z) block: diag(0, 2 alpha_j / beta)
  Eigen::VectorXd pz_noise_diag() const;

  std::string describe() const;
  std::uint64_t fingerprint() const;
};

// Phase point. z is stored as an m x d matrix (mode j, coordinate i).
struct State {
  Eigen::VectorXd q;
  Eigen::VectorXd p;
  Eigen::MatrixXd z;

  static State zero(const GleModel& model);
  bool finite() const;
};

// gamma_m(t) = sum_j lambda_j^2 exp(-alpha_j |t|); even in t.
double kernel_eval(const GleModel& model, double t);

// integral of the kernel over [0, inf) = sum_j lambda_j^2 / alpha_j;
// equals the white-noise friction coefficient.
double kernel_mass(const GleModel& model);

// lambda_j -> lambda_j / sqrt(eps), alpha_j -> alpha_j / eps. Kernel mass is
// invariant; requires eps > 0.
GleModel rescale_whitenoise(const GleModel& model, double eps);

} // namespace glesim
