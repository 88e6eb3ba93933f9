#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "glesim/model.hpp"

namespace glesim {

struct BasisSize {
  int nq = 16;  // Fourier modes -nq..nq (torus) or Hermite order (confining)
  int np = 16;  // Hermite order in p
  int nz = 8;   // Hermite order per z_j
};

// Tensor basis for L2 of the stationary measure, d = 1:
//
//   q  torus: trigonometric polynomials {1, cos kq, sin kq} Gram-Schmidt
//      orthonormalized against the weight exp(-beta V)/Z (Cholesky of the
//      Toeplitz-structured Gram matrix, quadrature-assembled); the first
//      basis function is the constant.
//   q  confining quadratic: Hermite functions of N(0, 1/(beta k)).
//   p, z_j: Hermite functions of N(0, 1/beta), exact ladder matrices.
//
// Basis index 0 is the constant function, so the rho-mean of u is its 0th
// coefficient and the mean-zero subspace is {c_0 = 0}.
class SpectralBasis {
public:
  SpectralBasis(const GleModel& model, BasisSize size,
                std::size_t max_dim = 200000);

  const GleModel& model() const { return model_; }
  const BasisSize& size() const { return size_; }
  int qsize() const { return qsize_; }
  int psize() const { return size_.np + 1; }
  int zsize() const { return size_.nz + 1; }
  Eigen::Index dim() const { return dim_; }

  Eigen::Index flatten(int kq, int n, const std::vector<int>& ls) const;
  void unflatten(Eigen::Index idx, int& kq, int& n, std::vector<int>& ls) const;

  // q-factor operator blocks in the orthonormal basis
  const Eigen::MatrixXd& q_deriv() const { return q_deriv_; }
  const Eigen::MatrixXd& q_mult_vprime() const { return q_mult_vprime_; }

  // Hermite ladder blocks (orthonormal under N(0, 1/beta_eff)):
  // deriv[n-1, n] = sqrt(beta_eff n); mult[n+1, n] = sqrt((n+1)/beta_eff),
  // mult[n-1, n] = sqrt(n/beta_eff)
  static Eigen::MatrixXd hermite_deriv(int sz, double beta_eff);
  static Eigen::MatrixXd hermite_mult(int sz, double beta_eff);

  // coefficient-space application of single-variable derivatives
  Eigen::VectorXd apply_q_deriv(const Eigen::VectorXd& u) const;
  Eigen::VectorXd apply_p_deriv(const Eigen::VectorXd& u) const;
  Eigen::VectorXd apply_z_deriv(int j, const Eigen::VectorXd& u) const;

  // max |<psi_i, psi_j> - delta_ij| over a quadrature-checked q-subset
  double orthonormality_residual() const;

  // fraction of squared mass carried by indices whose degree exceeds the
  // given fractions of the per-direction maxima
  double tail_mass_fraction(const Eigen::VectorXd& u, double frac) const;

  std::uint64_t fingerprint() const { return fingerprint_; }

private:
  GleModel model_;
  BasisSize size_;
  int qsize_ = 0;
  Eigen::Index dim_ = 0;
  std::uint64_t fingerprint_ = 0;
  Eigen::MatrixXd q_deriv_;
  Eigen::MatrixXd q_mult_vprime_;
  Eigen::MatrixXd q_gram_residual_;  // T^T G T for the orthonormality check

  std::vector<Eigen::Index> z_strides_;
  Eigen::Index p_stride_ = 0, q_stride_ = 0;

  void build_torus_q();
  void build_confining_q();
};

} // namespace glesim
