#include "glesim/spectral_basis.hpp"

#include <cmath>

#include "glesim/hash.hpp"

namespace glesim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

SpectralBasis::SpectralBasis(const GleModel& model, BasisSize size,
                             std::size_t max_dim)
    : model_(model), size_(size) {
  model_.validate();
  require(model_.d == 1, ErrorKind::domain,
          "spectral basis is restricted to d = 1");
  require(model_.m <= 2, ErrorKind::domain,
          "spectral basis is restricted to m <= 2");
  require(size_.nq >= 1 && size_.np >= 1 && size_.nz >= 1,
          ErrorKind::invalid_argument, "basis orders must be >= 1");

  if (model_.domain == DomainKind::torus) {
    qsize_ = 2 * size_.nq + 1;
    build_torus_q();
  } else {
    require(model_.potential.kind() == PotentialKind::quadratic,
            ErrorKind::domain,
            "confining spectral basis supports quadratic potentials");
    qsize_ = size_.nq + 1;
    build_confining_q();
  }

  Eigen::Index d = qsize_;
  d *= psize();
  for (int j = 0; j < model_.m; ++j) d *= zsize();
  dim_ = d;
  require(static_cast<std::size_t>(dim_) <= max_dim, ErrorKind::budget,
          "basis dimension " + std::to_string(dim_) + " exceeds budget " +
              std::to_string(max_dim));

  z_strides_.assign(model_.m, 1);
  for (int j = model_.m - 2; j >= 0; --j)
    z_strides_[j] = z_strides_[j + 1] * zsize();
  p_stride_ = z_strides_.empty() ? 1 : z_strides_[0] * zsize();
  q_stride_ = p_stride_ * psize();

  fingerprint_ = fnv1a64(model_.describe() + "|basis:" +
                         std::to_string(size_.nq) + "," +
                         std::to_string(size_.np) + "," +
                         std::to_string(size_.nz));
}

Eigen::Index SpectralBasis::flatten(int kq, int n,
                                    const std::vector<int>& ls) const {
  Eigen::Index idx = static_cast<Eigen::Index>(kq) * q_stride_ +
                     static_cast<Eigen::Index>(n) * p_stride_;
  for (int j = 0; j < model_.m; ++j)
    idx += static_cast<Eigen::Index>(ls[j]) * z_strides_[j];
  return idx;
}

void SpectralBasis::unflatten(Eigen::Index idx, int& kq, int& n,
                              std::vector<int>& ls) const {
  kq = static_cast<int>(idx / q_stride_);
  idx %= q_stride_;
  n = static_cast<int>(idx / p_stride_);
  idx %= p_stride_;
  ls.assign(model_.m, 0);
  for (int j = 0; j < model_.m; ++j) {
    ls[j] = static_cast<int>(idx / z_strides_[j]);
    idx %= z_strides_[j];
  }
}

Eigen::MatrixXd SpectralBasis::hermite_deriv(int sz, double beta_eff) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(sz, sz);
  for (int n = 1; n < sz; ++n) d(n - 1, n) = std::sqrt(beta_eff * n);
  return d;
}

Eigen::MatrixXd SpectralBasis::hermite_mult(int sz, double beta_eff) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(sz, sz);
  for (int n = 0; n < sz; ++n) {
    if (n + 1 < sz) x(n + 1, n) = std::sqrt((n + 1) / beta_eff);
    if (n - 1 >= 0) x(n - 1, n) = std::sqrt(n / beta_eff);
  }
  return x;
}

// torus q-factor: raw trig basis t_0 = 1, t_{2k-1} = cos kq, t_{2k} = sin kq;
// Gram, derivative and V'-multiplication matrices by periodic trapezoid
// quadrature against nu = exp(-beta V)/Z, then congruence with the inverse
// Cholesky factor of the Gram matrix.
void SpectralBasis::build_torus_q() {
  const int nb = qsize_;
  const int ng = std::max(2048, 16 * size_.nq);
  const double h = kTwoPi / ng;
  const double beta = model_.beta;
  const Potential& v = model_.potential;

  Eigen::VectorXd w(ng);  // nu at nodes, normalized on the same grid
  double z = 0.0;
  for (int i = 0; i < ng; ++i) {
    w[i] = std::exp(-beta * v.eval1(h * i));
    z += w[i] * h;
  }
  w /= z;

  Eigen::MatrixXd t(ng, nb), dt(ng, nb);
  for (int i = 0; i < ng; ++i) {
    const double q = h * i;
    t(i, 0) = 1.0;
    dt(i, 0) = 0.0;
    for (int k = 1; k <= size_.nq; ++k) {
      t(i, 2 * k - 1) = std::cos(k * q);
      t(i, 2 * k) = std::sin(k * q);
      dt(i, 2 * k - 1) = -k * std::sin(k * q);
      dt(i, 2 * k) = k * std::cos(k * q);
    }
  }
  Eigen::VectorXd vp(ng);
  for (int i = 0; i < ng; ++i) vp[i] = v.grad1(h * i);

  const Eigen::VectorXd wh = w * h;
  Eigen::MatrixXd gram = t.transpose() * wh.asDiagonal() * t;
  Eigen::MatrixXd draw = t.transpose() * wh.asDiagonal() * dt;
  Eigen::MatrixXd vraw =
      t.transpose() * (wh.cwiseProduct(vp)).asDiagonal() * t;

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  require(llt.info() == Eigen::Success, ErrorKind::numerical,
          "q-basis Gram matrix is not positive definite");
  const Eigen::MatrixXd Linv =
      llt.matrixL().solve(Eigen::MatrixXd::Identity(nb, nb));
  q_deriv_ = Linv * draw * Linv.transpose();
  q_mult_vprime_ = Linv * vraw * Linv.transpose();
  q_gram_residual_ = Linv * gram * Linv.transpose() -
                     Eigen::MatrixXd::Identity(nb, nb);
}

void SpectralBasis::build_confining_q() {
  const double beta_eff = model_.beta * model_.potential.stiffness();
  q_deriv_ = hermite_deriv(qsize_, beta_eff);
  q_mult_vprime_ = model_.potential.stiffness() * hermite_mult(qsize_, beta_eff);
  q_gram_residual_ = Eigen::MatrixXd::Zero(qsize_, qsize_);
}

double SpectralBasis::orthonormality_residual() const {
  return q_gram_residual_.cwiseAbs().maxCoeff();
}

Eigen::VectorXd SpectralBasis::apply_q_deriv(const Eigen::VectorXd& u) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  const Eigen::Index nslices = dim_ / qsize_;  // contiguous (p,z) blocks
  // u is laid out q-major: slice s of q-index k occupies k*q_stride_ + s
  for (Eigen::Index s = 0; s < nslices; ++s) {
    for (int ka = 0; ka < qsize_; ++ka) {
      double acc = 0.0;
      for (int kb = 0; kb < qsize_; ++kb)
        acc += q_deriv_(ka, kb) * u[kb * q_stride_ + s];
      out[ka * q_stride_ + s] = acc;
    }
  }
  return out;
}

Eigen::VectorXd SpectralBasis::apply_p_deriv(const Eigen::VectorXd& u) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  const double beta = model_.beta;
  for (Eigen::Index idx = 0; idx < dim_; ++idx) {
    const int n = static_cast<int>((idx / p_stride_) % psize());
    if (n + 1 < psize())
      out[idx] = std::sqrt(beta * (n + 1)) * u[idx + p_stride_];
  }
  return out;
}

Eigen::VectorXd SpectralBasis::apply_z_deriv(int j,
                                             const Eigen::VectorXd& u) const {
  require(j >= 0 && j < model_.m, ErrorKind::invalid_argument,
          "apply_z_deriv: bad mode index");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  const double beta = model_.beta;
  const Eigen::Index stride = z_strides_[j];
  for (Eigen::Index idx = 0; idx < dim_; ++idx) {
    const int l = static_cast<int>((idx / stride) % zsize());
    if (l + 1 < zsize())
      out[idx] = std::sqrt(beta * (l + 1)) * u[idx + stride];
  }
  return out;
}

double SpectralBasis::tail_mass_fraction(const Eigen::VectorXd& u,
                                         double frac) const {
  require(u.size() == dim_, ErrorKind::dimension_mismatch,
          "tail_mass_fraction: wrong vector size");
  const double total = u.squaredNorm();
  if (total == 0) return 0.0;
  const int qcut = static_cast<int>(frac * (qsize_ - 1));
  const int pcut = static_cast<int>(frac * size_.np);
  const int zcut = static_cast<int>(frac * size_.nz);
  double tail = 0.0;
  std::vector<int> ls;
  for (Eigen::Index idx = 0; idx < dim_; ++idx) {
    int kq, n;
    unflatten(idx, kq, n, ls);
    // torus: q-degree of basis function kq is (kq + 1) / 2
    const int qdeg =
        model_.domain == DomainKind::torus ? (kq + 1) / 2 : kq;
    const int qmax =
        model_.domain == DomainKind::torus ? size_.nq : size_.nq;
    bool is_tail = qdeg > static_cast<int>(frac * qmax) || n > pcut;
    for (int j = 0; j < model_.m && !is_tail; ++j)
      if (ls[j] > zcut) is_tail = true;
    (void)qcut;
    if (is_tail) tail += u[idx] * u[idx];
  }
  return tail / total;
}

} // namespace glesim
