#include "glesim/spectral_gap.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "glesim/krylov.hpp"
#include "glesim/rng.hpp"

namespace glesim {

SpectralGapResult spectral_gap(const SpectralBasis& basis,
                               const OperatorMatrix& L, int krylov_dim,
                               std::uint64_t seed) {
  require(L.basis_fingerprint == basis.fingerprint(), ErrorKind::invalid_argument,
          "spectral_gap: operator was assembled on a different basis");
  const Eigen::Index n = basis.dim() - 1;

  // drop the constant row/column (exactly zero by construction)
  Eigen::SparseMatrix<double> A(n, n);
  {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(L.mat.nonZeros());
    for (int k = 0; k < L.mat.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(L.mat, k); it; ++it)
        if (it.row() > 0 && it.col() > 0)
          trips.emplace_back(it.row() - 1, it.col() - 1, it.value());
    A.setFromTriplets(trips.begin(), trips.end());
  }

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  require(lu.info() == Eigen::Success, ErrorKind::numerical,
          "spectral_gap: sparse LU factorization failed");

  LinOp inv = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return lu.solve(x);
  };

  Eigen::VectorXd v0(n);
  rng::Key key = rng::make_key(seed, 0, rng::Stream::spectral_random);
  for (Eigen::Index i = 0; i < n; ++i) v0[i] = key.normal(i, 0);

  const int m = static_cast<int>(std::min<Eigen::Index>(krylov_dim, n - 1));
  ArnoldiResult ar = arnoldi(inv, v0, m);
  const int k = ar.k;
  const Eigen::MatrixXd Hk = ar.H.topLeftCorner(k, k);
  const double hk1 = k < ar.H.rows() ? std::abs(ar.H(k, k - 1)) : 0.0;

  Eigen::EigenSolver<Eigen::MatrixXd> es(Hk);
  require(es.info() == Eigen::Success, ErrorKind::numerical,
          "spectral_gap: Hessenberg eigensolver failed");

  SpectralGapResult out;
  double gap = 1e300;
  for (int i = 0; i < k; ++i) {
    const std::complex<double> theta = es.eigenvalues()[i];
    if (std::abs(theta) < 1e-14) continue;
    // Ritz residual for the inverse-operator eigenpair
    const double tail = std::abs(es.eigenvectors()(k - 1, i));
    const double resid = hk1 * tail;
    if (resid > 1e-6 * std::abs(theta)) continue;  // unconverged Ritz value
    const std::complex<double> mu = 1.0 / theta;
    out.eigenvalues.push_back(mu);
    if (mu.real() < gap) gap = mu.real();
  }
  require(!out.eigenvalues.empty(), ErrorKind::numerical,
          "spectral_gap: no converged eigenvalues near zero");
  out.gap = gap;
  require(out.gap > 0, ErrorKind::numerical,
          "spectral_gap: nonpositive gap estimate");
  return out;
}

} // namespace glesim
