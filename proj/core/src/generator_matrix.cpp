#include "glesim/generator_matrix.hpp"

#include <vector>

namespace glesim {

namespace {

struct FactorEntry {
  int row, col;
  double value;
};

using FactorNnz = std::vector<FactorEntry>;

FactorNnz dense_nnz(const Eigen::MatrixXd& m, double threshold = 1e-15) {
  FactorNnz out;
  const double scale = m.cwiseAbs().maxCoeff();
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > threshold * std::max(1.0, scale))
        out.push_back({i, j, m(i, j)});
  return out;
}

FactorNnz identity_nnz(int sz) {
  FactorNnz out;
  out.reserve(sz);
  for (int i = 0; i < sz; ++i) out.push_back({i, i, 1.0});
  return out;
}

// Kronecker product term over the (q, p, z_1..z_m) factors, accumulated into
// triplets. factors[f] == nullptr means identity on that factor.
void add_kron(std::vector<Eigen::Triplet<double>>& trips, double coeff,
              const std::vector<const Eigen::MatrixXd*>& factors,
              const std::vector<int>& sizes,
              const std::vector<Eigen::Index>& strides) {
  const int nf = static_cast<int>(factors.size());
  std::vector<FactorNnz> nnz(nf);
  for (int f = 0; f < nf; ++f)
    nnz[f] = factors[f] ? dense_nnz(*factors[f]) : identity_nnz(sizes[f]);

  std::vector<std::size_t> cursor(nf, 0);
  while (true) {
    Eigen::Index row = 0, col = 0;
    double val = coeff;
    for (int f = 0; f < nf; ++f) {
      const FactorEntry& e = nnz[f][cursor[f]];
      row += e.row * strides[f];
      col += e.col * strides[f];
      val *= e.value;
    }
    if (val != 0.0) trips.emplace_back(row, col, val);
    int f = nf - 1;
    while (f >= 0) {
      if (++cursor[f] < nnz[f].size()) break;
      cursor[f] = 0;
      --f;
    }
    if (f < 0) break;
  }
}

} // namespace

OperatorMatrix assemble_generator(const SpectralBasis& basis) {
  const GleModel& model = basis.model();
  const int m = model.m;
  const double beta = model.beta;

  std::vector<int> sizes = {basis.qsize(), basis.psize()};
  for (int j = 0; j < m; ++j) sizes.push_back(basis.zsize());
  std::vector<Eigen::Index> strides(sizes.size());
  strides.back() = 1;
  for (int f = static_cast<int>(sizes.size()) - 2; f >= 0; --f)
    strides[f] = strides[f + 1] * sizes[f + 1];

  const Eigen::MatrixXd dp = SpectralBasis::hermite_deriv(basis.psize(), beta);
  const Eigen::MatrixXd pm = SpectralBasis::hermite_mult(basis.psize(), beta);
  const Eigen::MatrixXd dz = SpectralBasis::hermite_deriv(basis.zsize(), beta);
  const Eigen::MatrixXd zm = SpectralBasis::hermite_mult(basis.zsize(), beta);

  std::vector<Eigen::Triplet<double>> trips;

  // -p d_q
  {
    std::vector<const Eigen::MatrixXd*> fs(sizes.size(), nullptr);
    fs[0] = &basis.q_deriv();
    fs[1] = &pm;
    add_kron(trips, -1.0, fs, sizes, strides);
  }
  // V'(q) d_p
  {
    std::vector<const Eigen::MatrixXd*> fs(sizes.size(), nullptr);
    fs[0] = &basis.q_mult_vprime();
    fs[1] = &dp;
    add_kron(trips, 1.0, fs, sizes, strides);
  }
  for (int j = 0; j < m; ++j) {
    // -lambda_j z_j d_p
    {
      std::vector<const Eigen::MatrixXd*> fs(sizes.size(), nullptr);
      fs[1] = &dp;
      fs[2 + j] = &zm;
      add_kron(trips, -model.lambda[j], fs, sizes, strides);
    }
    // +lambda_j p d_z_j
    {
      std::vector<const Eigen::MatrixXd*> fs(sizes.size(), nullptr);
      fs[1] = &pm;
      fs[2 + j] = &dz;
      add_kron(trips, model.lambda[j], fs, sizes, strides);
    }
  }
  // dissipative diagonal sum_j alpha_j l_j
  {
    std::vector<int> ls(m, 0);
    for (Eigen::Index idx = 0; idx < basis.dim(); ++idx) {
      int kq, n;
      basis.unflatten(idx, kq, n, ls);
      double diag = 0.0;
      for (int j = 0; j < m; ++j) diag += model.alpha[j] * ls[j];
      if (diag != 0.0) trips.emplace_back(idx, idx, diag);
    }
  }

  OperatorMatrix op;
  op.tag = "L";
  op.basis_fingerprint = basis.fingerprint();
  op.mat.resize(basis.dim(), basis.dim());
  op.mat.setFromTriplets(trips.begin(), trips.end());
  op.mat.prune(1e-300);
  return op;
}

OperatorMatrix assemble_transport(const SpectralBasis& basis) {
  OperatorMatrix full = assemble_generator(basis);
  // subtract the diagonal dissipative part
  const GleModel& model = basis.model();
  std::vector<int> ls(model.m, 0);
  for (Eigen::Index idx = 0; idx < basis.dim(); ++idx) {
    int kq, n;
    basis.unflatten(idx, kq, n, ls);
    double diag = 0.0;
    for (int j = 0; j < model.m; ++j) diag += model.alpha[j] * ls[j];
    if (diag != 0.0) full.mat.coeffRef(idx, idx) -= diag;
  }
  full.mat.prune(1e-300);
  full.tag = "B";
  return full;
}

AccretivityCheck accretivity_check(const SpectralBasis& basis,
                                   const OperatorMatrix& L,
                                   const Eigen::VectorXd& u) {
  AccretivityCheck c;
  c.quadratic_form = u.dot(L.mat * u);
  const GleModel& model = basis.model();
  for (int j = 0; j < model.m; ++j)
    c.dissipation += model.alpha[j] / model.beta *
                     basis.apply_z_deriv(j, u).squaredNorm();
  return c;
}

} // namespace glesim
