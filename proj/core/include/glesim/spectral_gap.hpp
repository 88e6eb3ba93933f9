#pragma once

#include <complex>
#include <vector>

#include "glesim/generator_matrix.hpp"

namespace glesim {

struct SpectralGapResult {
  double gap = 0.0;  // smallest real part among nonzero eigenvalues
  std::vector<std::complex<double>> eigenvalues;  // converged Ritz values
};

// Shift-invert Arnoldi around 0 on the mean-zero subspace (sparse LU solve
// per step); the constant mode is removed exactly, so the restricted
// operator is invertible and the extremal Ritz values of L^{-1} give the
// eigenvalues of L closest to zero.
SpectralGapResult spectral_gap(const SpectralBasis& basis,
                               const OperatorMatrix& L, int krylov_dim = 80,
                               std::uint64_t seed = 7);

} // namespace glesim
