#pragma once

#include <cstdint>
#include <random>

#include "dualmat/dual_matrix.hpp"

namespace dualmat::detail {

using Rng = std::mt19937_64;

/// splitmix64 finaliser; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Entries with independent standard normal real and imaginary parts, scaled by 1/sqrt(2).
inline CMatrix gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = dist(rng);
      const double im = dist(rng);
      out(i, j) = Complex(re, im) * 0.7071067811865476;
    }
  }
  return out;
}

/// Haar-distributed unitary via QR with the phase of R's diagonal divided out.
inline CMatrix haar_unitary(Index n, Rng& rng) {
  if (n == 0) return CMatrix(0, 0);
  const CMatrix g = gaussian(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

inline CMatrix skew_hermitian(Index n, Rng& rng) {
  const CMatrix g = gaussian(n, n, rng);
  return (g - g.adjoint()) * 0.5;
}

inline CMatrix hermitian(Index n, Rng& rng) {
  const CMatrix g = gaussian(n, n, rng);
  return (g + g.adjoint()) * 0.5;
}

}  // namespace dualmat::detail
