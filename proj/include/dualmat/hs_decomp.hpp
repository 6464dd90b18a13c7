#pragma once

#include <vector>

#include "dualmat/dual_svd.hpp"

namespace dualmat {

/// HS block form of a square dual matrix:
///
///   A = U [Sigma_1 K, Sigma_1 L; Sigma_2 M, Sigma_2 N] U^*
///
/// where [K L; M N] = V^* U is dual unitary, Sigma_1 holds the r positive
/// appreciable singular values and Sigma_2 the remaining n - r (infinitesimal
/// or zero) ones. The blocks are not unique; anything derived from them for
/// comparison purposes must be invariant under the unitary freedom.
struct HsDecomposition {
  DualMatrix u;
  std::vector<DualReal> sigma1;
  std::vector<DualReal> sigma2;
  DualMatrix k;  // r x r
  DualMatrix l;  // r x (n - r)
  DualMatrix m;  // (n - r) x r
  DualMatrix n;  // (n - r) x (n - r)

  Index order() const { return u.rows(); }
  Index rank() const { return static_cast<Index>(sigma1.size()); }

  DualMatrix sigma1_matrix() const { return DualMatrix::diagonal(sigma1); }
  DualMatrix sigma2_matrix() const { return DualMatrix::diagonal(sigma2); }
  /// Sigma_1^{-1}; always defined since Sigma_1 is appreciable.
  DualMatrix sigma1_inverse() const;
  /// [K L; M N].
  DualMatrix w() const { return assemble(k, l, m, n); }
};

/// Throws NotSquare; SVD errors propagate.
HsDecomposition hs_decompose(const DualMatrix& a, const ToleranceConfig& tol = {});
HsDecomposition hs_from_svd(const DualSvd& svd);

/// U [Sigma_1 K, Sigma_1 L; 0, 0] U^*.
DualMatrix hs_essential(const HsDecomposition& h);
/// U [Sigma_1 K, Sigma_1 L; Sigma_2 M, Sigma_2 N] U^*.
DualMatrix hs_reconstruct(const HsDecomposition& h);

}  // namespace dualmat
