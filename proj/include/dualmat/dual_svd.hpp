#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dualmat/dual_matrix.hpp"

namespace dualmat {

/// Ordinary SVD m = u diag(sigma) v^*, sigma descending, u and v square unitary.
struct ComplexSvd {
  CMatrix u;
  Eigen::VectorXd sigma;
  CMatrix v;
};

/// Jacobi SVD with full factors. With a seed, the input is first rotated by a
/// random unitary so that null-space bases and phases differ between seeds.
/// Throws ConvergenceFailure if the factors fail their self-check.
ComplexSvd complex_svd(const CMatrix& m, std::optional<std::uint64_t> seed = std::nullopt);

/// A = U Sigma V^* with dual unitary U (m x m) and V (n x n).
///
/// `sigma` has min(m, n) entries in descending dual order: the first
/// `appreciable_rank` are positive appreciable, the next
/// `nonzero_count - appreciable_rank` are positive infinitesimal, the rest are
/// exactly zero.
struct DualSvd {
  DualMatrix u;
  std::vector<DualReal> sigma;
  DualMatrix v;
  Index appreciable_rank = 0;
  Index nonzero_count = 0;

  /// The m x n dual diagonal matrix.
  DualMatrix sigma_matrix() const;
  DualMatrix reconstruct() const;
};

DualSvd dual_svd(const DualMatrix& a, const ToleranceConfig& tol = {},
                 std::optional<std::uint64_t> seed = std::nullopt);

/// U [Sigma_1 0; 0 0] V^*.
DualMatrix essential_part(const DualSvd& svd);
/// U [0 0; 0 Sigma_2] V^*; its standard part is identically zero.
DualMatrix nonessential_part(const DualSvd& svd);

DualMatrix essential_part(const DualMatrix& a, const ToleranceConfig& tol = {});
DualMatrix nonessential_part(const DualMatrix& a, const ToleranceConfig& tol = {});

}  // namespace dualmat
