#pragma once

#include <map>
#include <optional>
#include <string>

#include "dualmat/hs_decomp.hpp"

namespace dualmat {

/// Which system of defining equations a candidate is checked against.
enum class InverseKind {
  inverse,  // AX = I, XA = I
  ndmpi,    // AXA = A_e, XAX = X, (AX)^* = AX, (XA)^* = XA
  dmpgi,    // AXA = A, XAX = X, (AX)^* = AX, (XA)^* = XA
  dggi,     // AXA = A, XAX = X, AX = XA
};

struct EquationResidual {
  double std_dev = 0;   // Frobenius deviation of the standard parts
  double dual_dev = 0;  // Frobenius deviation of the dual parts
  double ratio = 0;     // deviation over the allowed tolerance; <= 1 passes
};

struct InverseReport {
  std::optional<DualMatrix> value;
  bool exists = false;
  std::map<std::string, EquationResidual> residuals;
};

/// Moore-Penrose inverse through the SVD, singular values below the rank threshold dropped.
CMatrix complex_mp(const CMatrix& m, const ToleranceConfig& tol = {});

/// Group inverse F (G F)^-2 G of a full-rank factorization m = F G; empty when
/// rank(m^2) < rank(m).
std::optional<CMatrix> complex_group_inverse(const CMatrix& m, const ToleranceConfig& tol = {});

/// V [Sigma_1^-1 0; 0 0] U^*; exists for every dual matrix.
DualMatrix ndmpi(const DualSvd& svd);
DualMatrix ndmpi_svd(const DualMatrix& a, const ToleranceConfig& tol = {});
/// U [K^* Sigma_1^-1, 0; L^* Sigma_1^-1, 0] U^*.
DualMatrix ndmpi_hs(const HsDecomposition& h);

/// Group inverse of the essential part, U [K^-1 S^-1, K^-1 S^-1 K^-1 L; 0 0] U^*.
/// Reports nonexistence when K_s is singular.
InverseReport group_inverse_essential(const HsDecomposition& h, const ToleranceConfig& tol = {});

/// A_s^+ - A_s^+ A_d A_s^+ eps.
DualMatrix mpdgi(const DualMatrix& a, const ToleranceConfig& tol = {});

/// Dual Moore-Penrose inverse: closed-form candidate, then all four Penrose
/// equations are verified. A failed check means no DMPGI exists.
InverseReport dmpgi(const DualMatrix& a, const ToleranceConfig& tol = {});

/// Dual group inverse built from A_s^#, then verified. Throws NotSquare.
InverseReport dggi(const DualMatrix& a, const ToleranceConfig& tol = {});

/// Residual of every defining equation of `kind` for the pair (a, x).
InverseReport verify_inverse(const DualMatrix& a, const DualMatrix& x, InverseKind kind,
                             const ToleranceConfig& tol = {});

/// As above for kind ndmpi, with a precomputed essential part.
InverseReport verify_ndmpi(const DualMatrix& a, const DualMatrix& x, const DualMatrix& essential,
                           const ToleranceConfig& tol = {});

}  // namespace dualmat
