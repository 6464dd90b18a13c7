#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "dualmat/dual_scalar.hpp"

namespace dualmat {

using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Thresholds for every approximate decision in the library.
struct ToleranceConfig {
  /// A singular value s is treated as zero when s <= rank_rel_tol * max(m, n) * s_max.
  double rank_rel_tol = 1e-8;
  double eq_abs_tol = 1e-9;
  double eq_rel_tol = 1e-9;

  /// Throws InvalidArgument unless all fields are strictly positive.
  void validate() const;
};

/// Dense dual complex matrix S + D eps. Both parts always share their shape.
class DualMatrix {
 public:
  DualMatrix() = default;
  explicit DualMatrix(CMatrix std_part);
  DualMatrix(CMatrix std_part, CMatrix dual_part);

  static DualMatrix identity(Index n);
  static DualMatrix zero(Index rows, Index cols);
  /// rows x cols matrix with `diag` on its main diagonal.
  static DualMatrix diagonal(std::span<const DualReal> diag, Index rows, Index cols);
  static DualMatrix diagonal(std::span<const DualReal> diag) {
    const auto n = static_cast<Index>(diag.size());
    return diagonal(diag, n, n);
  }

  Index rows() const { return std_.rows(); }
  Index cols() const { return std_.cols(); }
  bool is_square() const { return rows() == cols(); }

  const CMatrix& std_part() const { return std_; }
  const CMatrix& dual_part() const { return dual_; }

  DualComplex operator()(Index i, Index j) const { return {std_(i, j), dual_(i, j)}; }
  void set(Index i, Index j, const DualComplex& v) {
    std_(i, j) = v.std_part;
    dual_(i, j) = v.dual_part;
  }

  /// Conjugate transpose of both parts.
  DualMatrix adjoint() const { return {std_.adjoint(), dual_.adjoint()}; }
  DualMatrix block(Index i, Index j, Index rows, Index cols) const {
    return {std_.block(i, j, rows, cols), dual_.block(i, j, rows, cols)};
  }

  friend DualMatrix operator+(const DualMatrix& a, const DualMatrix& b);
  friend DualMatrix operator-(const DualMatrix& a, const DualMatrix& b);
  friend DualMatrix operator-(const DualMatrix& a) { return {-a.std_, -a.dual_}; }
  /// (A_s B_s) + (A_s B_d + A_d B_s) eps.
  friend DualMatrix operator*(const DualMatrix& a, const DualMatrix& b);
  friend DualMatrix operator*(const DualComplex& s, const DualMatrix& a);

 private:
  CMatrix std_;
  CMatrix dual_;
};

/// [[a, b], [c, d]]; empty blocks are allowed as long as the shapes line up.
DualMatrix assemble(const DualMatrix& a, const DualMatrix& b, const DualMatrix& c,
                    const DualMatrix& d);

struct PartNorms {
  double std_norm = 0;
  double dual_norm = 0;
};

/// Frobenius norm of each part.
PartNorms norms(const DualMatrix& a);

/// Deviation between two matrices, measured separately on each part.
struct Deviation {
  double std_dev = 0;
  double dual_dev = 0;
  double std_scale = 0;
  double dual_scale = 0;

  /// max over parts of dev / (eq_abs_tol + eq_rel_tol * scale); <= 1 means equal.
  double ratio(const ToleranceConfig& tol) const;
};

Deviation deviation(const DualMatrix& x, const DualMatrix& y);
Deviation deviation(const CMatrix& x, const CMatrix& y);
double equality_ratio(const DualMatrix& x, const DualMatrix& y, const ToleranceConfig& tol);
double equality_ratio(const CMatrix& x, const CMatrix& y, const ToleranceConfig& tol);
bool approx_equal(const DualMatrix& x, const DualMatrix& y, const ToleranceConfig& tol);

enum class MatrixClass { hermitian, idempotent, normal, dual_unitary };

/// Tolerance test of the defining identity; throws NotSquare for rectangular input.
bool is_class(const DualMatrix& a, MatrixClass which, const ToleranceConfig& tol = {});

/// A_s^-1 - A_s^-1 A_d A_s^-1 eps. Throws SingularStandardPart.
DualMatrix inverse(const DualMatrix& a, const ToleranceConfig& tol = {});

/// Smallest singular value of A_s at or below the rank threshold.
bool is_rank_deficient(const CMatrix& m, const ToleranceConfig& tol);

void require_square(const DualMatrix& a, const char* what);

}  // namespace dualmat
