#include "dualmat/dual_matrix.hpp"

#include <algorithm>
#include <string>

namespace dualmat {

void ToleranceConfig::validate() const {
  if (!(rank_rel_tol > 0) || !(eq_abs_tol > 0) || !(eq_rel_tol > 0)) {
    throw Error(ErrorCode::invalid_argument, "tolerances must be strictly positive");
  }
}

DualMatrix::DualMatrix(CMatrix std_part)
    : std_(std::move(std_part)), dual_(CMatrix::Zero(std_.rows(), std_.cols())) {}

DualMatrix::DualMatrix(CMatrix std_part, CMatrix dual_part)
    : std_(std::move(std_part)), dual_(std::move(dual_part)) {
  if (std_.rows() != dual_.rows() || std_.cols() != dual_.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "standard and dual parts differ in shape");
  }
}

DualMatrix DualMatrix::identity(Index n) {
  return DualMatrix(CMatrix::Identity(n, n), CMatrix::Zero(n, n));
}

DualMatrix DualMatrix::zero(Index rows, Index cols) {
  return DualMatrix(CMatrix::Zero(rows, cols), CMatrix::Zero(rows, cols));
}

DualMatrix DualMatrix::diagonal(std::span<const DualReal> diag, Index rows, Index cols) {
  if (static_cast<Index>(diag.size()) > std::min(rows, cols)) {
    throw Error(ErrorCode::dimension_mismatch, "diagonal longer than the matrix allows");
  }
  DualMatrix out = zero(rows, cols);
  for (Index i = 0; i < static_cast<Index>(diag.size()); ++i) {
    out.std_(i, i) = diag[i].std_part;
    out.dual_(i, i) = diag[i].dual_part;
  }
  return out;
}

namespace {

void require_same_shape(const DualMatrix& a, const DualMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " does not match " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

DualMatrix operator+(const DualMatrix& a, const DualMatrix& b) {
  require_same_shape(a, b);
  return {a.std_ + b.std_, a.dual_ + b.dual_};
}

DualMatrix operator-(const DualMatrix& a, const DualMatrix& b) {
  require_same_shape(a, b);
  return {a.std_ - b.std_, a.dual_ - b.dual_};
}

DualMatrix operator*(const DualMatrix& a, const DualMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::dimension_mismatch,
                "inner dimensions " + std::to_string(a.cols()) + " and " +
                    std::to_string(b.rows()) + " differ");
  }
  return {a.std_ * b.std_, a.std_ * b.dual_ + a.dual_ * b.std_};
}

DualMatrix operator*(const DualComplex& s, const DualMatrix& a) {
  return {s.std_part * a.std_, s.std_part * a.dual_ + s.dual_part * a.std_};
}

DualMatrix assemble(const DualMatrix& a, const DualMatrix& b, const DualMatrix& c,
                    const DualMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "blocks do not tile a matrix");
  }
  const Index rows = a.rows() + c.rows();
  const Index cols = a.cols() + b.cols();
  CMatrix s(rows, cols), e(rows, cols);
  s << a.std_part(), b.std_part(), c.std_part(), d.std_part();
  e << a.dual_part(), b.dual_part(), c.dual_part(), d.dual_part();
  return {std::move(s), std::move(e)};
}

PartNorms norms(const DualMatrix& a) { return {a.std_part().norm(), a.dual_part().norm()}; }

double Deviation::ratio(const ToleranceConfig& tol) const {
  const double s = std_dev / (tol.eq_abs_tol + tol.eq_rel_tol * std_scale);
  const double d = dual_dev / (tol.eq_abs_tol + tol.eq_rel_tol * dual_scale);
  return std::max(s, d);
}

Deviation deviation(const DualMatrix& x, const DualMatrix& y) {
  require_same_shape(x, y);
  return {(x.std_part() - y.std_part()).norm(), (x.dual_part() - y.dual_part()).norm(),
          std::max(x.std_part().norm(), y.std_part().norm()),
          std::max(x.dual_part().norm(), y.dual_part().norm())};
}

Deviation deviation(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "compared matrices differ in shape");
  }
  return {(x - y).norm(), 0.0, std::max(x.norm(), y.norm()), 0.0};
}

double equality_ratio(const DualMatrix& x, const DualMatrix& y, const ToleranceConfig& tol) {
  return deviation(x, y).ratio(tol);
}

double equality_ratio(const CMatrix& x, const CMatrix& y, const ToleranceConfig& tol) {
  return deviation(x, y).ratio(tol);
}

bool approx_equal(const DualMatrix& x, const DualMatrix& y, const ToleranceConfig& tol) {
  return equality_ratio(x, y, tol) <= 1.0;
}

void require_square(const DualMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw Error(ErrorCode::not_square, std::string(what) + " needs a square matrix, got " +
                                           std::to_string(a.rows()) + "x" +
                                           std::to_string(a.cols()));
  }
}

bool is_class(const DualMatrix& a, MatrixClass which, const ToleranceConfig& tol) {
  require_square(a, "class test");
  switch (which) {
    case MatrixClass::hermitian:
      return approx_equal(a, a.adjoint(), tol);
    case MatrixClass::idempotent:
      return approx_equal(a * a, a, tol);
    case MatrixClass::normal:
      return approx_equal(a * a.adjoint(), a.adjoint() * a, tol);
    case MatrixClass::dual_unitary:
      return approx_equal(a.adjoint() * a, DualMatrix::identity(a.rows()), tol);
  }
  return false;
}

bool is_rank_deficient(const CMatrix& m, const ToleranceConfig& tol) {
  if (m.size() == 0) return false;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double threshold =
      tol.rank_rel_tol * static_cast<double>(std::max(m.rows(), m.cols())) * s(0);
  return s(s.size() - 1) <= threshold;
}

DualMatrix inverse(const DualMatrix& a, const ToleranceConfig& tol) {
  require_square(a, "inverse");
  if (a.rows() == 0) return a;
  if (is_rank_deficient(a.std_part(), tol)) {
    throw Error(ErrorCode::singular_standard_part, "standard part is singular");
  }
  const CMatrix s_inv = a.std_part().fullPivLu().inverse();
  return {s_inv, -s_inv * a.dual_part() * s_inv};
}

}  // namespace dualmat
