#include "dualmat/dual_svd.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "random_util.hpp"

namespace dualmat {

namespace {

// Self-check bounds. These only catch broken factors; the tight tolerances
// belong to the callers.
constexpr double kKernelCheck = 1e-10;
constexpr double kDualCheck = 1e-6;

bool all_finite(const CMatrix& m) { return m.allFinite(); }

void check_complex_svd(const CMatrix& m, const ComplexSvd& out) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  const double scale = std::max(1.0, m.norm());
  CMatrix s = CMatrix::Zero(rows, cols);
  for (Index i = 0; i < out.sigma.size(); ++i) s(i, i) = out.sigma(i);
  const double recon = (out.u * s * out.v.adjoint() - m).norm();
  const double u_err = (out.u.adjoint() * out.u - CMatrix::Identity(rows, rows)).norm();
  const double v_err = (out.v.adjoint() * out.v - CMatrix::Identity(cols, cols)).norm();
  const double dim = static_cast<double>(std::max<Index>({rows, cols, 1}));
  if (!(recon <= kKernelCheck * dim * scale) || !(u_err <= kKernelCheck * dim) ||
      !(v_err <= kKernelCheck * dim)) {
    throw Error(ErrorCode::convergence_failure, "Jacobi SVD failed its self-check");
  }
}

}  // namespace

ComplexSvd complex_svd(const CMatrix& m, std::optional<std::uint64_t> seed) {
  if (!all_finite(m)) {
    throw Error(ErrorCode::invalid_argument, "matrix has non-finite entries");
  }
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (rows == 0 || cols == 0) {
    return {CMatrix::Identity(rows, rows), Eigen::VectorXd(0), CMatrix::Identity(cols, cols)};
  }

  CMatrix left = CMatrix::Identity(rows, rows);
  CMatrix right = CMatrix::Identity(cols, cols);
  if (seed) {
    detail::Rng rng(detail::mix_seed(*seed));
    left = detail::haar_unitary(rows, rng);
    right = detail::haar_unitary(cols, rng);
  }

  Eigen::JacobiSVD<CMatrix> svd(left.adjoint() * m * right,
                                Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexSvd out{left * svd.matrixU(), svd.singularValues(), right * svd.matrixV()};
  check_complex_svd(m, out);
  return out;
}

DualMatrix DualSvd::sigma_matrix() const {
  return DualMatrix::diagonal(sigma, u.rows(), v.rows());
}

DualMatrix DualSvd::reconstruct() const { return u * sigma_matrix() * v.adjoint(); }

DualSvd dual_svd(const DualMatrix& a, const ToleranceConfig& tol,
                 std::optional<std::uint64_t> seed) {
  tol.validate();
  if (!all_finite(a.std_part()) || !all_finite(a.dual_part())) {
    throw Error(ErrorCode::invalid_argument, "matrix has non-finite entries");
  }
  const Index m = a.rows();
  const Index n = a.cols();
  const Index k = std::min(m, n);
  const double dim = static_cast<double>(std::max(m, n));
  const CMatrix& ad = a.dual_part();

  const ComplexSvd base = complex_svd(a.std_part(), seed);
  CMatrix u = base.u;
  CMatrix v = base.v;

  const double s_max = k > 0 ? base.sigma(0) : 0.0;
  const double rank_threshold = tol.rank_rel_tol * dim * s_max;
  Index r = 0;
  while (r < k && base.sigma(r) > rank_threshold) ++r;

  // Standard singular values, grouped by (relative) equality and snapped to
  // the group mean so that the dual order inside a group is decided by the
  // dual parts alone.
  std::vector<double> s(static_cast<std::size_t>(k), 0.0);
  std::vector<Index> group_of(static_cast<std::size_t>(k), -1);
  std::vector<std::pair<Index, Index>> groups;
  for (Index i = 0; i < r;) {
    Index j = i + 1;
    while (j < r && base.sigma(i) - base.sigma(j) <= tol.rank_rel_tol * base.sigma(i)) ++j;
    const double mean = base.sigma.segment(i, j - i).mean();
    for (Index l = i; l < j; ++l) {
      s[l] = mean;
      group_of[l] = static_cast<Index>(groups.size());
    }
    groups.emplace_back(i, j);
    i = j;
  }

  std::vector<double> sd(static_cast<std::size_t>(k), 0.0);
  std::vector<bool> from_eig(static_cast<std::size_t>(k), false);

  // Inside a group of equal sigma, the Hermitian part of the coupling block
  // must be diagonal; rotate both factors by its eigenvectors.
  CMatrix b = u.adjoint() * ad * v;
  for (const auto& [g0, g1] : groups) {
    const Index g = g1 - g0;
    if (g == 1) continue;
    const CMatrix block = b.block(g0, g0, g, g);
    const CMatrix herm = (block + block.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm);
    if (eig.info() != Eigen::Success) {
      throw Error(ErrorCode::degenerate_coupling,
                  "eigen-decomposition of a repeated singular value block did not converge");
    }
    const CMatrix rot = eig.eigenvectors().rowwise().reverse().eval();
    for (Index l = 0; l < g; ++l) {
      sd[g0 + l] = eig.eigenvalues()(g - 1 - l);
      from_eig[g0 + l] = true;
    }
    u.middleCols(g0, g) = (u.middleCols(g0, g) * rot).eval();
    v.middleCols(g0, g) = (v.middleCols(g0, g) * rot).eval();
  }

  // Zero group: the corresponding block of the coupling carries the
  // infinitesimal singular values.
  Index t = r;
  if (m > r && n > r) {
    b = u.adjoint() * ad * v;
    const ComplexSvd zero_svd = complex_svd(b.bottomRightCorner(m - r, n - r));
    u.rightCols(m - r) = (u.rightCols(m - r) * zero_svd.u).eval();
    v.rightCols(n - r) = (v.rightCols(n - r) * zero_svd.v).eval();
    const double dual_threshold = tol.rank_rel_tol * dim * ad.norm();
    for (Index i = 0; i < zero_svd.sigma.size(); ++i) {
      if (zero_svd.sigma(i) > dual_threshold) {
        sd[r + i] = zero_svd.sigma(i);
        t = r + i + 1;
      }
    }
  }

  b = u.adjoint() * ad * v;

  // First-order coupling B = P Sigma - Sigma Q + Sigma_d with P = U_s^* U_d and
  // Q = V_s^* V_d skew-Hermitian.
  CMatrix p = CMatrix::Zero(m, m);
  CMatrix q = CMatrix::Zero(n, n);
  for (Index i = 0; i < r; ++i) {
    if (!from_eig[i]) sd[i] = b(i, i).real();
    p(i, i) = Complex(0.0, b(i, i).imag() / (2.0 * s[i]));
    q(i, i) = -p(i, i);
  }
  for (Index i = 0; i < r; ++i) {
    for (Index j = i + 1; j < r; ++j) {
      const Complex bij = b(i, j);
      const Complex bji_conj = std::conj(b(j, i));
      if (group_of[i] == group_of[j]) {
        const Complex skew = (bij - bji_conj) * 0.5;
        p(i, j) = skew / (2.0 * s[i]);
        q(i, j) = -p(i, j);
      } else {
        const double den = s[j] * s[j] - s[i] * s[i];
        p(i, j) = (s[j] * bij + s[i] * bji_conj) / den;
        q(i, j) = (s[i] * bij + s[j] * bji_conj) / den;
      }
      p(j, i) = -std::conj(p(i, j));
      q(j, i) = -std::conj(q(i, j));
    }
  }
  for (Index j = 0; j < r; ++j) {
    for (Index i = r; i < std::max(m, n); ++i) {
      if (i < m) {
        p(i, j) = b(i, j) / s[j];
        p(j, i) = -std::conj(p(i, j));
      }
      if (i < n) {
        q(i, j) = std::conj(b(j, i)) / s[j];
        q(j, i) = -std::conj(q(i, j));
      }
    }
  }

  DualSvd out;
  out.u = DualMatrix(u, u * p);
  out.v = DualMatrix(v, v * q);
  out.sigma.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) out.sigma.emplace_back(s[i], sd[i]);
  out.appreciable_rank = r;
  out.nonzero_count = t;

  // Self-validation: broken factors raise rather than leak out.
  const DualMatrix recon = out.reconstruct();
  const double std_err = (recon.std_part() - a.std_part()).norm();
  const double dual_err = (recon.dual_part() - ad).norm();
  const double std_scale = std::max(a.std_part().norm(), 1e-300);
  const double dual_scale = std::max(ad.norm() + a.std_part().norm(), 1e-300);
  const double u_err = (out.u.adjoint() * out.u - DualMatrix::identity(m)).dual_part().norm();
  const double v_err = (out.v.adjoint() * out.v - DualMatrix::identity(n)).dual_part().norm();
  const double gen_scale = 1.0 + p.norm() + q.norm();
  if (!(std_err <= kDualCheck * std_scale + 1e-300)) {
    throw Error(ErrorCode::convergence_failure, "dual SVD standard reconstruction failed");
  }
  if (!(dual_err <= kDualCheck * dual_scale + 1e-300) ||
      !(u_err + v_err <= kDualCheck * gen_scale)) {
    throw Error(ErrorCode::degenerate_coupling, "dual SVD coupling correction failed");
  }
  return out;
}

namespace {

DualMatrix split_part(const DualSvd& svd, bool essential) {
  std::vector<DualReal> diag(svd.sigma.size(), DualReal{});
  for (std::size_t i = 0; i < svd.sigma.size(); ++i) {
    const bool appreciable = static_cast<Index>(i) < svd.appreciable_rank;
    if (appreciable == essential) diag[i] = svd.sigma[i];
  }
  return svd.u * DualMatrix::diagonal(diag, svd.u.rows(), svd.v.rows()) * svd.v.adjoint();
}

}  // namespace

DualMatrix essential_part(const DualSvd& svd) { return split_part(svd, true); }
DualMatrix nonessential_part(const DualSvd& svd) { return split_part(svd, false); }

DualMatrix essential_part(const DualMatrix& a, const ToleranceConfig& tol) {
  return essential_part(dual_svd(a, tol));
}

DualMatrix nonessential_part(const DualMatrix& a, const ToleranceConfig& tol) {
  return nonessential_part(dual_svd(a, tol));
}

}  // namespace dualmat
