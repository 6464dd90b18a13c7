#include "dualmat/gen_inverse.hpp"

#include <algorithm>

namespace dualmat {

namespace {

EquationResidual residual(const DualMatrix& lhs, const DualMatrix& rhs,
                          const ToleranceConfig& tol) {
  const Deviation dev = deviation(lhs, rhs);
  return {dev.std_dev, dev.dual_dev, dev.ratio(tol)};
}

InverseReport finish(InverseReport report) {
  report.exists = std::all_of(report.residuals.begin(), report.residuals.end(),
                              [](const auto& kv) { return kv.second.ratio <= 1.0; });
  return report;
}

void require_transposed_shape(const DualMatrix& a, const DualMatrix& x) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "candidate inverse must have the transposed shape");
  }
}

struct RankedSvd {
  Eigen::JacobiSVD<CMatrix> svd;
  Index rank = 0;
};

RankedSvd ranked_svd(const CMatrix& m, const ToleranceConfig& tol) {
  RankedSvd out{Eigen::JacobiSVD<CMatrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV), 0};
  const auto& s = out.svd.singularValues();
  if (s.size() == 0) return out;
  const double threshold =
      tol.rank_rel_tol * static_cast<double>(std::max(m.rows(), m.cols())) * s(0);
  while (out.rank < s.size() && s(out.rank) > threshold) ++out.rank;
  return out;
}

}  // namespace

CMatrix complex_mp(const CMatrix& m, const ToleranceConfig& tol) {
  const RankedSvd rs = ranked_svd(m, tol);
  const Index r = rs.rank;
  const CMatrix& u = rs.svd.matrixU();
  const CMatrix& v = rs.svd.matrixV();
  const Eigen::VectorXd inv = rs.svd.singularValues().head(r).cwiseInverse();
  return v.leftCols(r) * inv.asDiagonal() * u.leftCols(r).adjoint();
}

std::optional<CMatrix> complex_group_inverse(const CMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::not_square, "group inverse needs a square matrix");
  }
  const RankedSvd rs = ranked_svd(m, tol);
  const Index r = rs.rank;
  if (r == 0) return CMatrix::Zero(m.rows(), m.cols());
  // m = F G with F = U_r S_r and G = V_r^*; group invertible iff G F is.
  const CMatrix f = rs.svd.matrixU().leftCols(r) * rs.svd.singularValues().head(r).asDiagonal();
  const CMatrix g = rs.svd.matrixV().leftCols(r).adjoint();
  const CMatrix overlap = g * rs.svd.matrixU().leftCols(r);
  const Eigen::JacobiSVD<CMatrix> osvd(overlap);
  const double smallest = osvd.singularValues()(r - 1);
  if (smallest <= tol.rank_rel_tol * static_cast<double>(m.rows())) return std::nullopt;
  const CMatrix gf_inv = (g * f).fullPivLu().inverse();
  return CMatrix(f * gf_inv * gf_inv * g);
}

DualMatrix ndmpi(const DualSvd& svd) {
  const Index m = svd.u.rows();
  const Index n = svd.v.rows();
  std::vector<DualReal> inv(svd.sigma.size(), DualReal{});
  for (Index i = 0; i < svd.appreciable_rank; ++i) inv[i] = DualReal{1.0} / svd.sigma[i];
  return svd.v * DualMatrix::diagonal(inv, n, m) * svd.u.adjoint();
}

DualMatrix ndmpi_svd(const DualMatrix& a, const ToleranceConfig& tol) {
  return ndmpi(dual_svd(a, tol));
}

DualMatrix ndmpi_hs(const HsDecomposition& h) {
  const Index n = h.order();
  const Index r = h.rank();
  const DualMatrix s1_inv = h.sigma1_inverse();
  const DualMatrix inner = assemble(h.k.adjoint() * s1_inv, DualMatrix::zero(r, n - r),
                                    h.l.adjoint() * s1_inv, DualMatrix::zero(n - r, n - r));
  return h.u * inner * h.u.adjoint();
}

InverseReport group_inverse_essential(const HsDecomposition& h, const ToleranceConfig& tol) {
  const Index n = h.order();
  const Index r = h.rank();
  InverseReport report;
  if (r > 0 && is_rank_deficient(h.k.std_part(), tol)) return report;

  DualMatrix x = DualMatrix::zero(n, n);
  if (r > 0) {
    const DualMatrix k_inv = inverse(h.k, tol);
    const DualMatrix top_left = k_inv * h.sigma1_inverse();
    const DualMatrix inner = assemble(top_left, top_left * k_inv * h.l,
                                      DualMatrix::zero(n - r, r), DualMatrix::zero(n - r, n - r));
    x = h.u * inner * h.u.adjoint();
  }
  report = verify_inverse(hs_essential(h), x, InverseKind::dggi, tol);
  report.value = std::move(x);
  return report;
}

DualMatrix mpdgi(const DualMatrix& a, const ToleranceConfig& tol) {
  const CMatrix pinv = complex_mp(a.std_part(), tol);
  return {pinv, -pinv * a.dual_part() * pinv};
}

InverseReport dmpgi(const DualMatrix& a, const ToleranceConfig& tol) {
  const CMatrix& as = a.std_part();
  const CMatrix& ad = a.dual_part();
  const CMatrix pinv = complex_mp(as, tol);
  const CMatrix row_proj = CMatrix::Identity(a.rows(), a.rows()) - as * pinv;
  const CMatrix col_proj = CMatrix::Identity(a.cols(), a.cols()) - pinv * as;
  const CMatrix xd = -pinv * ad * pinv + pinv * pinv.adjoint() * ad.adjoint() * row_proj +
                     col_proj * ad.adjoint() * pinv.adjoint() * pinv;
  DualMatrix x(pinv, xd);
  InverseReport report = verify_inverse(a, x, InverseKind::dmpgi, tol);
  report.value = std::move(x);
  return report;
}

InverseReport dggi(const DualMatrix& a, const ToleranceConfig& tol) {
  require_square(a, "DGGI");
  InverseReport report;
  const auto g = complex_group_inverse(a.std_part(), tol);
  if (!g) return report;
  const CMatrix& as = a.std_part();
  const CMatrix& ad = a.dual_part();
  const CMatrix proj = CMatrix::Identity(a.rows(), a.rows()) - as * *g;
  const CMatrix g2 = *g * *g;
  const CMatrix xd = -*g * ad * *g + g2 * ad * proj + proj * ad * g2;
  DualMatrix x(*g, xd);
  report = verify_inverse(a, x, InverseKind::dggi, tol);
  report.value = std::move(x);
  return report;
}

InverseReport verify_ndmpi(const DualMatrix& a, const DualMatrix& x, const DualMatrix& essential,
                           const ToleranceConfig& tol) {
  require_transposed_shape(a, x);
  const DualMatrix ax = a * x;
  const DualMatrix xa = x * a;
  InverseReport report;
  report.residuals["AXA=Ae"] = residual(ax * a, essential, tol);
  report.residuals["XAX=X"] = residual(xa * x, x, tol);
  report.residuals["(AX)*=AX"] = residual(ax.adjoint(), ax, tol);
  report.residuals["(XA)*=XA"] = residual(xa.adjoint(), xa, tol);
  return finish(std::move(report));
}

InverseReport verify_inverse(const DualMatrix& a, const DualMatrix& x, InverseKind kind,
                             const ToleranceConfig& tol) {
  require_transposed_shape(a, x);
  if (kind == InverseKind::ndmpi) return verify_ndmpi(a, x, essential_part(a, tol), tol);

  const DualMatrix ax = a * x;
  const DualMatrix xa = x * a;
  InverseReport report;
  switch (kind) {
    case InverseKind::inverse:
      require_square(a, "inverse check");
      report.residuals["AX=I"] = residual(ax, DualMatrix::identity(a.rows()), tol);
      report.residuals["XA=I"] = residual(xa, DualMatrix::identity(a.rows()), tol);
      break;
    case InverseKind::dmpgi:
      report.residuals["AXA=A"] = residual(ax * a, a, tol);
      report.residuals["XAX=X"] = residual(xa * x, x, tol);
      report.residuals["(AX)*=AX"] = residual(ax.adjoint(), ax, tol);
      report.residuals["(XA)*=XA"] = residual(xa.adjoint(), xa, tol);
      break;
    case InverseKind::dggi:
      require_square(a, "group inverse check");
      report.residuals["AXA=A"] = residual(ax * a, a, tol);
      report.residuals["XAX=X"] = residual(xa * x, x, tol);
      report.residuals["AX=XA"] = residual(ax, xa, tol);
      break;
    case InverseKind::ndmpi:
      break;
  }
  return finish(std::move(report));
}

}  // namespace dualmat
