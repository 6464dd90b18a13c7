#include "dualmat/hs_decomp.hpp"

namespace dualmat {

DualMatrix HsDecomposition::sigma1_inverse() const {
  std::vector<DualReal> inv;
  inv.reserve(sigma1.size());
  for (const auto& s : sigma1) inv.push_back(DualReal{1.0} / s);
  return DualMatrix::diagonal(inv);
}

HsDecomposition hs_from_svd(const DualSvd& svd) {
  require_square(svd.u, "HS decomposition");
  if (svd.u.rows() != svd.v.rows()) {
    throw Error(ErrorCode::not_square, "HS decomposition needs a square matrix");
  }
  const Index n = svd.u.rows();
  const Index r = svd.appreciable_rank;
  const DualMatrix w = svd.v.adjoint() * svd.u;

  HsDecomposition h;
  h.u = svd.u;
  h.sigma1.assign(svd.sigma.begin(), svd.sigma.begin() + r);
  h.sigma2.assign(svd.sigma.begin() + r, svd.sigma.end());
  h.k = w.block(0, 0, r, r);
  h.l = w.block(0, r, r, n - r);
  h.m = w.block(r, 0, n - r, r);
  h.n = w.block(r, r, n - r, n - r);
  return h;
}

HsDecomposition hs_decompose(const DualMatrix& a, const ToleranceConfig& tol) {
  require_square(a, "HS decomposition");
  return hs_from_svd(dual_svd(a, tol));
}

DualMatrix hs_essential(const HsDecomposition& h) {
  const Index n = h.order();
  const Index r = h.rank();
  const DualMatrix s1 = h.sigma1_matrix();
  const DualMatrix top = assemble(s1 * h.k, s1 * h.l, DualMatrix::zero(n - r, r),
                                  DualMatrix::zero(n - r, n - r));
  return h.u * top * h.u.adjoint();
}

DualMatrix hs_reconstruct(const HsDecomposition& h) {
  const DualMatrix s1 = h.sigma1_matrix();
  const DualMatrix s2 = h.sigma2_matrix();
  const DualMatrix inner = assemble(s1 * h.k, s1 * h.l, s2 * h.m, s2 * h.n);
  return h.u * inner * h.u.adjoint();
}

}  // namespace dualmat
