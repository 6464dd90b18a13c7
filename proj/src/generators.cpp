#include "dualmat/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "random_util.hpp"

namespace dualmat {

namespace {

using detail::Rng;

constexpr std::array<std::pair<GeneratorKind, std::string_view>, 12> kKindNames{{
    {GeneratorKind::general, "general"},
    {GeneratorKind::hermitian, "hermitian"},
    {GeneratorKind::normal, "normal"},
    {GeneratorKind::new_dual_ep, "new_dual_ep"},
    {GeneratorKind::dual_unitary, "dual_unitary"},
    {GeneratorKind::invertible_std, "invertible_std"},
    {GeneratorKind::pure_infinitesimal, "pure_infinitesimal"},
    {GeneratorKind::rank_deficient, "rank_deficient"},
    {GeneratorKind::repeated_singular, "repeated_singular"},
    {GeneratorKind::partial_isometry, "partial_isometry"},
    {GeneratorKind::ndmpi_idempotent, "ndmpi_idempotent"},
    {GeneratorKind::nilpotent, "nilpotent"},
}};

Index uniform_index(Index lo, Index hi, Rng& rng) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

double uniform(double lo, double hi, Rng& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

DualMatrix dual_unitary(Index n, Rng& rng) {
  const CMatrix us = detail::haar_unitary(n, rng);
  return {us, us * detail::skew_hermitian(n, rng)};
}

DualReal positive_appreciable(Rng& rng) { return {uniform(0.5, 3.0, rng), normal(rng)}; }

/// Positive infinitesimal with probability `p_nonzero`, exact zero otherwise.
DualReal infinitesimal_or_zero(double p_nonzero, Rng& rng) {
  if (uniform(0.0, 1.0, rng) < p_nonzero) return {0.0, uniform(0.5, 2.0, rng)};
  return {};
}

/// U diag(sigma1, sigma2) W U^*.
DualMatrix hs_form(const DualMatrix& u, const std::vector<DualReal>& sigma, const DualMatrix& w) {
  return u * DualMatrix::diagonal(sigma) * w * u.adjoint();
}

DualMatrix make_hermitian(Index n, Rng& rng) {
  switch (uniform_index(0, 2, rng)) {
    case 0:
      return {detail::hermitian(n, rng), detail::hermitian(n, rng)};
    case 1: {
      // Rank-deficient standard part under a generic Hermitian dual part.
      const Index k = uniform_index(0, n - 1, rng);
      const CMatrix us = detail::haar_unitary(n, rng);
      Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
      for (Index i = 0; i < k; ++i) {
        lambda(i) = uniform(0.5, 3.0, rng) * (uniform(0.0, 1.0, rng) < 0.5 ? -1.0 : 1.0);
      }
      const CMatrix hs = us * lambda.cast<Complex>().asDiagonal() * us.adjoint();
      return {hs, detail::hermitian(n, rng)};
    }
    default: {
      // U Lambda U^* with real dual eigenvalues, some infinitesimal or zero.
      const DualMatrix u = dual_unitary(n, rng);
      DualMatrix d = DualMatrix::zero(n, n);
      for (Index i = 0; i < n; ++i) {
        const double pick = uniform(0.0, 1.0, rng);
        const double sign = uniform(0.0, 1.0, rng) < 0.5 ? -1.0 : 1.0;
        if (pick < 0.6) {
          d.set(i, i, {sign * uniform(0.5, 3.0, rng), normal(rng)});
        } else if (pick < 0.85) {
          d.set(i, i, {0.0, sign * uniform(0.5, 2.0, rng)});
        }
      }
      return u * d * u.adjoint();
    }
  }
}

DualMatrix make_normal(Index n, Rng& rng) {
  const DualMatrix u = dual_unitary(n, rng);
  DualMatrix d = DualMatrix::zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const double pick = uniform(0.0, 1.0, rng);
    const Complex dual(normal(rng), normal(rng));
    if (pick < 0.7) {
      const double radius = uniform(0.5, 3.0, rng);
      const double angle = uniform(-std::numbers::pi, std::numbers::pi, rng);
      d.set(i, i, {std::polar(radius, angle), dual});
    } else if (pick < 0.9) {
      d.set(i, i, {Complex{}, dual});
    }
  }
  return u * d * u.adjoint();
}

DualMatrix make_new_dual_ep(Index n, Rng& rng) {
  const Index r = uniform_index(1, n, rng);
  std::vector<DualReal> sigma;
  for (Index i = 0; i < r; ++i) sigma.push_back(positive_appreciable(rng));
  for (Index i = r; i < n; ++i) sigma.push_back(infinitesimal_or_zero(0.6, rng));
  const DualMatrix k = dual_unitary(r, rng);
  const DualMatrix nblk = dual_unitary(n - r, rng);
  const DualMatrix w = assemble(k, DualMatrix::zero(r, n - r), DualMatrix::zero(n - r, r), nblk);
  return hs_form(dual_unitary(n, rng), sigma, w);
}

DualMatrix make_partial_isometry(Index n, Rng& rng) {
  const Index r = uniform_index(1, n, rng);
  std::vector<DualReal> sigma(static_cast<std::size_t>(n), DualReal{});
  for (Index i = 0; i < r; ++i) sigma[i] = DualReal{1.0, 0.0};
  return hs_form(dual_unitary(n, rng), sigma, dual_unitary(n, rng));
}

DualMatrix make_ndmpi_idempotent(Index n, Rng& rng) {
  const Index r = uniform_index(1, n, rng);
  const Index paired = uniform_index(0, std::min(r, n - r), rng);
  DualMatrix w = DualMatrix::zero(n, n);
  std::vector<DualReal> sigma(static_cast<std::size_t>(n), DualReal{});
  for (Index i = 0; i < r; ++i) {
    if (i < paired) {
      // Dual rotation by theta + phi eps: cos and sin expanded to first order.
      const double theta = uniform(0.2, 1.3, rng);
      const double phi = normal(rng);
      const DualComplex c{std::cos(theta), -phi * std::sin(theta)};
      const DualComplex s{std::sin(theta), phi * std::cos(theta)};
      w.set(i, i, c);
      w.set(i, r + i, s);
      w.set(r + i, i, -s);
      w.set(r + i, r + i, c);
      sigma[i] = {c.std_part.real(), c.dual_part.real()};
    } else {
      w.set(i, i, DualComplex{1.0});
      sigma[i] = {1.0, 0.0};
    }
  }
  const Index rest = n - r - paired;
  const DualMatrix z = dual_unitary(rest, rng);
  for (Index i = 0; i < rest; ++i) {
    for (Index j = 0; j < rest; ++j) w.set(r + paired + i, r + paired + j, z(i, j));
  }
  for (Index i = r; i < n; ++i) sigma[i] = infinitesimal_or_zero(0.5, rng);
  return hs_form(dual_unitary(n, rng), sigma, w);
}

/// U J U^* with J strictly upper triangular in both parts.
// Jordan chains of random lengths with superdiagonal weights in [0.5, 2]; the
// weights are the nonzero singular values, so the result stays well away from
// the rank threshold.
DualMatrix make_nilpotent(Index n, Rng& rng) {
  CMatrix js = CMatrix::Zero(n, n);
  for (Index start = 0; start < n;) {
    const Index len = uniform_index(1, n - start, rng);
    for (Index i = start; i + 1 < start + len; ++i) {
      js(i, i + 1) = std::polar(uniform(0.5, 2.0, rng), uniform(0.0, 2.0 * M_PI, rng));
    }
    start += len;
  }
  const CMatrix jd = detail::gaussian(n, n, rng);
  const DualMatrix u = dual_unitary(n, rng);
  return u * DualMatrix(js, jd) * u.adjoint();
}

DualMatrix make_repeated_singular(Index rows, Index cols, Rng& rng) {
  const Index q = std::min(rows, cols);
  const Index distinct = std::max<Index>(1, uniform_index(1, std::max<Index>(1, q - 1), rng));
  std::vector<double> values;
  for (Index i = 0; i < distinct; ++i) values.push_back(uniform(0.5, 3.0, rng));
  std::vector<double> sigma;
  for (Index i = 0; i < q; ++i) sigma.push_back(values[uniform_index(0, distinct - 1, rng)]);
  if (q >= 3 && uniform(0.0, 1.0, rng) < 0.3) sigma.back() = 0.0;
  std::sort(sigma.rbegin(), sigma.rend());
  CMatrix s = CMatrix::Zero(rows, cols);
  for (Index i = 0; i < q; ++i) s(i, i) = sigma[i];
  const CMatrix us = detail::haar_unitary(rows, rng);
  const CMatrix vs = detail::haar_unitary(cols, rng);
  return {us * s * vs.adjoint(), detail::gaussian(rows, cols, rng)};
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<GeneratorKind> generator_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<GeneratorKind>& all_generator_kinds() {
  static const std::vector<GeneratorKind> kinds = [] {
    std::vector<GeneratorKind> out;
    for (const auto& [k, name] : kKindNames) out.push_back(k);
    return out;
  }();
  return kinds;
}

DualMatrix random_dual_unitary(Index n, std::uint64_t seed) {
  Rng rng(detail::mix_seed(seed));
  return dual_unitary(n, rng);
}

DualMatrix random_dual_matrix(const GeneratorConfig& cfg) {
  if (cfg.n < 1 || cfg.cols < 0) {
    throw Error(ErrorCode::invalid_argument, "generator size must be positive");
  }
  const Index n = cfg.n;
  const Index cols = cfg.cols == 0 ? n : cfg.cols;
  Rng rng(detail::mix_seed(cfg.seed ^ (static_cast<std::uint64_t>(cfg.kind) << 56)));

  switch (cfg.kind) {
    case GeneratorKind::general:
      return {detail::gaussian(n, cols, rng), detail::gaussian(n, cols, rng)};
    case GeneratorKind::pure_infinitesimal:
      return {CMatrix::Zero(n, cols), detail::gaussian(n, cols, rng)};
    case GeneratorKind::rank_deficient: {
      const Index k = uniform_index(0, std::min(n, cols) - 1, rng);
      const CMatrix left = detail::gaussian(n, k, rng);
      const CMatrix right = detail::gaussian(k, cols, rng);
      return {left * right, detail::gaussian(n, cols, rng)};
    }
    case GeneratorKind::repeated_singular:
      return make_repeated_singular(n, cols, rng);
    default:
      break;
  }
  if (cols != n) {
    throw Error(ErrorCode::not_square,
                std::string("generator kind ") + std::string(to_string(cfg.kind)) +
                    " produces square matrices only");
  }
  switch (cfg.kind) {
    case GeneratorKind::hermitian:
      return make_hermitian(n, rng);
    case GeneratorKind::normal:
      return make_normal(n, rng);
    case GeneratorKind::new_dual_ep:
      return make_new_dual_ep(n, rng);
    case GeneratorKind::dual_unitary:
      return dual_unitary(n, rng);
    case GeneratorKind::invertible_std: {
      Eigen::VectorXd s(n);
      for (Index i = 0; i < n; ++i) s(i) = uniform(0.5, 3.0, rng);
      const CMatrix us = detail::haar_unitary(n, rng);
      const CMatrix vs = detail::haar_unitary(n, rng);
      return {us * s.cast<Complex>().asDiagonal() * vs.adjoint(), detail::gaussian(n, n, rng)};
    }
    case GeneratorKind::partial_isometry:
      return make_partial_isometry(n, rng);
    case GeneratorKind::ndmpi_idempotent:
      return make_ndmpi_idempotent(n, rng);
    case GeneratorKind::nilpotent:
      return make_nilpotent(n, rng);
    default:
      break;
  }
  throw Error(ErrorCode::invalid_argument, "unknown generator kind");
}

}  // namespace dualmat
