#include "dualmat/dual_scalar.hpp"

#include <cmath>

namespace dualmat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_square: return "NotSquare";
    case ErrorCode::singular_standard_part: return "SingularStandardPart";
    case ErrorCode::infinitesimal_division: return "InfinitesimalDivision";
    case ErrorCode::negative_or_infinitesimal_sqrt: return "NegativeOrInfinitesimalSqrt";
    case ErrorCode::convergence_failure: return "ConvergenceFailure";
    case ErrorCode::degenerate_coupling: return "DegenerateCoupling";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

std::weak_ordering operator<=>(const DualReal& a, const DualReal& b) {
  if (a.std_part < b.std_part) return std::weak_ordering::less;
  if (a.std_part > b.std_part) return std::weak_ordering::greater;
  if (a.dual_part < b.dual_part) return std::weak_ordering::less;
  if (a.dual_part > b.dual_part) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

std::weak_ordering compare(const DualReal& a, const DualReal& b) { return a <=> b; }

Magnitude classify(const DualComplex& a) {
  return a.is_appreciable() ? Magnitude::appreciable : Magnitude::infinitesimal;
}

DualComplex conj(const DualComplex& a) { return {std::conj(a.std_part), std::conj(a.dual_part)}; }

namespace {

template <typename T>
Dual<T> pow_impl(const Dual<T>& a, int n) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_argument, "dual power requires a positive exponent");
  }
  T lower{1};  // a_s^(n-1)
  for (int i = 1; i < n; ++i) lower *= a.std_part;
  return {lower * a.std_part, static_cast<double>(n) * lower * a.dual_part};
}

}  // namespace

DualComplex pow(const DualComplex& a, int n) { return pow_impl(a, n); }
DualReal pow(const DualReal& a, int n) { return pow_impl(a, n); }

DualReal sqrt(const DualReal& a) {
  if (a.std_part == 0.0 && a.dual_part == 0.0) return {0.0, 0.0};
  if (a.std_part <= 0.0) {
    throw Error(ErrorCode::negative_or_infinitesimal_sqrt,
                "square root needs a positive appreciable dual number or exact zero");
  }
  const double root = std::sqrt(a.std_part);
  return {root, a.dual_part / (2.0 * root)};
}

DualReal abs(const DualComplex& a) {
  if (a.std_part != Complex{}) {
    const double mod = std::abs(a.std_part);
    // a_s conj(a_d) + a_d conj(a_s) is real; keep only the real part.
    const double num = (a.std_part * std::conj(a.dual_part) + a.dual_part * std::conj(a.std_part)).real();
    return {mod, num / (2.0 * mod)};
  }
  return {0.0, std::abs(a.dual_part)};
}

std::ostream& operator<<(std::ostream& os, const DualReal& a) {
  return os << a.std_part << (a.dual_part < 0 ? " - " : " + ") << std::abs(a.dual_part) << "e";
}

std::ostream& operator<<(std::ostream& os, const DualComplex& a) {
  return os << a.std_part << " + " << a.dual_part << "e";
}

}  // namespace dualmat
