#pragma once

#include <compare>
#include <complex>
#include <ostream>

#include "dualmat/errors.hpp"

namespace dualmat {

using Complex = std::complex<double>;

/// A dual number `std_part + dual_part * eps` with eps^2 = 0.
///
/// `T` is either `double` (dual reals, which carry a total order) or
/// `std::complex<double>` (dual complex numbers, which are never ordered).
template <typename T>
struct Dual {
  T std_part{};
  T dual_part{};

  constexpr Dual() = default;
  constexpr Dual(T s) : std_part(s) {}  // NOLINT: implicit embedding of scalars
  constexpr Dual(T s, T d) : std_part(s), dual_part(d) {}

  /// Appreciable iff the standard part is nonzero; exact test on the stored value.
  constexpr bool is_appreciable() const { return std_part != T{}; }
  constexpr bool is_infinitesimal() const { return std_part == T{}; }

  friend constexpr bool operator==(const Dual&, const Dual&) = default;

  friend constexpr Dual operator+(const Dual& a, const Dual& b) {
    return {a.std_part + b.std_part, a.dual_part + b.dual_part};
  }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) {
    return {a.std_part - b.std_part, a.dual_part - b.dual_part};
  }
  friend constexpr Dual operator-(const Dual& a) { return {-a.std_part, -a.dual_part}; }

  // The eps^2 term is dropped.
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.std_part * b.std_part, a.std_part * b.dual_part + a.dual_part * b.std_part};
  }

  /// Division by an infinitesimal has no meaning and throws.
  friend Dual operator/(const Dual& a, const Dual& b) {
    if (b.std_part == T{}) {
      throw Error(ErrorCode::infinitesimal_division, "division by an infinitesimal dual number");
    }
    const T inv = T{1} / b.std_part;
    return {a.std_part * inv, (a.dual_part * b.std_part - a.std_part * b.dual_part) * inv * inv};
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
};

using DualReal = Dual<double>;
using DualComplex = Dual<Complex>;

enum class Magnitude { appreciable, infinitesimal };

/// Lexicographic order on (standard, dual). Defined for dual reals only.
std::weak_ordering operator<=>(const DualReal& a, const DualReal& b);
std::weak_ordering compare(const DualReal& a, const DualReal& b);

Magnitude classify(const DualComplex& a);
DualComplex conj(const DualComplex& a);

/// Closed form a_s^n + n a_s^(n-1) a_d eps, n >= 1.
DualComplex pow(const DualComplex& a, int n);
DualReal pow(const DualReal& a, int n);

/// Square root of a positive appreciable dual real, or of exact zero.
DualReal sqrt(const DualReal& a);

/// Dual modulus; the result is a nonnegative dual real.
DualReal abs(const DualComplex& a);

inline DualComplex to_complex(const DualReal& a) { return {a.std_part, a.dual_part}; }

std::ostream& operator<<(std::ostream& os, const DualReal& a);
std::ostream& operator<<(std::ostream& os, const DualComplex& a);

}  // namespace dualmat
