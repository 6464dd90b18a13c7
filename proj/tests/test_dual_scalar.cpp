#include <gtest/gtest.h>

#include <random>

#include "dualmat/dual_scalar.hpp"

using namespace dualmat;

namespace {

const Complex I1{0.0, 1.0};

void expect_near(const DualComplex& a, const DualComplex& b, double eps = 1e-12) {
  EXPECT_NEAR(std::abs(a.std_part - b.std_part), 0.0, eps * std::max(1.0, std::abs(b.std_part)));
  EXPECT_NEAR(std::abs(a.dual_part - b.dual_part), 0.0, eps * std::max(1.0, std::abs(b.dual_part)));
}

DualComplex random_dc(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {Complex(g(rng), g(rng)), Complex(g(rng), g(rng))};
}

}  // namespace

TEST(DualScalar, MultiplicationDropsEpsilonSquared) {
  EXPECT_EQ(DualComplex(0.0, 1.0) * DualComplex(0.0, 1.0), DualComplex(0.0, 0.0));
  EXPECT_EQ(DualComplex(1.0, 2.0) * DualComplex(1.0, 0.0), DualComplex(1.0, 2.0));
  EXPECT_EQ(DualComplex(2.0, 3.0) * DualComplex(5.0, 7.0), DualComplex(10.0, 29.0));
}

TEST(DualScalar, Conjugate) {
  EXPECT_EQ(conj(DualComplex(I1, 2.0 * I1)), DualComplex(-I1, -2.0 * I1));
  EXPECT_EQ(conj(DualComplex(3.0, 4.0)), DualComplex(3.0, 4.0));
  EXPECT_EQ(conj(DualComplex(Complex(1, 1), Complex(2, -1))), DualComplex(Complex(1, -1), Complex(2, 1)));
}

TEST(DualScalar, Power) {
  EXPECT_EQ(pow(DualComplex(1.0, 2.0), 3), DualComplex(1.0, 6.0));
  EXPECT_EQ(pow(DualComplex(2.0, 3.0), 2), DualComplex(4.0, 12.0));
  const DualComplex a(Complex(0.3, -1.2), Complex(2.0, 0.5));
  EXPECT_EQ(pow(a, 1), a);
  EXPECT_THROW(pow(a, 0), Error);
}

TEST(DualScalar, PowerMatchesRepeatedProduct) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const DualComplex a = random_dc(rng);
    DualComplex prod = a;
    for (int n = 2; n <= 6; ++n) {
      prod = prod * a;
      expect_near(pow(a, n), prod, 1e-12);
    }
  }
}

TEST(DualScalar, SquareRoot) {
  EXPECT_EQ(sqrt(DualReal(4.0, 4.0)), DualReal(2.0, 1.0));
  EXPECT_EQ(sqrt(DualReal(0.0, 0.0)), DualReal(0.0, 0.0));
  try {
    sqrt(DualReal(0.0, 1.0));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::negative_or_infinitesimal_sqrt);
  }
  EXPECT_THROW(sqrt(DualReal(-1.0, 0.0)), Error);
}

TEST(DualScalar, SquareRootSquaresBack) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.01, 10.0);
  std::normal_distribution<double> g;
  for (int t = 0; t < 500; ++t) {
    const DualReal a(pos(rng), g(rng));
    const DualReal back = pow(sqrt(a), 2);
    EXPECT_NEAR(back.std_part, a.std_part, 1e-12 * a.std_part);
    EXPECT_NEAR(back.dual_part, a.dual_part, 1e-12 * std::max(1.0, std::abs(a.dual_part)));
  }
}

TEST(DualScalar, Modulus) {
  EXPECT_EQ(abs(DualComplex(3.0, 4.0)), DualReal(3.0, 4.0));
  const DualReal r = abs(DualComplex(0.0, Complex(2.0, 1.0)));
  EXPECT_EQ(r.std_part, 0.0);
  EXPECT_NEAR(r.dual_part, std::sqrt(5.0), 1e-15);
  const DualReal q = abs(DualComplex(3.0 * I1, 4.0 * I1));
  EXPECT_NEAR(q.std_part, 3.0, 1e-15);
  EXPECT_NEAR(q.dual_part, 4.0, 1e-15);
}

TEST(DualScalar, ModulusSquaredIsProductWithConjugate) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const DualComplex a = random_dc(rng);
    const DualReal m = abs(a);
    const DualReal sq = m * m;
    const DualComplex aa = a * conj(a);
    EXPECT_NEAR(aa.std_part.imag(), 0.0, 1e-12);
    EXPECT_NEAR(aa.dual_part.imag(), 0.0, 1e-12);
    EXPECT_NEAR(sq.std_part, aa.std_part.real(), 1e-12 * std::max(1.0, sq.std_part));
    EXPECT_NEAR(sq.dual_part, aa.dual_part.real(), 1e-12 * std::max(1.0, std::abs(sq.dual_part)));
  }
}

TEST(DualScalar, LexicographicOrder) {
  EXPECT_EQ(compare(DualReal(1, 5), DualReal(2, -3)), std::weak_ordering::less);
  EXPECT_EQ(compare(DualReal(2, 1), DualReal(2, 3)), std::weak_ordering::less);
  EXPECT_EQ(compare(DualReal(7, 7), DualReal(7, 7)), std::weak_ordering::equivalent);
  EXPECT_TRUE(DualReal(0, 1) > DualReal(0, 0));
  EXPECT_TRUE(DualReal(0, 100) < DualReal(1e-300, -100));
}

TEST(DualScalar, OrderIsTotal) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> small(-2, 2);
  for (int t = 0; t < 2000; ++t) {
    const DualReal a(small(rng), small(rng));
    const DualReal b(small(rng), small(rng));
    const DualReal c(small(rng), small(rng));
    const int count = (a < b) + (a == b) + (a > b);
    EXPECT_EQ(count, 1);
    if (a <= b && b <= c) {
      EXPECT_TRUE(a <= c);
    }
  }
}

TEST(DualScalar, Classify) {
  EXPECT_EQ(classify(DualComplex(1.0, 0.0)), Magnitude::appreciable);
  EXPECT_EQ(classify(DualComplex(0.0, 3.0)), Magnitude::infinitesimal);
  EXPECT_EQ(classify(DualComplex(0.0, 0.0)), Magnitude::infinitesimal);
}

TEST(DualScalar, Division) {
  const DualComplex a(Complex(1, 2), Complex(-3, 0.5));
  const DualComplex b(Complex(0.5, -1), Complex(2, 2));
  expect_near((a / b) * b, a, 1e-14);
  EXPECT_EQ(DualComplex(1.0) / DualComplex(1.0, 1.0), DualComplex(1.0, -1.0));
  try {
    a / DualComplex(0.0, 1.0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infinitesimal_division);
  }
}

TEST(DualScalar, RingAxioms) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 500; ++t) {
    const DualComplex a = random_dc(rng), b = random_dc(rng), c = random_dc(rng);
    expect_near((a * b) * c, a * (b * c), 1e-12);
    expect_near(a * (b + c), a * b + a * c, 1e-12);
    expect_near(a * b, b * a, 1e-15);
  }
}
