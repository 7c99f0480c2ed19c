#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ptdarboux/errors.hpp"
#include "ptdarboux/special_fn.hpp"
#include "support/exact_complex.hpp"

using namespace ptdarboux;
using namespace ptdarboux::special;
using ptdarboux::oracle::ExactComplex;

namespace {

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST(GammaComplex, Factorials) {
  EXPECT_NEAR(std::abs(gamma_complex(1.0) - 1.0), 0.0, 1e-15);
  EXPECT_LE(rel_err(gamma_complex(5.0), 24.0), 1e-14);
  EXPECT_LE(rel_err(gamma_complex(0.5), std::sqrt(std::numbers::pi)), 1e-14);
}

TEST(GammaComplex, MatchesHighPrecisionReferenceValues) {
  // mpmath.gamma at 30 digits
  struct Case {
    Complex z, want;
  };
  const Case cases[] = {
      {{2.5, 1.5}, {0.30993622584074135331, 0.73408427362148133942}},
      {{-3.7, 0.2}, {0.1937597216115616782, -0.018836662733468159573}},
      {{10.3, -4.0}, {-318012.42731951998313, -60450.410879119244734}},
      {{0.0, 1.0}, {-0.15494982830181068512, -0.49801566811835604271}},
      {{-5.5, 0.0}, {0.010912654781909862987, 0.0}},
      {{18.2, 3.1}, {-422717973407251.70056, 231273973743160.69362}},
      {{0.1, -7.5}, {6.5771359549507268018e-6, -5.4855667375453250131e-6}},
  };
  for (const auto& c : cases) EXPECT_LE(rel_err(gamma_complex(c.z), c.want), 1e-12) << c.z;
}

TEST(GammaComplex, PolesAreRejected) {
  EXPECT_THROW(gamma_complex(0.0), PoleError);
  EXPECT_THROW(gamma_complex(-3.0), PoleError);
  EXPECT_THROW(gamma_complex(Complex(-7.0 + 5e-13, 0.0)), PoleError);
  EXPECT_NO_THROW(gamma_complex(Complex(-3.0, 1e-6)));
}

TEST(GammaComplex, RecurrenceOnRandomPoints) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> radius(0.0, 10.0), angle(0.0, 2.0 * std::numbers::pi);
  int checked = 0;
  while (checked < 100) {
    const Complex z = std::polar(radius(rng), angle(rng));
    // stay clear of the poles of Gamma(z)
    if (z.real() < 0.5 && std::abs(z - std::round(z.real())) < 0.05) continue;
    EXPECT_LE(rel_err(gamma_complex(z + 1.0), z * gamma_complex(z)), 1e-12) << z;
    ++checked;
  }
}

TEST(Hyp2F1Terminating, LowOrders) {
  const Complex b(1.3, -0.4), c(2.2, 0.7), z(0.3, 0.9);
  EXPECT_EQ(hyp2f1_terminating(0, b, c, z), Complex(1.0));
  EXPECT_LE(rel_err(hyp2f1_terminating(1, b, c, z), 1.0 - b / c * z), 1e-15);
}

TEST(Hyp2F1Terminating, MatchesExactTermSum) {
  const Complex b(2.0, 1.0), c(0.5, 0.0), z(0.3, -0.2);
  const Complex want =
      oracle::exact_hyp2f1_terminating(3, ExactComplex(b), ExactComplex(c), ExactComplex(z)).to_complex();
  EXPECT_LE(rel_err(hyp2f1_terminating(3, b, c, z), want), 1e-13);
}

TEST(Hyp2F1Terminating, RandomCasesMatchExactTermSum) {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> u(-3.0, 3.0), zr(-0.9, 0.9);
  std::uniform_int_distribution<int> order(0, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = order(rng);
    const Complex b(u(rng), u(rng)), c(u(rng), u(rng) + 0.5), z(zr(rng), zr(rng));
    const Complex want =
        oracle::exact_hyp2f1_terminating(m, ExactComplex(b), ExactComplex(c), ExactComplex(z)).to_complex();
    EXPECT_LE(rel_err(hyp2f1_terminating(m, b, c, z), want), 1e-13) << m << " " << b << " " << c << " " << z;
  }
}

TEST(Hyp2F1Terminating, DenominatorPoles) {
  EXPECT_THROW(hyp2f1_terminating(3, 1.0, -1.0, 0.5), PoleError);
  EXPECT_THROW(hyp2f1_terminating(1, 1.0, 0.0, 0.5), PoleError);
  // (c)_k with k < m never reaches c = -5 when m = 3
  EXPECT_NO_THROW(hyp2f1_terminating(3, 1.0, -5.0, 0.5));
  EXPECT_THROW(hyp2f1_terminating(-1, 1.0, 1.0, 0.5), DomainError);
}

TEST(JacobiP, LowDegrees) {
  const Complex a(-6.5, 0.3), b(-2.5, -0.1), y(0.2, 0.7);
  EXPECT_LE(std::abs(jacobi_p(JacobiIndex(0, a, b), y) - 1.0), 1e-14);
  EXPECT_LE(rel_err(jacobi_p(JacobiIndex(1, a, b), y), (a - b) / 2.0 + (1.0 + (a + b) / 2.0) * y), 1e-13);
}

TEST(JacobiP, MatchesRecurrenceAtReferencePoint) {
  const Complex a = -6.5, b = -2.5, y(0.0, 0.7);
  const Complex want =
      oracle::exact_jacobi_recurrence(4, ExactComplex(Complex(a)), ExactComplex(Complex(b)), ExactComplex(Complex(y))).to_complex();
  EXPECT_LE(rel_err(jacobi_p(JacobiIndex(4, a, b), y), want), 1e-12);
}

TEST(JacobiP, RealParametersOnInterval) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> par(-0.9, 3.0), ys(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = par(rng), b = par(rng), y = ys(rng);
    const int n = trial % 11;
    const Complex want =
        oracle::exact_jacobi_recurrence(n, ExactComplex(Complex(a)), ExactComplex(Complex(b)), ExactComplex(Complex(y))).to_complex();
    EXPECT_LE(rel_err(jacobi_p(JacobiIndex(n, a, b), y), want), 1e-12) << n << " " << a << " " << b << " " << y;
  }
}

TEST(JacobiP, RandomComplexArgumentsMatchRecurrence) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> par(-7.0, 3.0), ys(-2.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Complex a(par(rng), 0.5 * ys(rng)), b(par(rng), 0.5 * ys(rng)), y(ys(rng), ys(rng));
    const int n = trial % 11;
    const Complex want = oracle::exact_jacobi_recurrence(n, ExactComplex(a), ExactComplex(b), ExactComplex(y)).to_complex();
    EXPECT_LE(rel_err(jacobi_p(JacobiIndex(n, a, b), y), want), 1e-12) << n << " " << a << " " << b << " " << y;
  }
}

TEST(JacobiP, DegenerateRecurrenceFallsBackToSeries) {
  // alpha + beta = -9 zeroes a leading recurrence coefficient at degree 9
  const Complex a = -6.5, b = -2.5, y(0.3, 0.7);
  const int n = 10;
  Complex binomial = 1.0;
  for (int j = 1; j <= n; ++j) binomial *= (a + static_cast<double>(j)) / static_cast<double>(j);
  const Complex want = binomial * hyp2f1_terminating(n, static_cast<double>(n) + a + b + 1.0, a + 1.0, 0.5 * (1.0 - y));
  EXPECT_LE(rel_err(jacobi_p(JacobiIndex(n, a, b), y), want), 1e-10);
}

TEST(JacobiP, AgreesWithHypergeometricFormAlongTheEigenfunctionPath) {
  // alpha = -2p - 1/2, beta = -2q - 1/2 for (24, 18); y = i sinh x
  const Complex a = -6.5, b = -2.5;
  for (int n = 0; n <= 3; ++n) {
    Complex binomial = 1.0;
    for (int j = 1; j <= n; ++j) binomial *= (a + static_cast<double>(j)) / static_cast<double>(j);
    for (double x : {-6.0, -1.3, 0.0, 0.4, 2.5, 9.0}) {
      const Complex y(0.0, std::sinh(x));
      const Complex want = binomial * hyp2f1_terminating(n, static_cast<double>(n) + a + b + 1.0, a + 1.0, 0.5 * (1.0 - y));
      EXPECT_LE(rel_err(jacobi_p(JacobiIndex(n, a, b), y), want), 1e-12) << n << " " << x;
    }
  }
}

TEST(JacobiP, IntegerAlphaHasNoPole) {
  // (n + alpha choose n) with alpha = -2, n = 3 is finite
  const Complex want = oracle::exact_jacobi_recurrence(3, ExactComplex(Complex(-2.0)), ExactComplex(Complex(0.5)),
                                                       ExactComplex(Complex(0.2, 0.1)))
                           .to_complex();
  EXPECT_LE(rel_err(jacobi_p(JacobiIndex(3, -2.0, 0.5), Complex(0.2, 0.1)), want), 1e-12);
}

TEST(JacobiP, ConjugationSymmetryForRealParameters) {
  const JacobiIndex idx(5, -6.5, -2.5);
  for (const Complex y : {Complex(0.3, 1.2), Complex(-2.0, 0.4), Complex(0.0, 7.5)}) {
    const Complex lhs = jacobi_p(idx, std::conj(y));
    const Complex rhs = std::conj(jacobi_p(idx, y));
    EXPECT_LE(std::abs(lhs - rhs), 1e-14 * std::abs(rhs));
  }
}

TEST(JacobiP, NegativeDegreeRejected) { EXPECT_THROW(JacobiIndex(-1, 0.0, 0.0), DomainError); }

TEST(JacobiPDerivative, LowDegrees) {
  const Complex a(-6.5, 0.0), b(-2.5, 0.0), y(0.4, -0.1);
  EXPECT_EQ(jacobi_p_derivative(JacobiIndex(0, a, b), y), Complex(0.0));
  EXPECT_LE(rel_err(jacobi_p_derivative(JacobiIndex(1, a, b), y), 1.0 + (a + b) / 2.0), 1e-13);
}

TEST(JacobiPDerivative, CentralDifferenceOracle) {
  const JacobiIndex idx(3, -6.5, -2.5);
  const Complex y(0.4, -0.1);
  const double h = 1e-6;
  const Complex fd = (jacobi_p(idx, y + h) - jacobi_p(idx, y - h)) / (2.0 * h);
  EXPECT_LE(rel_err(jacobi_p_derivative(idx, y), fd), 1e-7);
}

TEST(JacobiPDerivative, HigherOrdersIterateTheIdentity) {
  const JacobiIndex idx(5, Complex(-4.2, 0.3), Complex(1.1, -0.6));
  const Complex y(0.3, 0.8);
  const double h = 1e-5;
  const Complex fd2 =
      (jacobi_p_derivative(idx, y + h) - jacobi_p_derivative(idx, y - h)) / (2.0 * h);
  EXPECT_LE(rel_err(jacobi_p_derivative(idx, y, 2), fd2), 1e-7);
  EXPECT_EQ(jacobi_p_derivative(idx, y, 6), Complex(0.0));
  EXPECT_EQ(jacobi_p_derivative(idx, y, 0), jacobi_p(idx, y));
}
