// Distributed under the MIT License.
// See LICENSE for details.

#include <gtest/gtest.h>

#include <cmath>

#include "rotstar/math/quadrature.hpp"
#include "rotstar/math/stable.hpp"

namespace rm = rotstar::math;

TEST(ExpmOverX, MatchesDefinitionAndLimit) {
  EXPECT_DOUBLE_EQ(rm::expm1_over_x(0.0), 1.0);
  for (const double x : {1.0, -0.7, 0.3, 1e-3}) {
    EXPECT_NEAR(rm::expm1_over_x(x), std::expm1(x) / x, 1e-15);
  }
  // Tiny argument: (e^x-1)/x = 1 + x/2 + x^2/6 + ...
  const double x = 1e-9;
  EXPECT_NEAR(rm::expm1_over_x(x), 1.0 + x / 2.0 + x * x / 6.0, 1e-16);
}

TEST(Expm1mOverX, SeriesMatchesDirectBranch) {
  // Both branches available near the switch point |x| = 0.5.
  for (const double x : {0.49, -0.49, 0.51, -0.51}) {
    const double direct = (std::expm1(x) - x) / x;
    EXPECT_NEAR(rm::expm1m_over_x(x), direct, 4e-16)
        << "x = " << x;
  }
}

TEST(Expm1mOverX, AccurateForTinyArgument) {
  // (e^x-1-x)/x = x/2 + x^2/6 + x^3/24 + ...; the naive form would lose
  // ~7 digits at x = 1e-7.
  const double x = 1e-7;
  const double expected = x / 2.0 + x * x / 6.0 + x * x * x / 24.0;
  EXPECT_NEAR(rm::expm1m_over_x(x), expected, 1e-22);
  EXPECT_DOUBLE_EQ(rm::expm1m_over_x(0.0), 0.0);
  EXPECT_NEAR(rm::expm1m_over_x(-1e-7), -x / 2.0 + x * x / 6.0, 1e-22);
}

TEST(PowExpm1OverXMinus1, MatchesDirectForModerateArgument) {
  for (const double x : {0.3, -0.4, 0.05}) {
    for (const double p : {1.0, 2.5, 4.0}) {
      const double direct = std::pow(std::expm1(x) / x, p) - 1.0;
      EXPECT_NEAR(rm::pow_expm1_over_x_minus_1(x, p), direct,
                  1e-14 * std::abs(direct) + 1e-16)
          << "x = " << x << ", p = " << p;
    }
  }
}

TEST(PowExpm1OverXMinus1, LeadingOrdersForTinyArgument) {
  // ((e^x-1)/x)^p - 1 = p x/2 + (p/6 + p(p-1)/8) x^2 + O(x^3).
  const double x = 1e-10;
  const double p = 3.5;
  const double got = rm::pow_expm1_over_x_minus_1(x, p);
  const double expected =
      p * x / 2.0 + (p / 6.0 + p * (p - 1.0) / 8.0) * x * x;
  EXPECT_NEAR(got, expected, 1e-12 * std::abs(got));
}

TEST(PosPow, PositivePartSemantics) {
  EXPECT_DOUBLE_EQ(rm::pos_pow(2.0, 1.5), std::pow(2.0, 1.5));
  EXPECT_DOUBLE_EQ(rm::pos_pow(0.0, 1.5), 0.0);
  EXPECT_DOUBLE_EQ(rm::pos_pow(-3.0, 1.5), 0.0);
}

TEST(BinomTail, MatchesLongDoubleDirect) {
  for (const double p : {1.5, 2.5, 3.75}) {
    for (const double s : {0.3, -0.2, 0.049, -0.049}) {
      const long double direct =
          std::pow(1.0L + static_cast<long double>(s), p) - 1.0L -
          static_cast<long double>(p) * s;
      EXPECT_NEAR(rm::binom_tail(p, s), static_cast<double>(direct),
                  2e-15 * std::abs(static_cast<double>(direct)) + 1e-18)
          << "p = " << p << ", s = " << s;
    }
  }
}

TEST(BinomTail, BranchesAgreeNearSwitchPoint) {
  // Points straddling the |s| = 0.5 branch switch, both checked against a
  // long-double reference.
  const double p = 2.3;
  for (const double s : {0.49, 0.51, -0.49, -0.51}) {
    const long double direct =
        std::pow(1.0L + static_cast<long double>(s), p) - 1.0L -
        static_cast<long double>(p) * s;
    EXPECT_NEAR(rm::binom_tail(p, s), static_cast<double>(direct),
                1e-14 * std::abs(static_cast<double>(direct)))
        << "s = " << s;
  }
}

TEST(BinomTail, QuadraticLeadingOrder) {
  const double p = 2.5;
  const double s = 1e-7;
  const double lead = 0.5 * p * (p - 1.0) * s * s;
  EXPECT_NEAR(rm::binom_tail(p, s), lead, 1e-6 * lead);
}

TEST(PosPowRemainder, AgreesWithDirectEvaluationAwayFromCancellation) {
  const double p = 2.5;
  // theta > 0, |d| comparable to theta: direct formula is fine.
  const double theta = 0.8;
  const double d = -0.3;
  const double direct = std::pow(theta + d, p) - std::pow(theta, p) -
                        p * std::pow(theta, p - 1.0) * d;
  EXPECT_NEAR(rm::pos_pow_remainder(theta, d, p), direct, 1e-15);
}

TEST(PosPowRemainder, AccurateForSmallPerturbation) {
  const double p = 2.5;
  const double theta = 0.6;
  const double d = 1e-8;
  // Leading term p(p-1)/2 theta^{p-2} d^2.
  const double lead = 0.5 * p * (p - 1.0) * std::pow(theta, p - 2.0) * d * d;
  const double got = rm::pos_pow_remainder(theta, d, p);
  EXPECT_NEAR(got, lead, 1e-6 * lead);
}

TEST(PosPowRemainder, SurfaceCrossingCases) {
  const double p = 2.5;
  // theta <= 0: the subtracted terms vanish.
  EXPECT_DOUBLE_EQ(rm::pos_pow_remainder(-0.1, 0.3, p),
                   std::pow(0.2, p));
  EXPECT_DOUBLE_EQ(rm::pos_pow_remainder(0.0, 0.3, p), std::pow(0.3, p));
  EXPECT_DOUBLE_EQ(rm::pos_pow_remainder(-0.1, 0.05, p), 0.0);
  // theta > 0 but theta + d < 0: positive part clips the first term.
  const double theta = 0.01;
  const double d = -0.02;
  const double direct =
      0.0 - std::pow(theta, p) - p * std::pow(theta, p - 1.0) * d;
  EXPECT_NEAR(rm::pos_pow_remainder(theta, d, p), direct, 1e-15);
}

TEST(KummerS, ValueAtZeroAndRecurrence) {
  for (const double a : {1.0, 2.4, 7.0}) {
    EXPECT_DOUBLE_EQ(rm::kummer_s(a, 0.0), 1.0 / a);
    // S(a,x) = 1/a + (x/a) S(a+1,x).
    for (const double x : {0.3, -0.5, 1.0}) {
      EXPECT_NEAR(rm::kummer_s(a, x),
                  (1.0 + x * rm::kummer_s(a + 1.0, x)) / a, 1e-15)
          << "a = " << a << ", x = " << x;
    }
  }
}

TEST(KummerS, IntegralRepresentation) {
  // integral_0^u s^{a-1} e^{-t s} ds = u^a e^{-t u} S(a, t u).
  const double a = 2.4;
  const double t = 0.7;
  const double u = 1.3;
  const double quad = rm::gl_integrate(
      [&](double s) { return std::pow(s, a - 1.0) * std::exp(-t * s); }, 0.0,
      u, 200);
  const double closed =
      std::pow(u, a) * std::exp(-t * u) * rm::kummer_s(a, t * u);
  EXPECT_NEAR(quad, closed, 1e-10);
}

TEST(Sqrt1pMinus1, MatchesDirectAndLimit) {
  for (const double x : {0.7, -0.4, 2.0}) {
    EXPECT_NEAR(rm::sqrt1p_minus_1(x), std::sqrt(1.0 + x) - 1.0, 1e-15);
  }
  const double x = 1e-12;
  EXPECT_NEAR(rm::sqrt1p_minus_1(x), x / 2.0 - x * x / 8.0, 1e-27);
}
