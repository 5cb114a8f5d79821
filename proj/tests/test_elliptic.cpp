// Distributed under the MIT License.
// See LICENSE for details.

#include <gtest/gtest.h>

#include <cmath>

#include "rotstar/math/elliptic.hpp"

namespace rm = rotstar::math;

TEST(CarlsonRf, ReferenceValues) {
  // R_F(1,1,1) = 1; R_F(0,1,1) = pi/2; R_F(0,1,2) = 1.3110287771461.
  EXPECT_NEAR(rm::carlson_rf(1.0, 1.0, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(rm::carlson_rf(0.0, 1.0, 1.0), M_PI / 2.0, 1e-14);
  EXPECT_NEAR(rm::carlson_rf(0.0, 1.0, 2.0), 1.3110287771460600, 1e-13);
  // Homogeneity: R_F(ax,ay,az) = a^{-1/2} R_F(x,y,z).
  EXPECT_NEAR(rm::carlson_rf(2.0, 6.0, 8.0),
              rm::carlson_rf(1.0, 3.0, 4.0) / std::sqrt(2.0), 1e-14);
}

TEST(CarlsonRd, ReferenceValues) {
  // R_D(1,1,1) = 1; R_D(0,2,1) = 1.7972103521034.
  EXPECT_NEAR(rm::carlson_rd(1.0, 1.0, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(rm::carlson_rd(0.0, 2.0, 1.0), 1.7972103521033883, 1e-13);
  // Homogeneity: R_D(ax,ay,az) = a^{-3/2} R_D(x,y,z).
  EXPECT_NEAR(rm::carlson_rd(2.0, 6.0, 8.0),
              rm::carlson_rd(1.0, 3.0, 4.0) / std::pow(2.0, 1.5), 1e-14);
}

TEST(CompleteElliptic, MatchesStandardLibrary) {
  // std::comp_ellint_* take the modulus k; ours take the parameter m = k^2.
  for (const double m : {0.0, 0.1, 0.5, 0.9, 0.99}) {
    const double k = std::sqrt(m);
    EXPECT_NEAR(rm::comp_ellint_1_m(m), std::comp_ellint_1(k), 1e-13)
        << "m = " << m;
    EXPECT_NEAR(rm::comp_ellint_2_m(m), std::comp_ellint_2(k), 1e-13)
        << "m = " << m;
  }
  EXPECT_NEAR(rm::comp_ellint_1_m(0.0), M_PI / 2.0, 1e-15);
  EXPECT_NEAR(rm::comp_ellint_2_m(1.0), 1.0, 1e-15);
}

TEST(CompleteElliptic, RejectsOutOfRangeParameter) {
  EXPECT_THROW(rm::comp_ellint_1_m(1.0), std::domain_error);
  EXPECT_THROW(rm::comp_ellint_1_m(-0.1), std::domain_error);
  EXPECT_THROW(rm::comp_ellint_2_m(1.5), std::domain_error);
}

TEST(EllintCombo, MatchesDirectWhereSafe) {
  for (const double m : {0.55, 0.7, 0.9, 0.99}) {
    const double direct = (2.0 - m) * rm::comp_ellint_1_m(m) -
                          2.0 * rm::comp_ellint_2_m(m);
    EXPECT_NEAR(rm::ellint_combo_2mk_2e(m), direct, 1e-13 * direct)
        << "m = " << m;
  }
}

TEST(EllintCombo, SeriesBranchCrossChecks) {
  // Direct evaluation is still accurate enough at moderate m to validate
  // the series branch to ~1e-12 relative.
  for (const double m : {0.2, 0.35, 0.5}) {
    const double direct = (2.0 - m) * rm::comp_ellint_1_m(m) -
                          2.0 * rm::comp_ellint_2_m(m);
    EXPECT_NEAR(rm::ellint_combo_2mk_2e(m), direct, 1e-11 * direct)
        << "m = " << m;
  }
}

TEST(EllintCombo, QuadraticLeadingOrder) {
  // (2-m)K - 2E = (pi/16) m^2 (1 + O(m)); naive subtraction would lose
  // ~11 digits at m = 1e-6.
  const double m = 1e-6;
  const double lead = M_PI / 16.0 * m * m;
  EXPECT_NEAR(rm::ellint_combo_2mk_2e(m), lead, 1e-5 * lead);
}
