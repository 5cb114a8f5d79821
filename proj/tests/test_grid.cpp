// Distributed under the MIT License.
// See LICENSE for details.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rotstar/errors.hpp"
#include "rotstar/grid/axigrid.hpp"

namespace {

using rotstar::ValidationError;
using rotstar::grid::AxiGrid;
using rotstar::grid::Deriv;
using rotstar::grid::Parity;
using rotstar::grid::ScalarField;
using rotstar::grid::axi_laplacian;
using rotstar::grid::derive;
using rotstar::grid::holder_norm;
using rotstar::grid::holder_seminorm;
using rotstar::grid::interpolate;
using rotstar::grid::make_field;
using rotstar::grid::quadrature_from_gradient;
using rotstar::grid::quadrature_from_gradient_alt;
using rotstar::grid::restrict_to;

TEST(AxiGrid, ValidatesConstruction) {
  EXPECT_NO_THROW(AxiGrid(2.0, 33));
  EXPECT_THROW(AxiGrid(2.0, 32), ValidationError);   // even
  EXPECT_THROW(AxiGrid(2.0, 17), ValidationError);   // too small
  EXPECT_THROW(AxiGrid(0.0, 33), ValidationError);   // empty domain
  EXPECT_THROW(AxiGrid(-1.0, 33), ValidationError);  // negative domain
  const AxiGrid g(2.0, 65);
  EXPECT_DOUBLE_EQ(g.h, 2.0 / 64.0);
  EXPECT_DOUBLE_EQ(g.varpi(64), 2.0);
  EXPECT_DOUBLE_EQ(g.z(0), 0.0);
}

TEST(ScalarField, GhostReflectionFollowsParity) {
  const AxiGrid g(2.0, 33);
  ScalarField even_f(g, Parity::even, Parity::even);
  ScalarField odd_f(g, Parity::odd, Parity::odd);
  even_f.v(1, 2) = 3.5;
  odd_f.v(1, 2) = 3.5;
  EXPECT_DOUBLE_EQ(even_f.at(-1, 2), 3.5);
  EXPECT_DOUBLE_EQ(odd_f.at(-1, 2), -3.5);
  EXPECT_DOUBLE_EQ(odd_f.at(1, -2), -3.5);
  EXPECT_DOUBLE_EQ(odd_f.at(-1, -2), 3.5);  // double reflection cancels
}

TEST(Derive, ConstantFieldHasZeroDerivatives) {
  const AxiGrid g(2.0, 33);
  const ScalarField f = make_field(g, [](double, double) { return 7.25; });
  for (const Deriv which :
       {Deriv::d_varpi, Deriv::d_z, Deriv::d_varpi_varpi, Deriv::d_zz,
        Deriv::d_varpi_z}) {
    EXPECT_LE(derive(f, which).max_abs(), 1e-12);
  }
}

TEST(Derive, QuadraticSecondDerivativeExact) {
  const AxiGrid g(2.0, 33);
  const ScalarField f =
      make_field(g, [](double vp, double) { return vp * vp; });
  const ScalarField fvv = derive(f, Deriv::d_varpi_varpi);
  EXPECT_LE((fvv.v - 2.0).abs().maxCoeff(), 1e-10);
}

TEST(Derive, SinCosConvergesSecondOrder) {
  auto max_err = [](int n, Deriv which) {
    const AxiGrid g(2.0, n);
    const ScalarField f = make_field(
        g, [](double vp, double z) { return std::sin(vp) * std::cos(z); },
        Parity::odd, Parity::even);
    const ScalarField d = derive(f, which);
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double vp = g.varpi(i);
        const double z = g.z(j);
        double exact = 0.0;
        switch (which) {
          case Deriv::d_varpi:
            exact = std::cos(vp) * std::cos(z);
            break;
          case Deriv::d_varpi_z:
            exact = -std::cos(vp) * std::sin(z);
            break;
          default:
            break;
        }
        err = std::max(err, std::abs(d.v(i, j) - exact));
      }
    }
    return err;
  };
  for (const Deriv which : {Deriv::d_varpi, Deriv::d_varpi_z}) {
    const double e_coarse = max_err(65, which);
    const double e_fine = max_err(129, which);
    const double slope = std::log2(e_coarse / e_fine);
    EXPECT_NEAR(slope, 2.0, 0.2) << "tag " << static_cast<int>(which);
  }
}

TEST(Derive, ParityMetadataMapsCorrectly) {
  const AxiGrid g(2.0, 33);
  const ScalarField f(g, Parity::even, Parity::even);
  EXPECT_EQ(derive(f, Deriv::d_varpi).par_axis, Parity::odd);
  EXPECT_EQ(derive(f, Deriv::d_varpi).par_equator, Parity::even);
  EXPECT_EQ(derive(f, Deriv::d_z).par_equator, Parity::odd);
  EXPECT_EQ(derive(f, Deriv::d_varpi_varpi).par_axis, Parity::even);
  EXPECT_EQ(derive(f, Deriv::d_varpi_z).par_axis, Parity::odd);
  EXPECT_EQ(derive(f, Deriv::d_varpi_z).par_equator, Parity::odd);
  const ScalarField h(g, Parity::odd, Parity::even);
  EXPECT_EQ(derive(h, Deriv::d_varpi).par_axis, Parity::even);
  EXPECT_EQ(derive(h, Deriv::d_zz).par_axis, Parity::odd);
}

TEST(AxiLaplacian, QuadraticExamples) {
  const AxiGrid g(2.0, 33);
  // 3-D Laplacian of varpi^2 + z^2 (= r^2 lifted to 3-D) is 6.
  const ScalarField r2 = make_field(
      g, [](double vp, double z) { return vp * vp + z * z; });
  EXPECT_LE((axi_laplacian(r2, 3).v - 6.0).abs().maxCoeff(), 1e-9);
  // 5-D Laplacian of varpi^2: 2 + 3*2 = 8, including the axis limit rule.
  const ScalarField vp2 =
      make_field(g, [](double vp, double) { return vp * vp; });
  EXPECT_LE((axi_laplacian(vp2, 5).v - 8.0).abs().maxCoeff(), 1e-9);
  // 4-D Laplacian of |xi|^2 is 2n = 8.
  EXPECT_LE((axi_laplacian(r2, 4).v - 8.0).abs().maxCoeff(), 1e-9);
}

TEST(AxiLaplacian, RejectsOddFieldsAndBadDimension) {
  const AxiGrid g(2.0, 33);
  const ScalarField odd_f(g, Parity::odd, Parity::even);
  EXPECT_THROW(axi_laplacian(odd_f, 3), ValidationError);
  const ScalarField even_f(g, Parity::even, Parity::even);
  EXPECT_THROW(axi_laplacian(even_f, 2), ValidationError);
  EXPECT_THROW(axi_laplacian(even_f, 6), ValidationError);
}

// The discrete operator must agree with centered 3-D differences of the
// lifted function Q(x,y,z) = q(sqrt(x^2+y^2), z), evaluated analytically at
// y = 0 with the same spacing. For fields polynomial of degree <= 2 in each
// variable both sides are exact, so they agree to roundoff.
TEST(AxiLaplacian, MatchesLiftedThreeDimensionalDifferences) {
  const AxiGrid g(2.0, 33);
  const double h = g.h;
  auto q = [](double vp, double z) {
    return vp * vp * z * z + vp * vp - z * z;
  };
  auto lifted = [&](double x, double y, double z) {
    const double vp = std::hypot(x, y);
    return q(vp, z);
  };
  const ScalarField f = make_field(g, q);
  const ScalarField lap = axi_laplacian(f, 3);
  for (int j = 0; j < g.n_cells - 1; ++j) {
    for (int i = 0; i < g.n_cells - 1; ++i) {
      const double x = g.varpi(i);
      const double z = g.z(j);
      const double qxx =
          (lifted(x + h, 0, z) - 2 * lifted(x, 0, z) + lifted(x - h, 0, z)) /
          (h * h);
      const double qyy =
          (lifted(x, h, z) - 2 * lifted(x, 0, z) + lifted(x, -h, z)) /
          (h * h);
      const double qzz =
          (lifted(x, 0, z + h) - 2 * lifted(x, 0, z) + lifted(x, 0, z - h)) /
          (h * h);
      EXPECT_NEAR(lap.v(i, j), qxx + qyy + qzz, 1e-9);
    }
  }
}

TEST(HolderNorm, ConstantField) {
  const AxiGrid g(2.0, 33);
  const ScalarField f = make_field(g, [](double, double) { return -4.0; });
  EXPECT_NEAR(holder_norm(f, 0, 0.5), 4.0, 1e-12);
}

TEST(HolderNorm, LinearFieldOnUnitDomain) {
  const AxiGrid g(1.0, 33);
  const ScalarField f =
      make_field(g, [](double vp, double) { return vp; }, Parity::odd);
  // sup|f| = 1, derivative sups are 1 and 0, derivative seminorm 0.
  EXPECT_NEAR(holder_norm(f, 1, 0.25), 2.0, 1e-10);
}

TEST(HolderNorm, PurePowerSeminormNearOne) {
  const AxiGrid g(2.0, 65);
  for (const double alpha : {0.25, 0.5}) {
    const ScalarField f = make_field(g, [alpha](double vp, double z) {
      return std::pow(std::hypot(vp, z), alpha);
    });
    const double semi = holder_seminorm(f, alpha);
    EXPECT_GE(semi, 0.8) << "alpha " << alpha;
    EXPECT_LE(semi, 1.2) << "alpha " << alpha;
  }
}

TEST(HolderNorm, ValidatesArguments) {
  const AxiGrid g(2.0, 33);
  const ScalarField f(g);
  EXPECT_THROW(holder_norm(f, 3, 0.5), ValidationError);
  EXPECT_THROW(holder_norm(f, -1, 0.5), ValidationError);
  EXPECT_THROW(holder_norm(f, 0, 0.0), ValidationError);
  EXPECT_THROW(holder_norm(f, 0, 1.0), ValidationError);
}

TEST(PathQuadrature, ReproducesPolynomialPotential) {
  const AxiGrid g(2.0, 65);
  // phi = varpi^2 z^2: gradient components are cubic along each leg, so
  // composite Simpson reconstructs phi exactly.
  const ScalarField g1 = make_field(
      g, [](double vp, double z) { return 2.0 * vp * z * z; }, Parity::odd,
      Parity::even);
  const ScalarField g3 = make_field(
      g, [](double vp, double z) { return 2.0 * vp * vp * z; }, Parity::even,
      Parity::odd);
  const ScalarField f = quadrature_from_gradient(g1, g3);
  const ScalarField phi = make_field(
      g, [](double vp, double z) { return vp * vp * z * z; });
  EXPECT_LE((f.v - phi.v).abs().maxCoeff(), 1e-12);
  EXPECT_EQ(f.v(0, 0), 0.0);
}

TEST(PathQuadrature, ZeroInputGivesZero) {
  const AxiGrid g(2.0, 33);
  const ScalarField zero1(g, Parity::odd, Parity::even);
  const ScalarField zero3(g, Parity::even, Parity::odd);
  const ScalarField f = quadrature_from_gradient(zero1, zero3);
  EXPECT_EQ(f.max_abs(), 0.0);
}

TEST(PathQuadrature, GreenTheoremCirculationDefect) {
  const AxiGrid g(2.0, 65);
  // Non-curl-free input (g1, g3) = (-z, varpi) has curl 2, so the two
  // canonical paths to (1,1) disagree by exactly the circulation 2*area = 2.
  const ScalarField g1 = make_field(
      g, [](double, double z) { return -z; }, Parity::odd, Parity::even);
  const ScalarField g3 = make_field(
      g, [](double vp, double) { return vp; }, Parity::even, Parity::odd);
  const ScalarField f_a = quadrature_from_gradient(g1, g3);
  const ScalarField f_b = quadrature_from_gradient_alt(g1, g3);
  const int i1 = 32;  // node at varpi = 1, z = 1 (h = 1/32)
  ASSERT_DOUBLE_EQ(g.varpi(i1), 1.0);
  EXPECT_NEAR(f_a.v(i1, i1), -1.0, 1e-12);
  EXPECT_NEAR(f_b.v(i1, i1), 1.0, 1e-12);
  EXPECT_NEAR(f_b.v(i1, i1) - f_a.v(i1, i1), 2.0, 1e-12);
}

TEST(PathQuadrature, InvertsDiscreteGradient) {
  // For a smooth even-even field, reconstructing from its *discrete*
  // gradient reproduces field - field(0,0) to second order.
  auto max_err = [](int n) {
    const AxiGrid g(2.0, n);
    const ScalarField f = make_field(
        g, [](double vp, double z) { return std::cos(vp) * std::cos(z); });
    const ScalarField rec = quadrature_from_gradient(
        derive(f, Deriv::d_varpi), derive(f, Deriv::d_z));
    return (rec.v - (f.v - f.v(0, 0))).abs().maxCoeff();
  };
  const double e_coarse = max_err(65);
  const double e_fine = max_err(129);
  EXPECT_NEAR(std::log2(e_coarse / e_fine), 2.0, 0.4);
}

TEST(PathQuadrature, RejectsMismatchedGrids) {
  const ScalarField a(AxiGrid(2.0, 33));
  const ScalarField b(AxiGrid(2.0, 65));
  EXPECT_THROW(quadrature_from_gradient(a, b), ValidationError);
}

TEST(Interpolation, ExactAtNodesAndFourthOrderBetween) {
  auto max_err = [](int n) {
    const AxiGrid g(2.0, n);
    const ScalarField f = make_field(g, [](double vp, double z) {
      return std::sin(vp) * std::cos(z) + vp * vp;
    });
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unit(0.0, 2.0);
    double err = 0.0;
    for (int k = 0; k < 400; ++k) {
      const double vp = unit(rng);
      const double z = unit(rng);
      const double exact = std::sin(vp) * std::cos(z) + vp * vp;
      err = std::max(err, std::abs(interpolate(f, vp, z) - exact));
    }
    return err;
  };
  const AxiGrid g(2.0, 65);
  const ScalarField f = make_field(g, [](double vp, double z) {
    return std::sin(vp) * std::cos(z) + vp * vp;
  });
  EXPECT_NEAR(interpolate(f, g.varpi(7), g.z(11)), f.v(7, 11), 1e-13);
  EXPECT_NEAR(interpolate(f, 2.0, 2.0), f.v(64, 64), 1e-13);  // corner clamp
  const double slope = std::log2(max_err(65) / max_err(129));
  EXPECT_GE(slope, 3.3);
}

TEST(Restriction, SubsamplesMatchingNodes) {
  const AxiGrid fine(2.0, 129);
  const AxiGrid coarse(2.0, 33);
  const ScalarField f = make_field(
      fine, [](double vp, double z) { return vp * z + std::sin(z); });
  const ScalarField r = restrict_to(f, coarse);
  for (int j = 0; j < 33; ++j) {
    for (int i = 0; i < 33; ++i) {
      EXPECT_DOUBLE_EQ(r.v(i, j), f.v(4 * i, 4 * j));
    }
  }
  EXPECT_THROW(restrict_to(f, AxiGrid(1.0, 33)), ValidationError);
  EXPECT_THROW(restrict_to(restrict_to(f, AxiGrid(2.0, 65)),
                           AxiGrid(2.0, 49)),
               ValidationError);
}

}  // namespace
