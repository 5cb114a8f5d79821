// Distributed under the MIT License.
// See LICENSE for details.

#include <gtest/gtest.h>

#include <cmath>

#include "rotstar/errors.hpp"
#include "rotstar/grid/axigrid.hpp"
#include "rotstar/potential/cutoff.hpp"
#include "rotstar/potential/poisson.hpp"

namespace {

using rotstar::ValidationError;
using rotstar::grid::AxiGrid;
using rotstar::grid::Parity;
using rotstar::grid::ScalarField;
using rotstar::grid::make_field;
using rotstar::potential::Cutoff;
using rotstar::potential::PotentialSolver;
using rotstar::potential::origin_subtracted_potential;
using rotstar::potential::poisson_residual;

using RadialSampling = PotentialSolver::RadialSampling;

double unit_ball(double r) { return r <= 1.0 ? 1.0 : 0.0; }

/// C-infinity bump supported on r < R.
double smooth_bump(double r, double R) {
  const double q = (r / R) * (r / R);
  return q < 1.0 ? std::exp(-q / (1.0 - q)) : 0.0;
}

TEST(PotentialSolver, ZeroSourceGivesZero) {
  const AxiGrid g(2.0, 33);
  const PotentialSolver solver(g, 3, Cutoff(1.3, 1.65));
  const ScalarField zero(g);
  EXPECT_EQ(solver.apply(zero).max_abs(), 0.0);
  EXPECT_EQ(solver.apply_radial([](double) { return 0.0; }).max_abs(), 0.0);
}

/// Exact potential of the unit-ball source: interior f(0) - r^2/(2n),
/// exterior monopole M_n / r^{n-2}.
double ball_exact(int n, double r) {
  const double f0[] = {0.5, 0.25, 1.0 / 6.0};
  const double mass[] = {1.0 / 3.0, 1.0 / 8.0, 1.0 / 15.0};
  return r <= 1.0 ? f0[n - 3] - r * r / (2.0 * n)
                  : mass[n - 3] / std::pow(r, n - 2);
}

TEST(PotentialSolver, UnitBallCentralValues) {
  // Radial-ODE oracle: f(0) = 1/2, 1/4, 1/6 for n = 3, 4, 5.
  const AxiGrid g(2.0, 129);
  for (const int n : {3, 4, 5}) {
    const PotentialSolver solver(g, n, Cutoff(1.3, 1.65));
    const ScalarField f = solver.apply_radial(
        unit_ball, RadialSampling::cell_average, {1.0});
    EXPECT_NEAR(f.v(0, 0), ball_exact(n, 0.0), 1e-4) << "n = " << n;
  }
}

TEST(PotentialSolver, UnitBallRefinementSlope) {
  // Sup-norm error over the whole grid against the radial oracle; the
  // single-point center error superconverges for n = 4 and is not a stable
  // slope metric, the global error is.
  for (const int n : {3, 4, 5}) {
    double err[2];
    int k = 0;
    for (const int cells : {65, 257}) {
      const AxiGrid g(2.0, cells);
      const PotentialSolver solver(g, n, Cutoff(1.3, 1.65));
      const ScalarField f = solver.apply_radial(
          unit_ball, RadialSampling::cell_average, {1.0});
      double e = 0.0;
      for (int j = 0; j < cells; ++j) {
        for (int i = 0; i < cells; ++i) {
          e = std::max(e, std::abs(f.v(i, j) - ball_exact(n, g.r(i, j))));
        }
      }
      err[k++] = e;
    }
    const double slope = 0.5 * std::log2(err[0] / err[1]);
    EXPECT_NEAR(slope, 2.0, 0.3) << "n = " << n;
  }
}

TEST(PotentialSolver, UnitBallInteriorAndEdgeValues) {
  // n = 3: f(1) = 1/3 at an interior node, and the edge value at r = 2
  // matches the exterior monopole 1/(3 r) to quadrature accuracy.
  const AxiGrid g(2.0, 129);
  const PotentialSolver solver(g, 3, Cutoff(1.3, 1.65));
  const ScalarField f =
      solver.apply_radial(unit_ball, RadialSampling::cell_average, {1.0});
  ASSERT_DOUBLE_EQ(g.varpi(64), 1.0);
  EXPECT_NEAR(f.v(64, 0), 1.0 / 3.0, 2e-4);
  EXPECT_NEAR(f.v(128, 0), 1.0 / 6.0, 1e-10);  // edge node at r = 2
  EXPECT_NEAR(f.v(0, 128), 1.0 / 6.0, 1e-10);
}

TEST(PotentialSolver, SmoothSourceResidualConverges) {
  // The residual audit uses the independent non-conservative stencils.
  // For n = 4, 5 the two discretizations genuinely differ and the residual
  // is a clean O(h^2); for n = 3 they coincide algebraically (the flux form
  // with linear weight expands to exactly the centered stencil), so the
  // residual is solver roundoff.
  for (const int n : {4, 5}) {
    double res[2];
    int k = 0;
    for (const int cells : {65, 129}) {
      const AxiGrid g(2.0, cells);
      const PotentialSolver solver(g, n, Cutoff(1.3, 1.65));
      const ScalarField src = make_field(g, [](double vp, double z) {
        return smooth_bump(std::hypot(vp, z), 1.2);
      });
      const ScalarField f = solver.apply(src);
      res[k++] = poisson_residual(f, src, solver);
    }
    EXPECT_NEAR(std::log2(res[0] / res[1]), 2.0, 0.3) << "n = " << n;
  }
  const AxiGrid g(2.0, 65);
  const PotentialSolver solver(g, 3, Cutoff(1.3, 1.65));
  const ScalarField src = make_field(g, [](double vp, double z) {
    return smooth_bump(std::hypot(vp, z), 1.2);
  });
  EXPECT_LE(poisson_residual(solver.apply(src), src, solver), 1e-9);
}

TEST(PotentialSolver, ResidualDetectsPerturbation) {
  const AxiGrid g(2.0, 65);
  const PotentialSolver solver(g, 4, Cutoff(1.3, 1.65));
  const ScalarField src = make_field(g, [](double vp, double z) {
    return smooth_bump(std::hypot(vp, z), 1.2);
  });
  ScalarField f = solver.apply(src);
  const double base = poisson_residual(f, src, solver);
  f.v += make_field(g, [](double vp, double) { return vp * vp; }).v;
  // laplacian_4 of varpi^2 is 2 + 2*2 = 6; the residual must jump by
  // at least that minus the discretization noise.
  EXPECT_GE(poisson_residual(f, src, solver), base + 6.0 - 0.1);
}

TEST(PotentialSolver, MaximumPrinciple) {
  const AxiGrid g(2.0, 65);
  for (const int n : {3, 4, 5}) {
    const PotentialSolver solver(g, n, Cutoff(1.3, 1.65));
    const ScalarField src = make_field(g, [](double vp, double z) {
      return smooth_bump(std::hypot(vp, z), 1.0);
    });
    const ScalarField f = solver.apply(src);
    EXPECT_GT(f.v.minCoeff(), 0.0) << "n = " << n;
  }
}

TEST(PotentialSolver, RadialEquivariance) {
  // For a radial source the solution is radial: swapping (i, j) changes
  // nothing in the continuum, so the discrete asymmetry is O(h^2).
  const AxiGrid g(2.0, 65);
  for (const int n : {3, 4, 5}) {
    const PotentialSolver solver(g, n, Cutoff(1.3, 1.65));
    const ScalarField src = make_field(g, [](double vp, double z) {
      return smooth_bump(std::hypot(vp, z), 1.2);
    });
    const ScalarField f = solver.apply(src);
    double asym = 0.0;
    for (int j = 0; j < 65; ++j) {
      for (int i = 0; i < j; ++i) {
        asym = std::max(asym, std::abs(f.v(i, j) - f.v(j, i)));
      }
    }
    EXPECT_LE(asym / f.max_abs(), 10.0 * g.h * g.h) << "n = " << n;
  }
}

TEST(PotentialSolver, Linearity) {
  const AxiGrid g(2.0, 65);
  const PotentialSolver solver(g, 3, Cutoff(1.3, 1.65));
  const ScalarField g1 = make_field(g, [](double vp, double z) {
    return smooth_bump(std::hypot(vp, z), 1.2);
  });
  const ScalarField g2 = make_field(g, [](double vp, double z) {
    return smooth_bump(std::hypot(vp, z), 0.8) * (1.0 + vp * vp);
  });
  ScalarField combo(g);
  combo.v = 2.0 * g1.v - 3.0 * g2.v;
  const ScalarField f_combo = solver.apply(combo);
  const ScalarField f1 = solver.apply(g1);
  const ScalarField f2 = solver.apply(g2);
  const double defect =
      (f_combo.v - (2.0 * f1.v - 3.0 * f2.v)).abs().maxCoeff();
  EXPECT_LE(defect, 1e-11 * f_combo.max_abs() + 1e-14);
}

TEST(OriginSubtracted, VanishesAtOriginExactly) {
  const AxiGrid g(2.0, 65);
  const PotentialSolver solver(g, 3, Cutoff(1.3, 1.65));
  const ScalarField src = make_field(g, [](double vp, double z) {
    return smooth_bump(std::hypot(vp, z), 1.2);
  });
  const ScalarField k = origin_subtracted_potential(src, solver);
  EXPECT_EQ(k.v(0, 0), 0.0);
  // Linearity carries over.
  ScalarField doubled(g);
  doubled.v = 2.0 * src.v;
  const ScalarField k2 = origin_subtracted_potential(doubled, solver);
  EXPECT_LE((k2.v - 2.0 * k.v).abs().maxCoeff(), 1e-11 * k.max_abs());
}

TEST(OriginSubtracted, UnitBallValueAtSurface) {
  // 1/3 - 1/2 = -1/6 at r = 1. Node-sampled indicator through the full
  // ring-quadrature path, so the tolerance is the honest staircase one.
  const AxiGrid g(2.0, 129);
  const PotentialSolver solver(g, 3, Cutoff(1.3, 1.65));
  const ScalarField ball = make_field(g, [](double vp, double z) {
    return unit_ball(std::hypot(vp, z));
  });
  const ScalarField k = origin_subtracted_potential(ball, solver);
  EXPECT_NEAR(k.v(64, 0), -1.0 / 6.0, 3e-3);
}

TEST(OriginSubtracted, RequiresThreeDimensionalSolver) {
  const AxiGrid g(2.0, 33);
  const PotentialSolver solver4(g, 4, Cutoff(1.3, 1.65));
  const ScalarField src(g);
  EXPECT_THROW(origin_subtracted_potential(src, solver4), ValidationError);
}

TEST(PotentialSolver, ValidatesContracts) {
  const AxiGrid g(2.0, 33);
  // Cutoff support reaching the outer edge is rejected.
  EXPECT_THROW(PotentialSolver(g, 3, Cutoff(1.5, 2.0)), ValidationError);
  EXPECT_THROW(PotentialSolver(g, 3, Cutoff(1.5, 2.5)), ValidationError);
  EXPECT_THROW(PotentialSolver(g, 6, Cutoff(1.3, 1.65)), ValidationError);
  const PotentialSolver solver(g, 3, Cutoff(1.3, 1.65));
  const ScalarField odd(g, Parity::odd, Parity::even);
  EXPECT_THROW(solver.apply(odd), ValidationError);
  const ScalarField other(AxiGrid(2.0, 65));
  EXPECT_THROW(solver.apply(other), ValidationError);
  EXPECT_THROW(poisson_residual(other, other, solver), ValidationError);
}

TEST(PotentialSolver, BoundaryCacheMatchesDirectQuadrature) {
  // The cached edge weights must reproduce the directly quadratured
  // Dirichlet data; only summation order may differ.
  const AxiGrid g(2.0, 33);
  const ScalarField src = make_field(g, [](double vp, double z) {
    return std::exp(-vp * vp - 0.7 * z * z) * (1.0 + 0.3 * vp * vp);
  });
  for (const int n : {3, 5}) {
    PotentialSolver solver(g, n, Cutoff(1.3, 1.65));
    const ScalarField direct = solver.apply(src);
    EXPECT_FALSE(solver.boundary_cache_built());
    solver.build_boundary_cache();
    EXPECT_TRUE(solver.boundary_cache_built());
    const ScalarField cached = solver.apply(src);
    const double scale = direct.max_abs();
    EXPECT_LE((cached.v - direct.v).abs().maxCoeff(), 1e-13 * scale)
        << "n = " << n;
  }
}

TEST(PotentialSolver, OperatorNormRegression) {
  // Frozen bound C(Xi0) on sup|K g| / sup|g| for the standard domain
  // (Xi0 = 2, plateau 1.3). Measured once at 65 nodes; the bound below has
  // a few percent of headroom and guards against quadrature regressions.
  const AxiGrid g(2.0, 65);
  const double c_frozen[] = {1.14, 0.57, 0.38};  // n = 3, 4, 5
  for (const int n : {3, 4, 5}) {
    const PotentialSolver solver(g, n, Cutoff(1.3, 1.65));
    const ScalarField ones =
        make_field(g, [](double, double) { return 1.0; });
    const ScalarField f = solver.apply(ones);
    EXPECT_LE(f.max_abs(), c_frozen[n - 3]) << "n = " << n;
    EXPECT_GE(f.max_abs(), 0.5 * c_frozen[n - 3]) << "n = " << n;
  }
}

}  // namespace
