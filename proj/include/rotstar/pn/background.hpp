// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cmath>
#include <string>

#include "rotstar/errors.hpp"
#include "rotstar/grid/axigrid.hpp"
#include "rotstar/newton/distorted.hpp"
#include "rotstar/potential/poisson.hpp"

/// \file
/// Newtonian background of the slow-rotation correction scheme: the
/// converged distorted profile Theta, its gravitational potential, and the
/// centered Bernoulli constant, all in dimensionless variables on the
/// meridional quarter-plane grid. Every correction field is solved on top
/// of this background, so its internal consistency (hydrostatic relation,
/// centering, Poisson defect) is checked here once and the downstream
/// modules may rely on it.

namespace rotstar::pn {

/// Dimensionless Newtonian background. Lengths are in units of the star
/// scale a, the enthalpy profile in units of the central value, and the
/// potential in the matching unit, so that
///   laplacian_3 phi = max(theta, 0)^n        (cutoff support),
///   theta + phi - (b/4) varpi^2 = bernoulli  on {theta > 0}.
struct Background {
  grid::ScalarField theta;  ///< enthalpy profile, 1 at the origin
  grid::ScalarField phi;    ///< potential of theta_+^n (negative well)
  double b_rot = 0.0;       ///< rotation strength 2 Omega^2 a^2 / u_O
  double n_index = 0.0;     ///< polytropic index 1 / (gamma - 1)
  double xi1 = 0.0;         ///< first zero of the b = 0 radial profile
  double mu1 = 0.0;         ///< b = 0 mass coefficient -xi1^2 theta'(xi1)
  double bernoulli = 0.0;   ///< 1 + phi(0, 0)

  const grid::AxiGrid& grid() const { return theta.grid; }
};

/// Builds the background from a converged distorted profile. The potential
/// is obtained from the same discrete operator that produced the profile,
/// so the hydrostatic relation below holds to the fixed-point tolerance
/// rather than to a separate discretization error.
inline Background newtonian_background(const newton::DistortedLaneEmden& dle,
                                       potential::PotentialSolver& solver) {
  if (solver.n_dim() != 3) {
    throw ValidationError("newtonian_background: solver must have n_dim = 3");
  }
  if (solver.grid() != dle.theta_field.grid) {
    throw ValidationError(
        "newtonian_background: solver and profile grids differ");
  }
  const grid::ScalarField& th = dle.theta_field;
  grid::ScalarField source = th;
  source.v = th.v.max(0.0).pow(dle.n_index);
  grid::ScalarField phi = solver.apply(source);
  phi.v = -phi.v;
  Background bg;
  bg.theta = th;
  bg.phi = std::move(phi);
  bg.b_rot = dle.b_rot;
  bg.n_index = dle.n_index;
  bg.xi1 = dle.xi1;
  bg.mu1 = dle.mu1;
  bg.bernoulli = 1.0 + bg.phi.v(0, 0);
  return bg;
}

/// Largest defect of the hydrostatic (Bernoulli) relation
///   theta + phi - (b/4) varpi^2 - bernoulli = 0
/// over the interior nodes {theta > 0}. The centrifugal term enters
/// uncapped: the profile solver's cap activates only beyond twice the star
/// radius, strictly outside {theta > 0}.
inline double bernoulli_defect(const Background& bg) {
  const grid::AxiGrid& g = bg.grid();
  double worst = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double vp = g.varpi(i);
    for (int j = 0; j < g.n_cells; ++j) {
      if (bg.theta.v(i, j) > 0.0) {
        const double defect = bg.theta.v(i, j) + bg.phi.v(i, j) -
                              0.25 * bg.b_rot * vp * vp - bg.bernoulli;
        worst = std::max(worst, std::abs(defect));
      }
    }
  }
  return worst;
}

}  // namespace rotstar::pn
