// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rotstar/errors.hpp"
#include "rotstar/grid/axigrid.hpp"
#include "rotstar/math/stable.hpp"
#include "rotstar/newton/lane_emden.hpp"
#include "rotstar/potential/cutoff.hpp"
#include "rotstar/potential/poisson.hpp"

/// \file
/// The rotationally distorted Lane-Emden profile Theta(varpi, z): the
/// even-symmetric solution of the integral reformulation
///
///   u = 1 + (b/4) varpi^2 chi_rot(r) + K[(u v 0)^n],
///
/// where K is the origin-subtracted 3-D Newtonian potential operator, so
/// that u(0, 0) = 1 is pinned exactly. The centrifugal term is smoothly
/// capped beyond twice the spherical first zero: on large domains the
/// uncapped (b/4) varpi^2 growth eventually dominates the decaying
/// potential and would create a spurious outer positivity region.
///
/// The equation is solved by damped fixed-point iteration. Near the
/// solution the iteration is linearly convergent on the even-even symmetry
/// class: the unit-eigenvalue direction of the linearized potential
/// operator is the translation mode, which is odd in z and therefore
/// excluded, while the radial scaling family is quotiented out by the
/// origin subtraction. Divergence (expected only beyond the validated
/// smallness in b) is reported, never masked.

namespace rotstar::newton {

/// Grid, cutoff, and spherical reference data for a star with polytropic
/// index n: domain [0, domain_factor * xi1]^2 with the source-cutoff
/// plateau reaching 2 * xi1 and rolling off halfway to the outer edge.
struct StarDiscretization {
  grid::AxiGrid grid;
  potential::Cutoff cutoff;
  double xi1;
  double mu1;
};

inline StarDiscretization standard_discretization(double n_index,
                                                  int n_cells,
                                                  double domain_factor = 2.5) {
  if (!(domain_factor > 2.0)) {
    throw ValidationError(
        "standard_discretization: domain_factor must exceed 2 so the "
        "cutoff plateau [0, 2 xi1] fits strictly inside the domain");
  }
  const LaneEmdenSolution le = solve_lane_emden(n_index);
  const double xi0 = domain_factor * le.xi1;
  return StarDiscretization{grid::AxiGrid(xi0, n_cells),
                            potential::default_cutoff(2.0 * le.xi1, xi0),
                            le.xi1, le.mu1};
}

struct DistortedOptions {
  double damping = 0.5;  ///< fixed-point update fraction
  double tol = 1e-10;    ///< stop when sup|RHS(u) - u| < tol
  int max_iter = 600;
  bool rot_cutoff = true;  ///< cap the centrifugal term beyond 2 xi1
  double b_max = 0.05;     ///< validated smallness bound for b
};

/// Zero curve and ray-structure diagnostics of an even-even field that is
/// 1 at the origin and changes sign once along every ray.
struct ZeroCurve {
  std::vector<double> zeta;  ///< ascending, zeta[0] = 0 (equator), back = 1
  std::vector<double> xi1;   ///< first zero radius along each ray
  /// min over rays of -dTheta/dr sampled on (0, 1.1 * xi1(zeta)]; must be
  /// positive for the zero to be a transversal crossing.
  double min_neg_slope_near = 0.0;
  /// Same quantity sampled on the whole ray (0, xi0]; may go negative for
  /// larger b where the capped centrifugal term still wins locally outside
  /// the star, which is harmless for the zero-curve structure.
  double min_neg_slope_domain = 0.0;
};

/// Converged distorted profile with its zero curve Xi1(zeta).
struct DistortedLaneEmden {
  grid::ScalarField theta_field;
  double b_rot = 0.0;
  double n_index = 0.0;
  double xi1 = 0.0;  ///< spherical (b = 0) first zero, the scale reference
  double mu1 = 0.0;
  bool rot_cutoff_applied = false;
  int iterations = 0;
  double fixed_point_residual = 0.0;  ///< sup|RHS(Theta) - Theta| at exit
  std::vector<double> residual_history;
  std::vector<double> zeta_nodes;
  std::vector<double> xi1_curve;
  double min_neg_slope_near = 0.0;
  double min_neg_slope_domain = 0.0;
};

/// Equatorial bulge Xi1(0) - Xi1(1) of the converged profile.
inline double equatorial_excess(const DistortedLaneEmden& dle) {
  return dle.xi1_curve.front() - dle.xi1_curve.back();
}

/// First zero of the interpolated field along the ray
/// (varpi, z) = r (sqrt(1 - zeta^2), zeta), located by stepping one grid
/// spacing at a time to a sign change and then bisecting. The field must
/// be positive at the origin.
inline double first_zero_along_ray(const grid::ScalarField& f, double zeta,
                                   double r_tol = 1e-10) {
  const double s = std::sqrt(std::max(0.0, 1.0 - zeta * zeta));
  auto val = [&](double r) {
    return grid::interpolate(f, r * s, r * zeta);
  };
  if (!(f.v(0, 0) > 0.0)) {
    throw ValidationError(
        "first_zero_along_ray: field is not positive at the origin");
  }
  const double h = f.grid.h;
  double r_lo = 0.0;
  double r_hi = 0.0;
  bool bracketed = false;
  for (double r = h; r <= f.grid.xi0 + 0.5 * h; r += h) {
    const double rr = std::min(r, f.grid.xi0);
    const double v = val(rr);
    if (v <= 0.0) {
      r_hi = rr;
      bracketed = true;
      break;
    }
    r_lo = rr;
  }
  if (!bracketed) {
    throw BoundaryNotFoundError(
        "first_zero_along_ray: no sign change up to the domain edge along "
        "zeta = " +
        std::to_string(zeta));
  }
  while (r_hi - r_lo > r_tol) {
    const double rm = 0.5 * (r_lo + r_hi);
    if (val(rm) > 0.0) {
      r_lo = rm;
    } else {
      r_hi = rm;
    }
  }
  return 0.5 * (r_lo + r_hi);
}

/// Extracts Xi1(zeta) on 65 Chebyshev-spaced polar nodes zeta_k =
/// sin(k pi / 128) (the upper half of a symmetric 129-node family; the
/// equatorial mirror is implied) and verifies the ray structure: the field
/// must decrease strictly through its zero on (0, 1.1 * Xi1] and stay
/// negative from just past the zero to the domain edge. Violations name
/// the offending ray. The domain-wide slope minimum is reported as a
/// diagnostic only.
inline ZeroCurve extract_zero_curve(const grid::ScalarField& f) {
  constexpr int n_zeta = 65;
  ZeroCurve curve;
  curve.zeta.resize(n_zeta);
  curve.xi1.resize(n_zeta);
  curve.min_neg_slope_near = std::numeric_limits<double>::infinity();
  curve.min_neg_slope_domain = std::numeric_limits<double>::infinity();
  const double h = f.grid.h;
  const double step = 0.5 * h;
  for (int k = 0; k < n_zeta; ++k) {
    const double zeta = std::sin(k * M_PI / (2.0 * (n_zeta - 1)));
    curve.zeta[k] = zeta;
    const double xi1 = first_zero_along_ray(f, zeta);
    curve.xi1[k] = xi1;
    const double s = std::sqrt(std::max(0.0, 1.0 - zeta * zeta));
    auto val = [&](double r) {
      return grid::interpolate(f, r * s, r * zeta);
    };
    double prev = f.v(0, 0);
    for (double r = step; r <= f.grid.xi0 + 0.5 * step; r += step) {
      const double rr = std::min(r, f.grid.xi0);
      const double v = val(rr);
      const double neg_slope = (prev - v) / step;
      prev = v;
      curve.min_neg_slope_domain =
          std::min(curve.min_neg_slope_domain, neg_slope);
      if (rr <= 1.1 * xi1) {
        curve.min_neg_slope_near =
            std::min(curve.min_neg_slope_near, neg_slope);
        if (neg_slope <= 0.0 && rr > h) {
          throw ValidationError(
              "extract_zero_curve: field is not strictly decreasing near "
              "its zero along zeta = " +
              std::to_string(zeta) + " (r = " + std::to_string(rr) + ")");
        }
      } else if (rr > xi1 + h && v >= 0.0) {
        throw ValidationError(
            "extract_zero_curve: positivity reappears beyond the zero "
            "along zeta = " +
            std::to_string(zeta) + " (r = " + std::to_string(rr) + ")");
      }
    }
  }
  return curve;
}

/// Damped fixed-point solve of the distorted profile on a prebuilt 3-D
/// potential solver (its grid and cutoff define the discretization; the
/// edge-quadrature cache is built if absent since the loop applies the
/// operator once per iteration).
inline DistortedLaneEmden solve_distorted(double b_rot, double n_index,
                                          potential::PotentialSolver& solver,
                                          const DistortedOptions& opts = {}) {
  if (solver.n_dim() != 3) {
    throw ValidationError("solve_distorted: solver must have n_dim = 3");
  }
  if (!(n_index > 1.0 && n_index < 5.0)) {
    throw ValidationError(
        "solve_distorted: need 1 < n_index < 5, got n_index = " +
        std::to_string(n_index));
  }
  if (!(b_rot >= 0.0 && b_rot <= opts.b_max)) {
    throw ValidationError("solve_distorted: b = " + std::to_string(b_rot) +
                          " outside the validated range [0, " +
                          std::to_string(opts.b_max) + "]");
  }
  const grid::AxiGrid& g = solver.grid();
  const LaneEmdenSolution le = solve_lane_emden(n_index);
  if (solver.cutoff().xi_in() < 2.0 * le.xi1 * (1.0 - 1e-12)) {
    throw ValidationError(
        "solve_distorted: cutoff plateau must cover twice the spherical "
        "first zero (xi_in = " +
        std::to_string(solver.cutoff().xi_in()) + " < 2 xi1 = " +
        std::to_string(2.0 * le.xi1) + ")");
  }
  solver.build_boundary_cache();

  DistortedLaneEmden out;
  out.b_rot = b_rot;
  out.n_index = n_index;
  out.xi1 = le.xi1;
  out.mu1 = le.mu1;
  out.rot_cutoff_applied = (b_rot > 0.0) && opts.rot_cutoff;

  const int n = g.n_cells;
  Eigen::ArrayXXd base(n, n);
  {
    // Centrifugal cap: plateau to 2 xi1, roll-off halfway to the edge.
    const potential::Cutoff rot_cut =
        out.rot_cutoff_applied
            ? potential::default_cutoff(2.0 * le.xi1, g.xi0)
            : potential::Cutoff(1.0, 2.0);  // unused placeholder
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        double rot = 0.0;
        if (b_rot > 0.0) {
          const double vp = g.varpi(i);
          rot = 0.25 * b_rot * vp * vp;
          if (out.rot_cutoff_applied) {
            rot *= rot_cut(g.r(i, j));
          }
        }
        base(i, j) = 1.0 + rot;
      }
    }
  }

  grid::ScalarField u = grid::make_field(
      g, [&](double vp, double z) { return le.theta(std::hypot(vp, z)); });
  grid::ScalarField src(g, grid::Parity::even, grid::Parity::even);
  bool converged = false;
  for (int it = 1; it <= opts.max_iter; ++it) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        src.v(i, j) = math::pos_pow(u.v(i, j), n_index);
      }
    }
    const grid::ScalarField pot =
        potential::origin_subtracted_potential(src, solver);
    const Eigen::ArrayXXd rhs = base + pot.v;
    const double diff = (rhs - u.v).abs().maxCoeff();
    out.residual_history.push_back(diff);
    if (!std::isfinite(diff)) {
      throw ConvergenceError("solve_distorted: iteration blew up", it, diff);
    }
    if (diff < opts.tol) {
      out.iterations = it;
      out.fixed_point_residual = diff;
      converged = true;
      break;
    }
    u.v += opts.damping * (rhs - u.v);
  }
  if (!converged) {
    std::string tail;
    const std::size_t m = out.residual_history.size();
    for (std::size_t k = (m > 5 ? m - 5 : 0); k < m; ++k) {
      tail += " " + std::to_string(out.residual_history[k]);
    }
    throw ConvergenceError(
        "solve_distorted: no convergence in " +
            std::to_string(opts.max_iter) + " iterations; last residuals:" +
            tail,
        opts.max_iter, out.residual_history.back());
  }

  ZeroCurve curve = extract_zero_curve(u);
  const double xi1_max =
      *std::max_element(curve.xi1.begin(), curve.xi1.end());
  if (!(xi1_max < solver.cutoff().xi_in())) {
    throw ValidationError(
        "solve_distorted: positivity region reaches the cutoff roll-off "
        "(max Xi1 = " +
        std::to_string(xi1_max) + ")");
  }
  out.theta_field = std::move(u);
  out.zeta_nodes = std::move(curve.zeta);
  out.xi1_curve = std::move(curve.xi1);
  out.min_neg_slope_near = curve.min_neg_slope_near;
  out.min_neg_slope_domain = curve.min_neg_slope_domain;
  return out;
}

/// Convenience overload constructing the potential solver internally.
inline DistortedLaneEmden solve_distorted(double b_rot, double n_index,
                                          const grid::AxiGrid& g,
                                          const potential::Cutoff& cutoff,
                                          const DistortedOptions& opts = {}) {
  potential::PotentialSolver solver(g, 3, cutoff);
  return solve_distorted(b_rot, n_index, solver, opts);
}

}  // namespace rotstar::newton
