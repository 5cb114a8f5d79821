// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <array>
#include <cmath>
#include <string>

#include "rotstar/errors.hpp"
#include "rotstar/math/ode.hpp"
#include "rotstar/math/stable.hpp"

/// \file
/// The classical (radial) Lane-Emden profile: theta'' + (2/r) theta' +
/// (theta v 0)^n = 0, theta(0) = 1, theta'(0) = 0, with its first zero xi1
/// and mass constant mu1 = -xi1^2 theta'(xi1). Evaluation continues past
/// the zero with the harmonic tail mu1 (1/r - 1/xi1), which is the unique
/// continuation selected by the origin-subtracted integral equation.

namespace rotstar::newton {

/// Radial profile with dense evaluation on [0, infinity).
struct LaneEmdenSolution {
  double n_index = 0.0;
  double xi1 = 0.0;   ///< first zero
  double mu1 = 0.0;   ///< -xi1^2 theta'(xi1) > 0
  double r_start = 0.0;  ///< series is used below this radius
  math::OdeSolution<2> profile;  ///< integrated (theta, theta') up to xi1

  /// theta(r): series near 0, integrated profile to xi1, harmonic tail after.
  double theta(double r) const {
    if (r < r_start) {
      return series_theta(n_index, r);
    }
    if (r < xi1) {
      return profile.eval(r, 0);
    }
    return mu1 * (1.0 / r - 1.0 / xi1);
  }

  /// d theta/d r with the same three-part structure.
  double dtheta(double r) const {
    if (r < r_start) {
      return series_dtheta(n_index, r);
    }
    if (r < xi1) {
      return profile.eval(r, 1);
    }
    return -mu1 / (r * r);
  }

  /// Regular series theta = 1 - r^2/6 + n r^4/120 - n(8n-5) r^6/15120 + ...
  static double series_theta(double n, double r) {
    const double r2 = r * r;
    return 1.0 - r2 / 6.0 + n * r2 * r2 / 120.0 -
           n * (8.0 * n - 5.0) * r2 * r2 * r2 / 15120.0;
  }

  static double series_dtheta(double n, double r) {
    const double r2 = r * r;
    return r * (-1.0 / 3.0 + n * r2 / 30.0 -
                n * (8.0 * n - 5.0) * r2 * r2 / 2520.0);
  }
};

/// Integrates the Lane-Emden equation and locates xi1 to near machine
/// precision. n_index >= 5 has no zero and is rejected.
inline LaneEmdenSolution solve_lane_emden(double n_index,
                                          double r_max = 50.0) {
  if (n_index < 0.0 || n_index >= 5.0) {
    throw ValidationError(
        "solve_lane_emden: need 0 <= n < 5 for a compactly supported "
        "profile, got n = " +
        std::to_string(n_index));
  }
  LaneEmdenSolution sol;
  sol.n_index = n_index;
  sol.r_start = 1e-3;

  math::DormandPrince<2> dp(
      [n_index](double r, const std::array<double, 2>& y,
                std::array<double, 2>& f) {
        f[0] = y[1];
        f[1] = -2.0 / r * y[1] - math::pos_pow(y[0], n_index);
      },
      1e-13, 1e-15);
  math::DormandPrince<2>::Event zero_crossing =
      [](double /*r*/, const std::array<double, 2>& y) { return y[0]; };

  const std::array<double, 2> y0 = {
      LaneEmdenSolution::series_theta(n_index, sol.r_start),
      LaneEmdenSolution::series_dtheta(n_index, sol.r_start)};
  auto res = dp.integrate(sol.r_start, y0, r_max, &zero_crossing);
  if (!res.event_hit) {
    throw BoundaryNotFoundError(
        "solve_lane_emden: no zero found below r = " + std::to_string(r_max));
  }
  sol.xi1 = res.event_time;
  sol.mu1 = -sol.xi1 * sol.xi1 * res.event_state[1];
  sol.profile = std::move(res.solution);
  return sol;
}

}  // namespace rotstar::newton
