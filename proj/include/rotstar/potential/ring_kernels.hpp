// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cmath>

#include "rotstar/errors.hpp"
#include "rotstar/math/elliptic.hpp"
#include "rotstar/math/quadrature.hpp"
#include "rotstar/math/stable.hpp"

/// \file
/// Ring kernels of the n-dimensional Newtonian potential operators for
/// n = 3, 4, 5. A source that is axisymmetric in the first n-1 coordinates
/// and reflection-symmetric in the last reduces the potential integral to a
/// 2-D integral over the meridional half-plane (varpi', z'); the kernel
/// below is the angular average over the (n-2)-sphere ring through
/// (varpi', z'), including the ring measure varpi'^{n-2} and the operator
/// normalization 1/S_n with S_3 = 4 pi, S_4 = 4 pi^2, S_5 = 8 pi^2:
///
///   K_n(varpi, z; varpi', z')
///     = (varpi'^{n-2} / S_n)
///       * integral over the unit (n-2)-sphere of |xi - xi'|^{-(n-2)}.
///
/// With A = varpi^2 + varpi'^2 + (z - z')^2, B = 2 varpi varpi', and the
/// elliptic parameter m = 2B / (A + B):
///   n = 3:  varpi'   K(m) / (pi sqrt(A + B))
///   n = 4:  varpi'^2 log1p(x)/x / (pi (A - B)),  x = 2B / (A - B)
///   n = 5:  4 varpi'^3 [(2 - m) K(m) - 2 E(m)] / (pi m^2 (A + B)^{3/2})
/// All three are finite on the axis (B -> 0) through the stable kernels.

namespace rotstar::potential {

/// Closed-form ring kernel; requires the field point and source ring to be
/// distinct (A > B), as they always are for boundary evaluation.
inline double ring_kernel(int n_dim, double vp, double z, double vps,
                          double zs) {
  if (vps == 0.0) {
    return 0.0;  // ring measure varpi'^{n-2} vanishes
  }
  const double dz = z - zs;
  const double a = vp * vp + vps * vps + dz * dz;
  const double b = 2.0 * vp * vps;
  if (!(a > b)) {
    throw ValidationError("ring_kernel: field point on the source ring");
  }
  const double m = 2.0 * b / (a + b);
  constexpr double pi = 3.14159265358979323846;
  switch (n_dim) {
    case 3:
      return vps * math::comp_ellint_1_m(m) / (pi * std::sqrt(a + b));
    case 4: {
      const double x = 2.0 * b / (a - b);
      return vps * vps * math::log1p_over_x(x) / (pi * (a - b));
    }
    case 5:
      return 4.0 * vps * vps * vps * math::ellint_combo_over_m2(m) /
             (pi * std::pow(a + b, 1.5));
    default:
      throw ValidationError("ring_kernel: n_dim must be 3, 4, or 5");
  }
}

/// Direct angular quadrature of the same ring average with n_points
/// Gauss-Legendre nodes. Reference implementation for the closed forms.
inline double ring_kernel_gl(int n_dim, double vp, double z, double vps,
                             double zs, int n_points) {
  if (vps == 0.0) {
    return 0.0;
  }
  const double dz = z - zs;
  const double a = vp * vp + vps * vps + dz * dz;
  const double b = 2.0 * vp * vps;
  constexpr double pi = 3.14159265358979323846;
  switch (n_dim) {
    case 3:
      // (varpi'/S_3) * 2 int_0^pi (A - B cos phi)^{-1/2} dphi
      return vps / (2.0 * pi) *
             math::gl_integrate(
                 [&](double phi) {
                   return 1.0 / std::sqrt(a - b * std::cos(phi));
                 },
                 0.0, pi, n_points);
    case 4:
      // (varpi'^2/S_4) * 2 pi int_0^pi sin(th) (A - B cos th)^{-1} dth
      return vps * vps / (2.0 * pi) *
             math::gl_integrate(
                 [&](double th) {
                   return std::sin(th) / (a - b * std::cos(th));
                 },
                 0.0, pi, n_points);
    case 5:
      // (varpi'^3/S_5) * 4 pi int_0^pi sin^2(th) (A - B cos th)^{-3/2} dth
      return vps * vps * vps / (2.0 * pi) *
             math::gl_integrate(
                 [&](double th) {
                   const double s = std::sin(th);
                   return s * s * std::pow(a - b * std::cos(th), -1.5);
                 },
                 0.0, pi, n_points);
    default:
      throw ValidationError("ring_kernel_gl: n_dim must be 3, 4, or 5");
  }
}

/// Angular quadrature with point doubling from 64 until the change is
/// below 1e-12 (in absolute terms, matching the kernels' O(1) scale).
inline double ring_kernel_gl_doubling(int n_dim, double vp, double z,
                                      double vps, double zs) {
  double prev = ring_kernel_gl(n_dim, vp, z, vps, zs, 64);
  for (int pts = 128; pts <= 4096; pts *= 2) {
    const double cur = ring_kernel_gl(n_dim, vp, z, vps, zs, pts);
    if (std::abs(cur - prev) < 1e-12) {
      return cur;
    }
    prev = cur;
  }
  return prev;
}

}  // namespace rotstar::potential
