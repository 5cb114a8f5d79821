// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cmath>
#include <stdexcept>

/// \file
/// Complete elliptic integrals via Carlson symmetric forms. Used by the
/// closed-form ring kernels of the axisymmetric potential operators.

namespace rotstar::math {

/// Carlson's R_F(x,y,z), x,y,z >= 0 with at most one zero.
/// Duplication algorithm; the truncation error is O(tol^6), so tol = 1e-4
/// delivers full double precision in ~14 duplications.
inline double carlson_rf(double x, double y, double z) {
  constexpr double tol = 1e-4;
  double xt = x;
  double yt = y;
  double zt = z;
  double mu = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double sx = std::sqrt(xt);
    const double sy = std::sqrt(yt);
    const double sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + zt) / 3.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    if (std::abs(dx) < tol && std::abs(dy) < tol && std::abs(dz) < tol) {
      break;
    }
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

/// Carlson's R_D(x,y,z) = R_J(x,y,z,z), z > 0.
/// Truncation error is O(tol^6); see carlson_rf.
inline double carlson_rd(double x, double y, double z) {
  constexpr double tol = 1e-4;
  double xt = x;
  double yt = y;
  double zt = z;
  double sum = 0.0;
  double fac = 1.0;
  double mu = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double sx = std::sqrt(xt);
    const double sy = std::sqrt(yt);
    const double sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lam));
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + 3.0 * zt) / 5.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    if (std::abs(dx) < tol && std::abs(dy) < tol && std::abs(dz) < tol) {
      break;
    }
  }
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
              dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea))) /
             (mu * std::sqrt(mu));
}

/// Complete elliptic integral of the first kind, parameter m = k^2:
/// K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt.
inline double comp_ellint_1_m(double m) {
  if (!(m >= 0.0) || m >= 1.0) {
    throw std::domain_error("comp_ellint_1_m: need 0 <= m < 1");
  }
  return carlson_rf(0.0, 1.0 - m, 1.0);
}

/// Complete elliptic integral of the second kind, parameter m = k^2:
/// E(m) = int_0^{pi/2} (1 - m sin^2 t)^{1/2} dt.
inline double comp_ellint_2_m(double m) {
  if (!(m >= 0.0) || m > 1.0) {
    throw std::domain_error("comp_ellint_2_m: need 0 <= m <= 1");
  }
  if (m == 1.0) {
    return 1.0;
  }
  return carlson_rf(0.0, 1.0 - m, 1.0) -
         m / 3.0 * carlson_rd(0.0, 1.0 - m, 1.0);
}

/// (2 - m) K(m) - 2 E(m), evaluated cancellation-safely.
///
/// The combination vanishes to O(m^2) as m -> 0; the series
/// (pi/2) sum_{n>=2} a_n m^n with a_n = (4n/(2n-1)) c_n - c_{n-1},
/// c_n = ((2n-1)!!/(2n)!!)^2 is used for m <= 0.5.
inline double ellint_combo_2mk_2e(double m) {
  if (m <= 0.5) {
    double cn = 0.25;  // c_1
    double sum = 0.0;
    double mn = m;  // m^n at n = 1
    for (int n = 2; n <= 60; ++n) {
      const double ratio = (2.0 * n - 1.0) / (2.0 * n);
      const double cnext = cn * ratio * ratio;
      const double an = (4.0 * n / (2.0 * n - 1.0)) * cnext - cn;
      mn *= m;
      const double term = an * mn;
      sum += term;
      cn = cnext;
      if (std::abs(term) < 1e-18 * std::abs(sum) && n > 4) {
        break;
      }
    }
    return 1.5707963267948966 * sum;
  }
  return (2.0 - m) * comp_ellint_1_m(m) - 2.0 * comp_ellint_2_m(m);
}

/// ((2 - m) K(m) - 2 E(m)) / m^2, finite at m = 0 (value pi/16). The series
/// branch divides term by term so no precision is lost for small m.
inline double ellint_combo_over_m2(double m) {
  if (m <= 0.5) {
    double cn = 0.25;  // c_1
    double sum = 0.0;
    double mn = 1.0;  // m^(n-2) at n = 2
    for (int n = 2; n <= 60; ++n) {
      const double ratio = (2.0 * n - 1.0) / (2.0 * n);
      const double cnext = cn * ratio * ratio;
      const double an = (4.0 * n / (2.0 * n - 1.0)) * cnext - cn;
      const double term = an * mn;
      sum += term;
      cn = cnext;
      mn *= m;
      if (std::abs(term) < 1e-18 * std::abs(sum) && n > 4) {
        break;
      }
    }
    return 1.5707963267948966 * sum;
  }
  return ((2.0 - m) * comp_ellint_1_m(m) - 2.0 * comp_ellint_2_m(m)) /
         (m * m);
}

}  // namespace rotstar::math
