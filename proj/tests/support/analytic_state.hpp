// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cmath>

#include "rotstar/pn/sources.hpp"

/// \file
/// Analytic inputs for exercising the source formulas without a grid: a
/// radial (profile, potential) pair in closed form and separable test
/// fields whose derivatives of every required order are exact. With them a
/// FieldPoint can be assembled to machine precision at any point, so any
/// disagreement between the expanded and direct source paths is a formula
/// defect, never a discretization artifact.

namespace rotstar::testing {

/// Radial profile/potential pair: profile theta = exp(-r^2/n), so the
/// density-like source theta^n is the unit Gaussian exp(-r^2), whose
/// 3-D potential (vanishing at infinity) is
///   phi(r) = -(sqrt(pi)/4) erf(r) / r,      phi(0) = -1/2.
/// Small radii use the even power series of the same functions so the
/// 0/0 forms never appear:
///   phi(r)        = -(1/2) sum_k (-1)^k r^{2k} / (k! (2k+1)),
///   phi'(r)/r     =        sum_k (-1)^k r^{2k} / (k! (2k+3)).
struct GaussianPair {
  double n_index = 1.5;

  double theta(double r) const { return std::exp(-r * r / n_index); }

  double phi(double r) const {
    if (r < 0.5) {
      double sum = 0.0;
      double term = 1.0;  // (-1)^k r^{2k} / k!
      for (int k = 0; k <= 14; ++k) {
        sum += term / (2.0 * k + 1.0);
        term *= -r * r / (k + 1.0);
      }
      return -0.5 * sum;
    }
    return -0.25 * std::sqrt(M_PI) * std::erf(r) / r;
  }

  /// (1/r) d phi / d r, smooth through the origin (value 1/3 there).
  double phi_ratio(double r) const {
    if (r < 0.7) {
      double sum = 0.0;
      double term = 1.0;
      for (int k = 0; k <= 16; ++k) {
        sum += term / (2.0 * k + 3.0);
        term *= -r * r / (k + 1.0);
      }
      return sum;
    }
    const double dphi = -0.5 * std::exp(-r * r) / r +
                        0.25 * std::sqrt(M_PI) * std::erf(r) / (r * r);
    return dphi / r;
  }
};

/// Separable smooth field f = g(u, v) exp(-(u+v)/4) with u = varpi^2,
/// v = z^2 and bilinear g, even in both variables by construction. All
/// derivatives the sources consume are evaluated in closed form.
struct TestField {
  double c00 = 0.0, c10 = 0.0, c01 = 0.0, c11 = 0.0;

  struct Jet {
    double f = 0.0;
    double dw = 0.0, dz = 0.0;
    double over = 0.0;  ///< (1/varpi) df/dvarpi, finite on the axis
    double dww = 0.0, dwz = 0.0, dzz = 0.0;
  };

  Jet jet(double varpi, double z) const {
    const double u = varpi * varpi;
    const double v = z * z;
    const double e = std::exp(-0.25 * (u + v));
    const double g = c00 + c10 * u + c01 * v + c11 * u * v;
    const double gu = c10 + c11 * v;
    const double gv = c01 + c11 * u;
    // d/du and d/dv of (G e) chains: capital letters absorb the -1/4
    // factors of the exponential.
    const double cu = gu - 0.25 * g;
    const double cv = gv - 0.25 * g;
    const double cuu = -0.25 * gu - 0.25 * cu;         // g_uu = 0
    const double cuv = c11 - 0.25 * gv - 0.25 * cu;
    const double cvv = -0.25 * gv - 0.25 * cv;         // g_vv = 0
    Jet out;
    out.f = g * e;
    out.over = 2.0 * cu * e;
    out.dw = varpi * out.over;
    out.dz = 2.0 * z * cv * e;
    out.dww = e * (2.0 * cu + 4.0 * u * cuu);
    out.dwz = 4.0 * varpi * z * cuv * e;
    out.dzz = e * (2.0 * cv + 4.0 * v * cvv);
    return out;
  }
};

/// Bundle of one radial pair and four test fields assembled into exact
/// FieldPoints. The coefficient choices keep the fields O(1), mutually
/// distinct, and vanishing for w at the origin.
struct AnalyticState {
  GaussianPair bg;
  TestField w{0.0, 0.45, -0.30, 0.20};
  TestField y{0.70, -0.40, 0.20, -0.60};
  TestField x{0.50, 0.30, -0.70, 0.40};
  TestField v{-0.60, 0.25, 0.45, -0.20};

  pn::FieldPoint at(double varpi, double z) const {
    const double r = std::hypot(varpi, z);
    pn::FieldPoint p;
    p.varpi = varpi;
    p.z = z;
    p.theta = bg.theta(r);
    p.phi = bg.phi(r);
    const double ratio = bg.phi_ratio(r);
    p.dphi_w = varpi * ratio;
    p.dphi_z = z * ratio;
    p.dphi_over = ratio;
    const TestField::Jet jw = w.jet(varpi, z);
    p.w = jw.f;
    p.dw_w = jw.dw;
    p.dw_z = jw.dz;
    p.dw_over = jw.over;
    const TestField::Jet jy = y.jet(varpi, z);
    p.y = jy.f;
    p.dy_w = jy.dw;
    p.dy_z = jy.dz;
    const TestField::Jet jx = x.jet(varpi, z);
    p.x = jx.f;
    p.dx_w = jx.dw;
    p.dx_z = jx.dz;
    p.dx_over = jx.over;
    p.d2x_ww = jx.dww;
    p.d2x_wz = jx.dwz;
    p.d2x_zz = jx.dzz;
    const TestField::Jet jv = v.jet(varpi, z);
    p.v = jv.f;
    return p;
  }
};

}  // namespace rotstar::testing
