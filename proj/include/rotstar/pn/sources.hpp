// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "rotstar/eos/polytrope.hpp"
#include "rotstar/errors.hpp"
#include "rotstar/grid/axigrid.hpp"
#include "rotstar/math/stable.hpp"
#include "rotstar/pn/background.hpp"
#include "rotstar/pn/state.hpp"

/// \file
/// Source terms of the slow-rotation correction scheme. The five local
/// evaluations — three potential sources (for the enthalpy correction, the
/// frame dragging, and the radius stretch) and the two gradient components
/// of the second metric exponent — are assembled as
///   total = (tau-independent leading part) + (remainder),
/// with every difference of exponentials or of powers routed through the
/// cancellation-free primitives in math/stable.hpp, so the remainders stay
/// O(tau) in exact arithmetic and accurate in floating point uniformly as
/// tau -> 0.
///
/// Each evaluation has a companion *_direct form that recomputes the same
/// quantity from the unexpanded field-equation reduction with plain
/// floating arithmetic and no term regrouping. The two paths are
/// algebraically identical, so at moderate tau (1e-2) they must agree to
/// roundoff; any transcription defect in either path shows up as an O(1)
/// relative disagreement. The test suite enforces this agreement at
/// analytic states where all derivatives are exact.
///
/// Sign and parity conventions. Coordinates are the dimensionless
/// meridional pair (varpi, z) >= 0. The potential sources are even in both
/// variables; the gradient components t1 (d/dvarpi) and t3 (d/dz) are
/// odd-even and even-odd respectively. The linear frame-dragging coupling
/// in the enthalpy source enters with a minus sign, -b (2y + varpi dy),
/// which the direct form certifies against the unexpanded reduction.

namespace rotstar::pn {

/// Parameters of one source assembly.
struct SourceParams {
  eos::Eos eos;
  double b_rot = 0.0;  ///< rotation strength 2 Omega^2 a^2 / u_O
  double tau = 0.0;    ///< relativistic smallness u_O / c^2
  /// Validated range of the enthalpy ratio u / u_O; larger values mean the
  /// state left the regime the equation of state was checked on.
  double u_hat_max = 1.5;
};

/// All local field values and derivatives one source evaluation needs.
/// The *_over entries hold (1/varpi) d(.)/dvarpi, which is finite on the
/// axis for fields even in varpi; grid callers fill them with the
/// parity-aware ratio stencil and analytic callers with the exact limit.
struct FieldPoint {
  double varpi = 0.0, z = 0.0;
  double theta = 0.0;  ///< background profile (may be <= 0 outside the star)
  double phi = 0.0;    ///< background potential
  double dphi_w = 0.0, dphi_z = 0.0, dphi_over = 0.0;
  double w = 0.0, dw_w = 0.0, dw_z = 0.0, dw_over = 0.0;
  double y = 0.0, dy_w = 0.0, dy_z = 0.0;
  double x = 0.0, dx_w = 0.0, dx_z = 0.0, dx_over = 0.0;
  double d2x_ww = 0.0, d2x_wz = 0.0, d2x_zz = 0.0;
  double v = 0.0;
};

/// One source value split into its tau-independent leading part and the
/// remainder; total = leading + remainder always holds exactly.
struct SourceSplit {
  double leading = 0.0;
  double remainder = 0.0;
  double total = 0.0;
};

namespace detail {

/// Shared per-point quantities of the source formulas.
struct PointCore {
  // Background and combined potentials.
  double vp, b, t, n;
  double thn, thn1, thnm1;       // theta_+^n, ^{n+1}, ^{n-1}
  double phip_n;                 // rotational-primed background potential
  double dpnw, dpnz, dpn_over;   // its gradient and axis-regular ratio
  double phip;                   // full primed potential (with -t w)
  double dpw, dpz, dp_over;
  double u_hat;                  // theta + t w
  double dprime;                 // -phi + t (v + w)
  double z2;                     // 2 t dprime
  double x4;                     // 4 t phip
  double s;                      // t^2 x
  double x1, q, xs;              // x + vp dx, x1^2 + vp^2 dxz^2, 2 x1 + t^2 q
  double cap_s;                  // 1 / (1 + t^2 xs)
  double p1, p3;                 // gradient of the stretched radius
  double y1, y3;                 // 2 y + vp dy, dy/dz

  PointCore(const FieldPoint& p, const SourceParams& sp)
      : vp(p.varpi), b(sp.b_rot), t(sp.tau), n(sp.eos.n_index()) {
    thn = math::pos_pow(p.theta, n);
    thn1 = math::pos_pow(p.theta, n + 1.0);
    thnm1 = math::pos_pow(p.theta, n - 1.0);
    phip_n = p.phi - 0.25 * b * vp * vp;
    dpnw = p.dphi_w - 0.5 * b * vp;
    dpnz = p.dphi_z;
    dpn_over = p.dphi_over - 0.5 * b;
    phip = phip_n - t * p.w;
    dpw = dpnw - t * p.dw_w;
    dpz = dpnz - t * p.dw_z;
    dp_over = dpn_over - t * p.dw_over;
    u_hat = p.theta + t * p.w;
    dprime = -p.phi + t * (p.v + p.w);
    z2 = 2.0 * t * dprime;
    x4 = 4.0 * t * phip;
    s = t * t * p.x;
    x1 = p.x + vp * p.dx_w;
    q = x1 * x1 + vp * vp * p.dx_z * p.dx_z;
    xs = 2.0 * x1 + t * t * q;
    cap_s = 1.0 / (1.0 + t * t * xs);
    p1 = 1.0 + t * t * x1;
    p3 = t * t * vp * p.dx_z;
    y1 = 2.0 * p.y + vp * p.dy_w;
    y3 = p.dy_z;
  }
};

/// Unexpanded right-hand sides of the two first-order equations for the
/// second metric exponent (shared by the expanded and direct paths; in the
/// expanded path they only appear with an explicit t^2 prefactor, so plain
/// arithmetic is safe there).
inline double rd_plain(const FieldPoint& p, const PointCore& c) {
  const double ax = p.dx_w + 0.5 * c.vp * (p.d2x_ww - p.d2x_zz);
  const double gf = c.vp * (c.dpw * c.dpw - c.dpz * c.dpz);
  const double what = std::exp(c.x4) / (1.0 + c.s);
  const double ysq =
      (2.0 + c.t * c.y1) * (2.0 + c.t * c.y1) - c.t * c.t * c.vp * c.vp * c.y3 * c.y3;
  return ax + (1.0 + c.s) * gf - (c.b / (8.0 * c.t)) * c.vp * what * ysq;
}

inline double re_plain(const FieldPoint& p, const PointCore& c) {
  const double bx = p.dx_z + c.vp * p.d2x_wz;
  const double hf = 2.0 * c.vp * c.dpw * c.dpz;
  const double what = std::exp(c.x4) / (1.0 + c.s);
  return bx + (1.0 + c.s) * hf -
         0.25 * c.b * c.vp * c.vp * what * (2.0 + c.t * c.y1) * c.y3;
}

inline void require_positive_tau(double tau, const char* who) {
  if (!(tau > 0.0)) {
    throw ValidationError(std::string(who) + ": requires tau > 0");
  }
}

}  // namespace detail

/// Source of the enthalpy-correction equation. Leading part: the
/// tau-independent system coupling the correction to the fresh frame
/// dragging through -b y1.
inline SourceSplit source_a(const FieldPoint& p, const SourceParams& sp) {
  const detail::PointCore c(p, sp);
  const double lam1 = sp.eos.lambda1_eff();
  const double g_a = -4.0 * c.b * c.phip_n - 2.0 * p.phi * c.thn +
                     lam1 * c.thn1 + 3.0 * c.thn1 / (c.n + 1.0);
  SourceSplit out;
  out.leading = g_a - c.b * c.y1;
  if (sp.tau > 0.0) {
    const double t = c.t;
    const double one_s = 1.0 + c.s;
    const double e4 = c.x4 * math::expm1m_over_x(c.x4);  // e^x - 1 - x
    const double em1x4 = std::expm1(c.x4);
    const double emz2 = std::expm1(c.z2);
    // (e^{z2} - 1 - z2) / t, cancellation-free.
    const double emz2m_over_t = 2.0 * c.dprime * math::expm1m_over_x(c.z2);
    const double w2 = std::exp(c.x4) / (one_s * one_s);
    const double pt = sp.eos.P_hat(c.u_hat, t);
    const double lrt = sp.eos.lambda_rho_over_tau(c.u_hat, t);
    const double lpt = sp.eos.lambda_P_over_tau(c.u_hat, t);
    const double pprn = math::pos_pow_remainder(p.theta, t * p.w, c.n);
    const double pprn1 = math::pos_pow_remainder(p.theta, t * p.w, c.n + 1.0);
    const double a1 = -t / one_s * (p.dx_w * c.dpw + p.dx_z * c.dpz);
    const double a2 =
        -(c.b / t) * ((e4 - (1.0 + c.x4) * c.s * (2.0 + c.s)) / (one_s * one_s) -
                      4.0 * t * t * p.w);
    const double a3 =
        -c.b * c.y1 * (em1x4 - c.s * (2.0 + c.s)) / (one_s * one_s);
    const double a4 = -0.25 * c.b * t * w2 *
                      (c.y1 * c.y1 + c.vp * c.vp * c.y3 * c.y3);
    const double a5 = pprn / t + lrt - lam1 * c.thn1;
    const double a6 = emz2 * (c.n * c.thnm1 * p.w + pprn / t + lrt);
    const double a7 = c.thn * (emz2m_over_t + 2.0 * t * (p.v + p.w));
    const double a8 = 3.0 * emz2 * pt;
    const double a9 =
        3.0 * (t * lpt + c.thn * t * p.w + pprn1 / (c.n + 1.0));
    out.remainder = a1 + a2 + a3 + a4 + a5 + a6 + a7 + a8 + a9;
  }
  out.total = out.leading + out.remainder;
  return out;
}

/// Unexpanded enthalpy source: the field-equation reduction rearranged for
/// the source, evaluated with plain floating arithmetic.
inline double source_a_direct(const FieldPoint& p, const SourceParams& sp) {
  detail::require_positive_tau(sp.tau, "source_a_direct");
  const detail::PointCore c(p, sp);
  const double t = c.t;
  const double one_s = 1.0 + c.s;
  const double rho_t = sp.eos.rho_hat(c.u_hat, t);
  const double pt = sp.eos.P_hat(c.u_hat, t);
  const double ysq = (2.0 + t * c.y1) * (2.0 + t * c.y1) +
                     t * t * c.vp * c.vp * c.y3 * c.y3;
  const double bracket =
      c.thn - c.b + t * t * (p.dx_w * c.dpw + p.dx_z * c.dpz) / one_s +
      0.25 * c.b * std::exp(c.x4) / (one_s * one_s) * ysq -
      std::exp(c.z2) * (rho_t + 3.0 * t * pt);
  return -bracket / t - c.n * c.thnm1 * p.w;
}

/// Source of the frame-dragging equation.
inline SourceSplit source_b(const FieldPoint& p, const SourceParams& sp) {
  const detail::PointCore c(p, sp);
  SourceSplit out;
  out.leading = 8.0 * c.dpn_over;
  if (sp.tau > 0.0) {
    const double t = c.t;
    const double one_s = 1.0 + c.s;
    const double b1 = -8.0 * t * p.dw_over;
    const double b2 = -t * (2.0 + t * c.y1) / one_s * p.dx_over;
    const double b3 = -t * t / one_s * p.dx_z * c.y3;
    const double b4 = 4.0 * t * c.dp_over * c.y1;
    const double b5 = 4.0 * t * c.dpz * c.y3;
    out.remainder = b1 + b2 + b3 + b4 + b5;
  }
  out.total = out.leading + out.remainder;
  return out;
}

inline double source_b_direct(const FieldPoint& p, const SourceParams& sp) {
  detail::require_positive_tau(sp.tau, "source_b_direct");
  const detail::PointCore c(p, sp);
  const double t = c.t;
  const double one_s = 1.0 + c.s;
  return (2.0 + t * c.y1) * (4.0 * c.dp_over - t * p.dx_over / one_s) +
         c.y3 * (4.0 * t * c.dpz - t * t * p.dx_z / one_s);
}

/// Source of the radius-stretch equation.
inline SourceSplit source_c(const FieldPoint& p, const SourceParams& sp) {
  const detail::PointCore c(p, sp);
  const double pn_th = c.thn1 / (c.n + 1.0);
  SourceSplit out;
  out.leading = -4.0 * pn_th;
  if (sp.tau > 0.0) {
    const double t = c.t;
    const double emz2 = std::expm1(c.z2);
    const double pt = sp.eos.P_hat(c.u_hat, t);
    const double lpt = sp.eos.lambda_P_over_tau(c.u_hat, t);
    const double pprn1 = math::pos_pow_remainder(p.theta, t * p.w, c.n + 1.0);
    const double p_diff =
        t * lpt + c.thn * t * p.w + pprn1 / (c.n + 1.0);  // P - P_N(theta)
    out.remainder = -4.0 * (emz2 * pt * (1.0 + c.s) + c.s * pt + p_diff);
  }
  out.total = out.leading + out.remainder;
  return out;
}

inline double source_c_direct(const FieldPoint& p, const SourceParams& sp) {
  detail::require_positive_tau(sp.tau, "source_c_direct");
  const detail::PointCore c(p, sp);
  return -4.0 * std::exp(c.z2) * sp.eos.P_hat(c.u_hat, c.t) * (1.0 + c.s);
}

namespace detail {

/// Stable pieces shared by the two gradient components.
struct GradCore {
  double g1x;    // (G' - 1 - x4) / t
  double gm1;    // G' - 1
  double gp;     // G'
  double sp1m1;  // S P1 - 1
  double gm3;    // G3 - 1
  double g3;     // G3
  double ax, bx, gn, hn, gf_diff, hf_diff;

  GradCore(const FieldPoint& p, const PointCore& c) {
    const double t = c.t;
    const double one_s = 1.0 + c.s;
    // (G' - 1 - x4) / t with G' = S P1 e^{x4} / (1 + s): numerator
    //   t (1 + x4)(-(x1 + x + t^2 q) - t^2 xs x) + P1 (e^{x4} - 1 - x4) / t,
    // all prefactors kept explicit so the value is O(tau) without
    // subtractive cancellation.
    const double n_over_t =
        t * (1.0 + c.x4) * (-(c.x1 + p.x + t * t * c.q) - t * t * c.xs * p.x) +
        c.p1 * 4.0 * c.phip * math::expm1m_over_x(c.x4);
    g1x = c.cap_s / one_s * n_over_t;
    gm1 = t * g1x + c.x4;
    gp = 1.0 + gm1;
    sp1m1 = -c.cap_s * t * t * (c.x1 + t * t * c.q);
    gm3 = c.cap_s * t * t * (-c.vp * p.dx_w + t * t * (c.x1 * p.x - c.q));
    g3 = 1.0 + gm3;
    ax = p.dx_w + 0.5 * c.vp * (p.d2x_ww - p.d2x_zz);
    bx = p.dx_z + c.vp * p.d2x_wz;
    gn = c.vp * (c.dpnw * c.dpnw - c.dpnz * c.dpnz);
    hn = 2.0 * c.vp * c.dpnw * c.dpnz;
    gf_diff = c.vp * (-2.0 * t * (c.dpnw * p.dw_w - c.dpnz * p.dw_z) +
                      t * t * (p.dw_w * p.dw_w - p.dw_z * p.dw_z));
    hf_diff = 2.0 * c.vp * (-t * (c.dpnw * p.dw_z + c.dpnz * p.dw_w) +
                            t * t * p.dw_w * p.dw_z);
  }
};

}  // namespace detail

/// Radial gradient component of the second metric exponent (odd in varpi,
/// even in z).
inline SourceSplit grad_v_varpi(const FieldPoint& p, const SourceParams& sp) {
  const detail::PointCore c(p, sp);
  const detail::GradCore g(p, c);
  SourceSplit out;
  out.leading = -2.0 * c.b * c.phip_n * c.vp + g.ax + g.gn - 0.5 * c.b * c.vp * c.y1;
  if (sp.tau > 0.0) {
    const double t = c.t;
    const double d1 = 0.5 * c.b * c.vp * (4.0 * t * p.w - g.g1x);
    const double d2 = g.sp1m1 * g.ax;
    const double d3 = g.gm3 * g.gn + g.g3 * g.gf_diff;
    const double d4 = -0.5 * c.b * c.vp * c.y1 * g.gm1;
    const double d5 = -0.125 * c.b * t * c.vp * g.gp *
                      (c.y1 * c.y1 - c.vp * c.vp * c.y3 * c.y3);
    const double d6 = c.cap_s * c.p3 * detail::re_plain(p, c);
    out.remainder = d1 + d2 + d3 + d4 + d5 + d6;
  }
  out.total = out.leading + out.remainder;
  return out;
}

/// Axial gradient component of the second metric exponent (even in varpi,
/// odd in z).
inline SourceSplit grad_v_z(const FieldPoint& p, const SourceParams& sp) {
  const detail::PointCore c(p, sp);
  const detail::GradCore g(p, c);
  SourceSplit out;
  out.leading = g.bx + g.hn - 0.5 * c.b * c.vp * c.vp * c.y3;
  if (sp.tau > 0.0) {
    const double t = c.t;
    const double e1 = g.sp1m1 * g.bx;
    const double e2 = g.gm3 * g.hn + g.g3 * g.hf_diff;
    const double e3 = -0.5 * c.b * c.vp * c.vp * c.y3 * g.gm1;
    const double e4 = -0.25 * c.b * t * c.vp * c.vp * g.gp * c.y1 * c.y3;
    const double e5 = -c.cap_s * c.p3 * detail::rd_plain(p, c);
    out.remainder = e1 + e2 + e3 + e4 + e5;
  }
  out.total = out.leading + out.remainder;
  return out;
}

/// Unexpanded gradient components: solve the 2x2 first-order system with
/// plain arithmetic, including the determinant 1/(P1^2 + P3^2) (the
/// expanded path uses the closed form of that determinant, so agreement
/// also certifies the identity).
inline double grad_v_varpi_direct(const FieldPoint& p,
                                  const SourceParams& sp) {
  detail::require_positive_tau(sp.tau, "grad_v_varpi_direct");
  const detail::PointCore c(p, sp);
  const double s_plain = 1.0 / (c.p1 * c.p1 + c.p3 * c.p3);
  return 0.5 * c.b * c.vp / c.t +
         s_plain * (c.p1 * detail::rd_plain(p, c) + c.p3 * detail::re_plain(p, c));
}

inline double grad_v_z_direct(const FieldPoint& p, const SourceParams& sp) {
  detail::require_positive_tau(sp.tau, "grad_v_z_direct");
  const detail::PointCore c(p, sp);
  const double s_plain = 1.0 / (c.p1 * c.p1 + c.p3 * c.p3);
  return s_plain *
         (-c.p3 * detail::rd_plain(p, c) + c.p1 * detail::re_plain(p, c));
}

namespace detail {

/// Parity-aware (1/varpi) df/dvarpi for a field even in varpi: the ratio
/// off the axis, the second radial derivative on it. Uniformly second
/// order for smooth even fields (the centered-difference error of df is
/// itself odd in varpi, so the division does not lose an order).
inline grid::ScalarField ratio_d_varpi(const grid::ScalarField& f) {
  if (f.par_axis != grid::Parity::even) {
    throw ValidationError("ratio_d_varpi: field must be even in varpi");
  }
  const grid::ScalarField df = grid::derive(f, grid::Deriv::d_varpi);
  const grid::ScalarField d2f = grid::derive(f, grid::Deriv::d_varpi_varpi);
  grid::ScalarField out(f.grid, grid::Parity::even, f.par_equator);
  for (int j = 0; j < f.grid.n_cells; ++j) {
    out.v(0, j) = d2f.v(0, j);
  }
  for (int i = 1; i < f.grid.n_cells; ++i) {
    const double vp = f.grid.varpi(i);
    for (int j = 0; j < f.grid.n_cells; ++j) {
      out.v(i, j) = df.v(i, j) / vp;
    }
  }
  return out;
}

}  // namespace detail

/// Grid evaluation of all five sources plus their remainder splits.
struct SourceFields {
  grid::ScalarField s_a, s_b, s_c;  ///< potential sources, even-even
  grid::ScalarField t1;             ///< d/dvarpi component, odd-even
  grid::ScalarField t3;             ///< d/dz component, even-odd
  grid::ScalarField r_a, r_b, r_c, r_d, r_e;  ///< remainders (same parities)
  double u_hat_max = 0.0;  ///< largest enthalpy ratio encountered
};

/// Evaluates the sources of a state over the background grid. Throws
/// ValidationError when the enthalpy ratio leaves the validated range of
/// the equation of state.
inline SourceFields compute_sources(const Background& bg, const PnState& st,
                                    const SourceParams& sp) {
  require_state_consistent(st, "compute_sources");
  grid::require_same_grid(bg.theta, st.w, "compute_sources");
  if (std::abs(sp.eos.n_index() - bg.n_index) > 1e-12) {
    throw ValidationError(
        "compute_sources: equation-of-state index disagrees with the "
        "background profile");
  }
  if (std::abs(sp.b_rot - bg.b_rot) > 1e-12) {
    throw ValidationError(
        "compute_sources: rotation strength disagrees with the background");
  }
  const grid::AxiGrid& g = bg.grid();
  const int nn = g.n_cells;

  const grid::ScalarField dphi_w = grid::derive(bg.phi, grid::Deriv::d_varpi);
  const grid::ScalarField dphi_z = grid::derive(bg.phi, grid::Deriv::d_z);
  const grid::ScalarField dphi_over = detail::ratio_d_varpi(bg.phi);
  const grid::ScalarField dw_w = grid::derive(st.w, grid::Deriv::d_varpi);
  const grid::ScalarField dw_z = grid::derive(st.w, grid::Deriv::d_z);
  const grid::ScalarField dw_over = detail::ratio_d_varpi(st.w);
  const grid::ScalarField dy_w = grid::derive(st.y, grid::Deriv::d_varpi);
  const grid::ScalarField dy_z = grid::derive(st.y, grid::Deriv::d_z);
  const grid::ScalarField dx_w = grid::derive(st.x, grid::Deriv::d_varpi);
  const grid::ScalarField dx_z = grid::derive(st.x, grid::Deriv::d_z);
  const grid::ScalarField dx_over = detail::ratio_d_varpi(st.x);
  const grid::ScalarField d2x_ww =
      grid::derive(st.x, grid::Deriv::d_varpi_varpi);
  const grid::ScalarField d2x_wz = grid::derive(st.x, grid::Deriv::d_varpi_z);
  const grid::ScalarField d2x_zz = grid::derive(st.x, grid::Deriv::d_zz);

  double u_max = 0.0;
  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) {
      u_max = std::max(u_max, bg.theta.v(i, j) + sp.tau * st.w.v(i, j));
    }
  }
  if (!(u_max <= sp.u_hat_max)) {
    throw ValidationError(
        "compute_sources: enthalpy ratio " + std::to_string(u_max) +
        " exceeds the validated range " + std::to_string(sp.u_hat_max));
  }

  SourceFields out{
      grid::ScalarField(g, grid::Parity::even, grid::Parity::even),
      grid::ScalarField(g, grid::Parity::even, grid::Parity::even),
      grid::ScalarField(g, grid::Parity::even, grid::Parity::even),
      grid::ScalarField(g, grid::Parity::odd, grid::Parity::even),
      grid::ScalarField(g, grid::Parity::even, grid::Parity::odd),
      grid::ScalarField(g, grid::Parity::even, grid::Parity::even),
      grid::ScalarField(g, grid::Parity::even, grid::Parity::even),
      grid::ScalarField(g, grid::Parity::even, grid::Parity::even),
      grid::ScalarField(g, grid::Parity::odd, grid::Parity::even),
      grid::ScalarField(g, grid::Parity::even, grid::Parity::odd),
      u_max};

  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) {
      FieldPoint p;
      p.varpi = g.varpi(i);
      p.z = g.z(j);
      p.theta = bg.theta.v(i, j);
      p.phi = bg.phi.v(i, j);
      p.dphi_w = dphi_w.v(i, j);
      p.dphi_z = dphi_z.v(i, j);
      p.dphi_over = dphi_over.v(i, j);
      p.w = st.w.v(i, j);
      p.dw_w = dw_w.v(i, j);
      p.dw_z = dw_z.v(i, j);
      p.dw_over = dw_over.v(i, j);
      p.y = st.y.v(i, j);
      p.dy_w = dy_w.v(i, j);
      p.dy_z = dy_z.v(i, j);
      p.x = st.x.v(i, j);
      p.dx_w = dx_w.v(i, j);
      p.dx_z = dx_z.v(i, j);
      p.dx_over = dx_over.v(i, j);
      p.d2x_ww = d2x_ww.v(i, j);
      p.d2x_wz = d2x_wz.v(i, j);
      p.d2x_zz = d2x_zz.v(i, j);
      p.v = st.v.v(i, j);

      const SourceSplit a = source_a(p, sp);
      const SourceSplit bsrc = source_b(p, sp);
      const SourceSplit csrc = source_c(p, sp);
      const SourceSplit t1s = grad_v_varpi(p, sp);
      const SourceSplit t3s = grad_v_z(p, sp);
      out.s_a.v(i, j) = a.total;
      out.r_a.v(i, j) = a.remainder;
      out.s_b.v(i, j) = bsrc.total;
      out.r_b.v(i, j) = bsrc.remainder;
      out.s_c.v(i, j) = csrc.total;
      out.r_c.v(i, j) = csrc.remainder;
      out.t1.v(i, j) = t1s.total;
      out.r_d.v(i, j) = t1s.remainder;
      out.t3.v(i, j) = t3s.total;
      out.r_e.v(i, j) = t3s.remainder;
    }
  }
  return out;
}

}  // namespace rotstar::pn
