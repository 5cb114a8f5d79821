// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cmath>
#include <string>

#include "rotstar/errors.hpp"
#include "rotstar/math/quadrature.hpp"
#include "rotstar/math/stable.hpp"

/// \file
/// Equation of state of the polytropic star, its expansions around the
/// nonrelativistic limit, and the derived star parameters (length scale,
/// rotation parameter, angular velocity) with nondimensionalization.
///
/// Two correction modes are supported:
///  - zero: the exact polytrope P = A rho^gamma. The density-enthalpy
///    relation then carries an induced correction profile
///    (expm1(eta)/eta)^n - 1 with eta = ((gamma-1)/gamma) u/c^2, whose
///    linear coefficient is 1/(2 gamma).
///  - linear_quadratic: the density-enthalpy correction profile is the
///    polynomial lambda1 x + lambda2 x^2 in x = u/c^2, and the pressure is
///    defined by exactly integrating dP/du = rho + P/c^2 (a Kummer-type
///    series), so thermodynamic consistency is exact in both modes.

namespace rotstar::eos {

enum class LambdaMode { zero, linear_quadratic };

inline std::string to_string(LambdaMode m) {
  return m == LambdaMode::zero ? "zero" : "linear_quadratic";
}

/// Physical EOS parameters. gamma is restricted to (6/5, 2): below, the
/// star has no compact Newtonian support; above, the density-enthalpy map
/// loses the smoothness class the scheme relies on.
struct EosParams {
  double A_poly = 1.0;
  double gamma = 5.0 / 3.0;
  double c_light = 1.0;
  double G_grav = 1.0;
  LambdaMode lambda_mode = LambdaMode::zero;
  double lambda1 = 0.0;  ///< linear density-correction coefficient (lq mode)
  double lambda2 = 0.0;  ///< quadratic density-correction coefficient

  double n_index() const { return 1.0 / (gamma - 1.0); }

  void validate() const {
    if (!(gamma > 1.2 && gamma < 2.0)) {
      throw ValidationError("EosParams: gamma must lie in (6/5, 2), got " +
                            std::to_string(gamma));
    }
    if (!(A_poly > 0.0) || !(c_light > 0.0) || !(G_grav > 0.0)) {
      throw ValidationError("EosParams: A_poly, c_light, G_grav must be > 0");
    }
  }
};

/// Equation of state with exact conversions in both directions and the
/// dimensionless (hat) forms used by the solver. All hat functions take
/// u_hat = u/u_O and tau = u_O/c^2, where u_O is the central enthalpy of
/// the run; the density unit is the central Newtonian density rho_O and
/// the pressure unit is rho_O u_O.
class Eos {
 public:
  explicit Eos(const EosParams& params) : p_(params) { p_.validate(); }

  const EosParams& params() const { return p_; }
  double n_index() const { return p_.n_index(); }

  // ---- physical-unit laws -------------------------------------------------

  /// P(rho). Exact polytrope in zero mode; P(u(rho)) in lq mode.
  double pressure_of_density(double rho) const {
    if (rho < 0.0) {
      throw ValidationError("pressure_of_density: rho must be >= 0");
    }
    if (rho == 0.0) {
      return 0.0;
    }
    if (p_.lambda_mode == LambdaMode::zero) {
      return p_.A_poly * std::pow(rho, p_.gamma);
    }
    return pressure_of_enthalpy(enthalpy_of_density(rho));
  }

  /// u(rho) = integral_0^rho dP/(rho' + P/c^2): specific relativistic
  /// enthalpy, vanishing at zero density.
  double enthalpy_of_density(double rho) const {
    if (rho < 0.0) {
      throw ValidationError("enthalpy_of_density: rho must be >= 0");
    }
    if (rho == 0.0) {
      return 0.0;
    }
    const double c2 = p_.c_light * p_.c_light;
    if (p_.lambda_mode == LambdaMode::zero) {
      // Closed form for the exact polytrope.
      const double g = p_.gamma;
      return c2 * (g / (g - 1.0)) *
             std::log1p(p_.A_poly * std::pow(rho, g - 1.0) / c2);
    }
    // lq mode: invert the closed-form rho(u) by Newton iteration from the
    // nonrelativistic seed.
    const double g = p_.gamma;
    double u = p_.A_poly * g / (g - 1.0) * std::pow(rho, g - 1.0);
    for (int iter = 0; iter < 100; ++iter) {
      const double f = density_of_enthalpy(u) - rho;
      const double df = d_density_d_enthalpy(u);
      const double du = f / df;
      u -= du;
      if (std::abs(du) < 1e-15 * std::abs(u)) {
        break;
      }
    }
    return u;
  }

  /// rho(u); zero for u <= 0 (vacuum convention).
  double density_of_enthalpy(double u) const {
    if (u <= 0.0) {
      return 0.0;
    }
    const double c2 = p_.c_light * p_.c_light;
    const double g = p_.gamma;
    const double n = p_.n_index();
    if (p_.lambda_mode == LambdaMode::zero) {
      const double eta = (g - 1.0) / g * u / c2;
      return std::pow(c2 / p_.A_poly * std::expm1(eta), n);
    }
    const double x = u / c2;
    return f_rho(u) * (1.0 + p_.lambda1 * x + p_.lambda2 * x * x);
  }

  /// d rho/d u for u > 0 (used by the Newton inversion and sound speed).
  double d_density_d_enthalpy(double u) const {
    if (u <= 0.0) {
      return 0.0;
    }
    const double c2 = p_.c_light * p_.c_light;
    const double g = p_.gamma;
    const double n = p_.n_index();
    if (p_.lambda_mode == LambdaMode::zero) {
      const double eta = (g - 1.0) / g * u / c2;
      const double base = c2 / p_.A_poly * std::expm1(eta);
      return n * std::pow(base, n - 1.0) * std::exp(eta) / p_.A_poly *
             (g - 1.0) / g;
    }
    const double x = u / c2;
    const double corr = 1.0 + p_.lambda1 * x + p_.lambda2 * x * x;
    const double dcorr = (p_.lambda1 + 2.0 * p_.lambda2 * x) / c2;
    return f_rho(u) * (n / u * corr + dcorr);
  }

  /// P(u) from the exact relation dP/du = rho + P/c^2, P(0) = 0.
  double pressure_of_enthalpy(double u) const {
    if (u <= 0.0) {
      return 0.0;
    }
    const double c2 = p_.c_light * p_.c_light;
    const double g = p_.gamma;
    const double n = p_.n_index();
    const double x = u / c2;
    if (p_.lambda_mode == LambdaMode::zero) {
      return p_.A_poly * std::pow(density_of_enthalpy(u), g);
    }
    const double s1 = math::kummer_s(n + 1.0, x);
    const double s2 = math::kummer_s(n + 2.0, x);
    const double s3 = math::kummer_s(n + 3.0, x);
    const double K = std::pow((g - 1.0) / (p_.A_poly * g), n);
    return K * std::pow(u, n + 1.0) *
           (s1 + p_.lambda1 * x * s2 + p_.lambda2 * x * x * s3);
  }

  /// dP/drho = (rho + P/c^2) / (drho/du); must stay below c^2 (causality).
  double dP_drho(double rho) const {
    if (rho <= 0.0) {
      return 0.0;
    }
    if (p_.lambda_mode == LambdaMode::zero) {
      return p_.A_poly * p_.gamma * std::pow(rho, p_.gamma - 1.0);
    }
    const double u = enthalpy_of_density(rho);
    const double c2 = p_.c_light * p_.c_light;
    return (rho + pressure_of_enthalpy(u) / c2) / d_density_d_enthalpy(u);
  }

  /// Checks P > 0, dP/drho > 0 and dP/drho < c^2 at 100 log-spaced
  /// densities in [rho_max/1e6, rho_max]; throws on violation.
  void validate_range(double rho_max) const {
    const double c2 = p_.c_light * p_.c_light;
    for (int i = 0; i < 100; ++i) {
      const double rho = rho_max * std::pow(10.0, -6.0 * (99 - i) / 99.0);
      const double dp = dP_drho(rho);
      if (!(pressure_of_density(rho) > 0.0) || !(dp > 0.0) || !(dp < c2)) {
        throw ValidationError(
            "Eos::validate_range: causality/monotonicity violated at rho = " +
            std::to_string(rho));
      }
    }
  }

  // ---- dimensionless (hat) laws -------------------------------------------

  /// rho/rho_O as a function of u_hat = u/u_O, with tau = u_O/c^2.
  double rho_hat(double u_hat, double tau) const {
    const double n = p_.n_index();
    const double pos = math::pos_pow(u_hat, n);
    if (pos == 0.0) {
      return 0.0;
    }
    if (p_.lambda_mode == LambdaMode::zero) {
      const double eta = (p_.gamma - 1.0) / p_.gamma * tau * u_hat;
      return pos * std::exp(n * std::log1p(math::expm1m_over_x(eta)));
    }
    const double x = tau * u_hat;
    return pos * (1.0 + p_.lambda1 * x + p_.lambda2 * x * x);
  }

  /// (rho_hat - (u_hat v 0)^n) / tau: the relativistic density correction
  /// with the leading tau divided out, evaluated without cancellation.
  double lambda_rho_over_tau(double u_hat, double tau) const {
    const double n = p_.n_index();
    const double pos = math::pos_pow(u_hat, n);
    if (pos == 0.0) {
      return 0.0;
    }
    if (p_.lambda_mode == LambdaMode::zero) {
      const double eta = (p_.gamma - 1.0) / p_.gamma * tau * u_hat;
      return pos * math::pow_expm1_over_x_minus_1(eta, n) / tau;
    }
    return pos * (p_.lambda1 * u_hat + p_.lambda2 * tau * u_hat * u_hat);
  }

  /// P/(rho_O u_O) as a function of u_hat, with tau = u_O/c^2.
  double P_hat(double u_hat, double tau) const {
    const double n = p_.n_index();
    const double pos = math::pos_pow(u_hat, n + 1.0);
    if (pos == 0.0) {
      return 0.0;
    }
    if (p_.lambda_mode == LambdaMode::zero) {
      const double eta = (p_.gamma - 1.0) / p_.gamma * tau * u_hat;
      return pos / (n + 1.0) *
             std::exp((n + 1.0) * std::log1p(math::expm1m_over_x(eta)));
    }
    const double x = tau * u_hat;
    return pos * (math::kummer_s(n + 1.0, x) +
                  p_.lambda1 * x * math::kummer_s(n + 2.0, x) +
                  p_.lambda2 * x * x * math::kummer_s(n + 3.0, x));
  }

  /// Newtonian pressure (u_hat v 0)^{n+1}/(n+1) in the same units.
  double P_hat_newtonian(double u_hat) const {
    const double n = p_.n_index();
    return math::pos_pow(u_hat, n + 1.0) / (n + 1.0);
  }

  /// (P_hat - P_hat_newtonian)/tau without cancellation.
  double lambda_P_over_tau(double u_hat, double tau) const {
    const double n = p_.n_index();
    const double pos = math::pos_pow(u_hat, n + 1.0);
    if (pos == 0.0) {
      return 0.0;
    }
    if (p_.lambda_mode == LambdaMode::zero) {
      const double eta = (p_.gamma - 1.0) / p_.gamma * tau * u_hat;
      return pos / (n + 1.0) *
             math::pow_expm1_over_x_minus_1(eta, n + 1.0) / tau;
    }
    // Kummer form: S(a,x) = 1/a + x S'(...); subtract the leading 1/(n+1).
    const double x = tau * u_hat;
    const double s1_tail =
        (math::kummer_s(n + 1.0, x) - 1.0 / (n + 1.0)) / tau;
    return pos * (s1_tail +
                  p_.lambda1 * u_hat * math::kummer_s(n + 2.0, x) +
                  p_.lambda2 * tau * u_hat * u_hat *
                      math::kummer_s(n + 3.0, x));
  }

  /// The linear coefficient of the density-correction profile, appearing
  /// explicitly in the enthalpy-perturbation source.
  double lambda1_eff() const {
    if (p_.lambda_mode == LambdaMode::zero) {
      return 1.0 / (2.0 * p_.gamma);
    }
    return p_.lambda1;
  }

  /// Quadratic remainder of the Newtonian density map across the surface:
  /// H(theta, d) = ((theta+d) v 0)^n - (theta v 0)^n - n (theta v 0)^{n-1} d,
  /// in units of rho_O (d = tau * w_hat).
  double h_rho_hat(double theta, double d) const {
    return math::pos_pow_remainder(theta, d, p_.n_index());
  }

 private:
  /// Newtonian density map f(u) = ((gamma-1) u / (A gamma))^{1/(gamma-1)}.
  double f_rho(double u) const {
    const double g = p_.gamma;
    return std::pow((g - 1.0) * u / (p_.A_poly * g), p_.n_index());
  }

  EosParams p_;
};

/// Derived star parameters of a run.
struct StarParams {
  double u_O = 0.0;     ///< central enthalpy
  double tau = 0.0;     ///< u_O / c^2
  double a_len = 0.0;   ///< length scale of the nondimensionalization
  double b_rot = 0.0;   ///< dimensionless rotation parameter
  double Omega = 0.0;   ///< angular velocity
  double rho_O = 0.0;   ///< central Newtonian density
  double n_index = 0.0;

  /// Omega a / c: the dimensionless angular velocity sqrt(b tau / 2).
  double omega_hat() const { return std::sqrt(b_rot * tau / 2.0); }
};

/// Computes the star parameters from the central enthalpy and rotation
/// parameter:
///   rho_O = ((gamma-1) u_O/(A gamma))^{1/(gamma-1)},
///   a^2   = A gamma rho_O^{gamma-2} / (4 pi G (gamma-1)),
///   Omega = sqrt(2 pi G rho_O b).
/// These imply 4 pi G rho_O a^2 = u_O and Omega^2 a^2 / u_O = b/2.
inline StarParams newtonian_params(double u_O, double b_rot,
                                   const EosParams& eos) {
  eos.validate();
  if (!(u_O > 0.0)) {
    throw ValidationError("newtonian_params: u_O must be > 0");
  }
  if (b_rot < 0.0) {
    throw ValidationError("newtonian_params: b_rot must be >= 0");
  }
  StarParams sp;
  const double g = eos.gamma;
  sp.u_O = u_O;
  sp.tau = u_O / (eos.c_light * eos.c_light);
  sp.b_rot = b_rot;
  sp.n_index = eos.n_index();
  sp.rho_O = std::pow((g - 1.0) * u_O / (eos.A_poly * g), sp.n_index);
  sp.a_len = std::sqrt(eos.A_poly * g * std::pow(sp.rho_O, g - 2.0) /
                       (4.0 * M_PI * eos.G_grav * (g - 1.0)));
  sp.Omega = std::sqrt(2.0 * M_PI * eos.G_grav * sp.rho_O * b_rot);
  return sp;
}

}  // namespace rotstar::eos
