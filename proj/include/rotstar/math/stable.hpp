// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cmath>
#include <limits>

/// \file
/// Cancellation-safe scalar kernels used throughout the solver. Every
/// function here evaluates a difference or ratio whose naive form loses
/// relative accuracy in the nearly-Newtonian regime, where the expansion
/// parameter is tiny.

namespace rotstar::math {

/// (e^x - 1) / x, continuous through x = 0.
inline double expm1_over_x(double x) {
  if (x == 0.0) {
    return 1.0;
  }
  return std::expm1(x) / x;
}

/// (e^x - 1 - x) / x = sum_{k>=1} x^k / (k+1)!, continuous through x = 0.
///
/// The naive form loses ~ 2 eps / x relative accuracy as x -> 0, so a
/// truncated series is used for small |x|.
inline double expm1m_over_x(double x) {
  if (std::abs(x) < 0.5) {
    // sum_{k>=1} x^k/(k+1)!; 22 terms overshoot double precision at |x|=0.5.
    double term = x / 2.0;  // k = 1
    double sum = term;
    for (int k = 2; k <= 22; ++k) {
      term *= x / (k + 1);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(x) - x) / x;
}

/// [ ((e^x - 1)/x)^p - 1 ], accurate for small |x| where the base is 1+O(x).
inline double pow_expm1_over_x_minus_1(double x, double p) {
  // (e^x-1)/x = 1 + expm1m_over_x(x); use expm1(p*log1p(.)) so the "-1"
  // never cancels.
  return std::expm1(p * std::log1p(expm1m_over_x(x)));
}

/// (s v 0)^p: positive part raised to a (generally fractional) power.
inline double pos_pow(double s, double p) {
  return s > 0.0 ? std::pow(s, p) : 0.0;
}

/// Generalized binomial tail (1+s)^p - 1 - p s = sum_{k>=2} C(p,k) s^k,
/// valid for |s| < 1; the series is used for |s| <= 1/2, where the direct
/// form loses up to ~|ps|/|tail| relative digits to cancellation.
inline double binom_tail(double p, double s) {
  if (std::abs(s) <= 0.5) {
    double coeff = p * (p - 1.0) / 2.0;  // C(p,2)
    double sk = s * s;
    double sum = coeff * sk;
    for (int k = 2; k <= 80; ++k) {
      coeff *= (p - k) / (k + 1.0);
      sk *= s;
      const double term = coeff * sk;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) {
        break;
      }
    }
    return sum;
  }
  return std::pow(1.0 + s, p) - 1.0 - p * s;
}

/// H(theta, d; p) := ((theta+d) v 0)^p - (theta v 0)^p - p (theta v 0)^{p-1} d.
///
/// The quadratic-and-higher remainder of the positive-part power function;
/// it degrades gracefully across the surface {theta = 0} where the function
/// is only C^1. Cancellation-safe for |d| << theta via binom_tail.
inline double pos_pow_remainder(double theta, double d, double p) {
  if (theta <= 0.0) {
    // Both subtracted terms vanish ((theta v 0)^{p-1} with p > 1).
    return pos_pow(theta + d, p);
  }
  const double s = d / theta;
  if (std::abs(s) <= 0.5) {
    return std::pow(theta, p) * binom_tail(p, s);
  }
  return pos_pow(theta + d, p) - std::pow(theta, p) -
         p * std::pow(theta, p - 1.0) * d;
}

/// Kummer-type series S(a,x) = sum_{k>=0} x^k / (a (a+1) ... (a+k)).
///
/// Satisfies S(a,0) = 1/a and integral_0^u s^{a-1} e^{-t s} ds
/// = u^a e^{-t u} S(a, t u). Converges for all x; intended for |x| <~ 1.
inline double kummer_s(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k <= 40; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) {
      break;
    }
  }
  return sum;
}

/// sqrt(1+x) - 1, cancellation-safe.
inline double sqrt1p_minus_1(double x) {
  return x / (std::sqrt(1.0 + x) + 1.0);
}

/// log(1+x)/x with the removable singularity filled in at x = 0.
inline double log1p_over_x(double x) {
  if (x == 0.0) {
    return 1.0;
  }
  return std::log1p(x) / x;
}

}  // namespace rotstar::math
