// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cmath>

#include "rotstar/errors.hpp"

/// \file
/// Smooth radial cutoff used by the potential operators: identically 1 on
/// [0, xi_in], identically 0 on [xi_out, infinity), and a C-infinity
/// exp-based smoothstep in between. Sources are multiplied by this profile
/// inside the operators so that their effective support stays strictly
/// inside the computational rectangle.

namespace rotstar::potential {

/// chi(eta) = sigma(t) / (sigma(t) + sigma(1-t)) with sigma(t) = e^{-1/t}
/// for t > 0 (else 0) and t = (xi_out - eta) / (xi_out - xi_in).
class Cutoff {
 public:
  Cutoff(double xi_in, double xi_out) : xi_in_(xi_in), xi_out_(xi_out) {
    if (!(xi_in > 0.0) || !(xi_out > xi_in)) {
      throw ValidationError("Cutoff: need 0 < xi_in < xi_out");
    }
  }

  /// Plateau radius (start of the roll-off).
  double xi_in() const { return xi_in_; }
  /// Support radius (end of the roll-off).
  double xi_out() const { return xi_out_; }

  double operator()(double eta) const {
    const double t = (xi_out_ - eta) / (xi_out_ - xi_in_);
    if (t >= 1.0) {
      return 1.0;
    }
    if (t <= 0.0) {
      return 0.0;
    }
    const double s_t = std::exp(-1.0 / t);
    const double s_u = std::exp(-1.0 / (1.0 - t));
    return s_t / (s_t + s_u);
  }

 private:
  double xi_in_;
  double xi_out_;
};

/// The standard construction for a domain of half-width xi0: roll-off from
/// the plateau radius xi_plateau to the midpoint (xi_plateau + xi0) / 2.
inline Cutoff default_cutoff(double xi_plateau, double xi0) {
  if (!(xi_plateau < xi0)) {
    throw ValidationError("default_cutoff: need xi_plateau < xi0");
  }
  return Cutoff(xi_plateau, 0.5 * (xi_plateau + xi0));
}

}  // namespace rotstar::potential
