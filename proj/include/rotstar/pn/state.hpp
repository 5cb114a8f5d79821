// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <algorithm>
#include <cmath>

#include "rotstar/errors.hpp"
#include "rotstar/grid/axigrid.hpp"

/// \file
/// Correction-field state of the slow-rotation scheme and the norms that
/// drive its convergence control. The four fields are dimensionless
/// (hatted) amplitudes: w for the enthalpy correction, y for the frame
/// dragging, x for the cylindrical-radius stretch, and v for the second
/// metric exponent; the physical fields carry u_O^2, u_O, u_O^2, u_O^2
/// respectively, so one common power of u_O^2 scales all norms and the
/// contraction bookkeeping can stay dimensionless.

namespace rotstar::pn {

/// The four correction fields on one grid, all even in varpi and z.
/// w is pinned to w(0, 0) = 0 by the linearized solve; v is pinned to
/// v(0, 0) = 0 by the path quadrature that produces it.
struct PnState {
  grid::ScalarField w;
  grid::ScalarField y;
  grid::ScalarField x;
  grid::ScalarField v;
};

/// All-zero state on a grid.
inline PnState zero_state(const grid::AxiGrid& g) {
  const grid::ScalarField f(g, grid::Parity::even, grid::Parity::even);
  return PnState{f, f, f, f};
}

inline void require_state_consistent(const PnState& s, const char* who) {
  grid::require_same_grid(s.w, s.y, who);
  grid::require_same_grid(s.w, s.x, who);
  grid::require_same_grid(s.w, s.v, who);
  for (const grid::ScalarField* f : {&s.w, &s.y, &s.x, &s.v}) {
    if (f->par_axis != grid::Parity::even ||
        f->par_equator != grid::Parity::even) {
      throw ValidationError(std::string(who) +
                            ": state fields must be even in both variables");
    }
  }
}

/// Default Hoelder exponent: small enough that the C^{2,alpha} seminorm of
/// the density-like sources stays finite near the star surface, where the
/// profile vanishes like a power with exponent n = 1/(gamma - 1) > 1.
inline double default_alpha(double gamma) {
  if (!(gamma > 1.2 && gamma < 2.0)) {
    throw ValidationError("default_alpha: gamma must lie in (6/5, 2)");
  }
  return std::min(0.25, 0.5 * (1.0 / (gamma - 1.0) - 1.0));
}

/// Weight coupling the first- and second-order norms; vanishes with tau so
/// the composite norm degenerates to the C^1 norm in the nonrelativistic
/// limit at exactly the rate the contraction estimates require.
inline double default_kappa(double tau, double alpha) {
  if (!(tau >= 0.0)) {
    throw ValidationError("default_kappa: tau must be >= 0");
  }
  return 2.0 * std::pow(tau, 1.0 - alpha);
}

/// Discrete C^1 norm estimate: sup of the field plus the largest sup among
/// its first derivatives (same convention as the C-part of holder_norm).
inline double c1_norm(const grid::ScalarField& f) {
  return f.max_abs() + std::max(grid::derive(f, grid::Deriv::d_varpi).max_abs(),
                                grid::derive(f, grid::Deriv::d_z).max_abs());
}

/// Norm weights of the convergence control.
struct NormWeights {
  double alpha = 0.25;
  double kappa = 0.0;
};

inline NormWeights default_weights(double gamma, double tau) {
  const double a = default_alpha(gamma);
  return NormWeights{a, default_kappa(tau, a)};
}

/// The three norms of one state (v excluded: the outer level controls it
/// separately): c1 = max over {w, y, x} of the C^1 estimates, c2a the same
/// max of C^{2,alpha} estimates, total = c1 + kappa * c2a.
struct StateNorms {
  double c1 = 0.0;
  double c2a = 0.0;
  double total = 0.0;
};

inline StateNorms state_norms(const PnState& s, const NormWeights& wts) {
  require_state_consistent(s, "state_norms");
  StateNorms out;
  for (const grid::ScalarField* f : {&s.w, &s.y, &s.x}) {
    out.c1 = std::max(out.c1, c1_norm(*f));
    out.c2a = std::max(out.c2a, grid::holder_norm(*f, 2, wts.alpha));
  }
  out.total = out.c1 + wts.kappa * out.c2a;
  return out;
}

/// Composite distance between two states, the contraction metric of the
/// inner fixed point.
inline double state_distance(const PnState& a, const PnState& b,
                             const NormWeights& wts) {
  grid::require_same_grid(a.w, b.w, "state_distance");
  PnState diff = a;
  diff.w.v = a.w.v - b.w.v;
  diff.y.v = a.y.v - b.y.v;
  diff.x.v = a.x.v - b.x.v;
  diff.v.v = a.v.v - b.v.v;
  return state_norms(diff, wts).total;
}

}  // namespace rotstar::pn
