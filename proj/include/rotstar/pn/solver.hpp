// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

/// \file
/// Two-level fixed-point solver for the slowly rotating relativistic star.
///
/// The unknowns are the four even-even correction fields of PnState on a
/// common grid: the enthalpy correction w, the frame-dragging shape y, the
/// cylindrical stretch x, and the metric-quadrature field v. The inner
/// level holds v fixed and sweeps the three potential problems
///
///   laplacian_3 w + m chi w + chi S_a = 0   (linearized solve, w(0,0) = 0),
///   laplacian_5 y           + chi S_b = 0,
///   laplacian_4 x           + chi S_c = 0,
///
/// with the sources of compute_sources evaluated at the previous sweep,
/// except that the linear frame-dragging coupling -b (2y + varpi d_varpi y)
/// inside the enthalpy source is refreshed with the y just produced in the
/// same sweep. The outer level updates v by path quadrature of the gradient
/// pair (t1, t3) and re-runs the inner level until the weighted-norm
/// difference of successive outer iterates falls below tolerance.
///
/// The heavy machinery (grid, cutoff, potential solvers for the three
/// embedding dimensions, rotating background, linearized-solve context) is
/// independent of tau and of the tolerances, so one SolveContext serves a
/// whole tau sweep at fixed structural parameters (gamma, b, grid).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rotstar/errors.hpp"
#include "rotstar/grid/axigrid.hpp"
#include "rotstar/newton/distorted.hpp"
#include "rotstar/newton/resolvent.hpp"
#include "rotstar/pn/background.hpp"
#include "rotstar/pn/sources.hpp"
#include "rotstar/pn/state.hpp"
#include "rotstar/potential/cutoff.hpp"
#include "rotstar/potential/poisson.hpp"

namespace rotstar::pn {

/// Full configuration of a two-level solve. The structural fields (gamma,
/// b_rot, grid_n, xi0, domain_factor, lambda block) select the background a
/// SolveContext bakes in; the runtime fields (tau, tolerances, iteration
/// budgets, damping, alpha, u_hat_max) may vary between runs on one context.
struct SolveConfig {
  double gamma = 5.0 / 3.0;  ///< adiabatic exponent, must lie in (6/5, 2)
  double b_rot = 0.02;       ///< rotation strength 2 Omega^2 a^2 / u_O
  double tau = 1e-3;         ///< relativistic smallness u_O / c^2
  int grid_n = 129;          ///< nodes per direction (odd, >= 33)
  /// Domain half-size in units of the length scale; 0 selects
  /// domain_factor times the spherical surface radius.
  double xi0 = 0.0;
  double domain_factor = 2.5;  ///< used when xi0 == 0
  /// Hoelder exponent of the weighted norm; 0 selects default_alpha(gamma).
  double alpha = 0.0;
  double tol_inner = 1e-10;  ///< inner stopping tolerance (weighted norm)
  double tol_outer = 1e-9;   ///< outer stopping tolerance (weighted norm)
  int max_iter_inner = 60;
  int max_iter_outer = 40;
  double damping = 1.0;     ///< update fraction for both levels
  double u_hat_max = 1.5;   ///< validated range of the enthalpy ratio
  eos::LambdaMode lambda_mode = eos::LambdaMode::zero;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// One inner-level run: the fixed-point state at the given v plus the
/// convergence history of the sweeps.
struct InnerResult {
  PnState state;
  int iterations = 0;
  std::vector<double> differences;  ///< weighted-norm distance per sweep
  std::vector<double> ratios;       ///< successive-difference ratios
};

/// Gradient pair of the outer quadrature with its nondegeneracy diagnostic.
struct KPrimeGradient {
  grid::ScalarField t1;  ///< d/dvarpi right-hand side, odd-even
  grid::ScalarField t3;  ///< d/dz right-hand side, even-odd
  double b2_min = 0.0;   ///< min over nodes of |grad Pi|^2
  double u_hat_max = 0.0;
};

/// Convergence diagnostics of a full solve. Histories are indexed by outer
/// step; the consistency pass run after convergence is reported separately.
struct SolveReport {
  int outer_iterations = 0;
  std::vector<int> inner_iterations;  ///< sweeps used per outer step
  int final_inner_iterations = 0;     ///< sweeps of the consistency pass
  std::vector<double> inner_ratio_history;  ///< ratios of the last inner run
  std::vector<double> inner_median_ratios;  ///< per outer step
  std::vector<double> outer_differences;    ///< weighted-norm distance
  std::vector<double> outer_ratios;         ///< successive ratios
  std::vector<double> norm_c1_history;      ///< state C^1 norm per step
  std::vector<double> norm_c2a_history;     ///< state C^{2,alpha} norm
  std::vector<double> norm_total_history;   ///< weighted combination
  StateNorms final_norms;
  /// sup |v - quadrature(t1(v), t3(v))| evaluated at the returned state.
  double residual_fixed_point = 0.0;
  /// sup difference between the two canonical quadrature paths applied to
  /// the final gradient pair; measures the consistency of (t1, t3).
  double path_defect = 0.0;
  double b1_min = 0.0;  ///< min of the static-frame norm factor
  double b2_min = 0.0;  ///< min of |grad Pi|^2
  double u_hat_max = 0.0;
  double wall_ms = 0.0;
};

/// Converged state plus its report.
struct SolveResult {
  PnState state;
  SolveReport report;
};

/// Outer-level failure that still carries the diagnostics accumulated
/// before the stall, so a report can be written.
class SolveDivergenceError : public ConvergenceError {
 public:
  SolveDivergenceError(const std::string& what, int iterations,
                       double residual, SolveReport partial)
      : ConvergenceError(what, iterations, residual),
        report(std::move(partial)) {}
  SolveReport report;
};

/// Median of the successive-difference ratios of a convergence history;
/// 0 when fewer than two differences exist. Robust against the final sweep,
/// where the difference may sit at the tolerance floor.
inline double median_ratio(const std::vector<double>& differences) {
  std::vector<double> r;
  for (std::size_t k = 1; k < differences.size(); ++k) {
    const double denom = std::max(differences[k - 1],
                                  std::numeric_limits<double>::min());
    r.push_back(differences[k] / denom);
  }
  if (r.empty()) {
    return 0.0;
  }
  std::sort(r.begin(), r.end());
  const std::size_t m = r.size() / 2;
  return r.size() % 2 == 1 ? r[m] : 0.5 * (r[m - 1] + r[m]);
}

/// The combination 2 y + varpi d_varpi y through which the frame-dragging
/// shape enters the enthalpy source.
inline grid::ScalarField frame_drag_combination(const grid::ScalarField& y) {
  const grid::ScalarField dy = grid::derive(y, grid::Deriv::d_varpi);
  grid::ScalarField out(y.grid, y.par_axis, y.par_equator);
  const int n = y.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out.v(i, j) = 2.0 * y.v(i, j) + y.grid.varpi(i) * dy.v(i, j);
    }
  }
  return out;
}

/// Weighted norm of a single field, the outer-level analogue of the state
/// distance: C^1 norm plus kappa times the C^{2,alpha} norm.
inline double field_weighted_norm(const grid::ScalarField& f,
                                  const NormWeights& wts) {
  return c1_norm(f) + wts.kappa * grid::holder_norm(f, 2, wts.alpha);
}

/// Minima of the two metric nondegeneracy expressions over the grid:
/// b1 is the static-frame norm factor
///   e^{2F'} (1 - Omega A'/c)^2 - e^{-2F'} (Omega^2/c^2) Pi^2
/// written in scaled variables, which must stay positive for the static
/// frame to exist, and b2 is |grad Pi|^2, which must stay positive for the
/// metric-quadrature system to be solvable.
struct MetricMinima {
  double b1_min = 0.0;
  double b2_min = 0.0;
};

inline MetricMinima nondegeneracy_minima(const Background& bg,
                                         const PnState& st, double b_rot,
                                         double tau) {
  require_state_consistent(st, "nondegeneracy_minima");
  grid::require_same_grid(bg.theta, st.w, "nondegeneracy_minima");
  const grid::ScalarField dx_w = grid::derive(st.x, grid::Deriv::d_varpi);
  const grid::ScalarField dx_z = grid::derive(st.x, grid::Deriv::d_z);
  const grid::AxiGrid& g = bg.grid();
  MetricMinima out{std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
  for (int j = 0; j < g.n_cells; ++j) {
    for (int i = 0; i < g.n_cells; ++i) {
      const double vp = g.varpi(i);
      // Corotating redshift potential in scaled form, times tau = F'.
      const double phip = bg.phi.v(i, j) - 0.25 * b_rot * vp * vp -
                          tau * st.w.v(i, j);
      const double drag = 1.0 + 0.5 * b_rot * tau * vp * vp *
                                    (1.0 + tau * st.y.v(i, j));
      const double stretch = 1.0 + tau * tau * st.x.v(i, j);
      const double b1 =
          std::exp(2.0 * tau * phip) * drag * drag -
          std::exp(-2.0 * tau * phip) * 0.5 * b_rot * tau * vp * vp *
              stretch * stretch;
      const double p1 =
          1.0 + tau * tau * (st.x.v(i, j) + vp * dx_w.v(i, j));
      const double p3 = tau * tau * vp * dx_z.v(i, j);
      out.b1_min = std::min(out.b1_min, b1);
      out.b2_min = std::min(out.b2_min, p1 * p1 + p3 * p3);
    }
  }
  return out;
}

/// Grid, background, and operator stack shared by every run at fixed
/// structural parameters. Construction performs the rotating-background
/// solve and builds all boundary caches; it is the expensive step.
class SolveContext {
 public:
  explicit SolveContext(const SolveConfig& cfg)
      : cfg_(validated(cfg)),
        eos_(eos::EosParams{1.0, cfg.gamma, 1.0, 1.0, cfg.lambda_mode,
                            cfg.lambda1, cfg.lambda2}),
        disc_(discretization_of(cfg, eos_.n_index())),
        solver3_(disc_.grid, 3, disc_.cutoff),
        solver4_(disc_.grid, 4, disc_.cutoff),
        solver5_(disc_.grid, 5, disc_.cutoff),
        profile_(newton::solve_distorted(cfg.b_rot, eos_.n_index(),
                                         solver3_)),
        bg_(newtonian_background(profile_, solver3_)),
        resolvent_(profile_, solver3_) {
    solver4_.build_boundary_cache();
    solver5_.build_boundary_cache();
  }

  const grid::AxiGrid& grid() const { return disc_.grid; }
  const Background& background() const { return bg_; }
  const newton::DistortedLaneEmden& profile() const { return profile_; }
  const newton::ResolventContext& resolvent() const { return resolvent_; }
  const eos::Eos& equation_of_state() const { return eos_; }
  const SolveConfig& config() const { return cfg_; }

  /// Norm weights for a run: the configured Hoelder exponent (or the
  /// gamma default) with the tau-dependent coupling weight.
  NormWeights weights_for(const SolveConfig& cfg) const {
    const double a = cfg.alpha > 0.0 ? cfg.alpha : default_alpha(cfg.gamma);
    return NormWeights{a, default_kappa(cfg.tau, a)};
  }

  /// Inner level from the zero state.
  InnerResult inner_solve(const grid::ScalarField& v,
                          const SolveConfig& cfg) const {
    return inner_solve(v, cfg, zero_state(disc_.grid));
  }

  /// Inner level from a warm start. Holds v fixed and sweeps the three
  /// potential problems until the weighted-norm difference of successive
  /// states falls below tol_inner. The returned state carries v and has
  /// w(0, 0) = 0 after every sweep by construction of the linearized solve.
  InnerResult inner_solve(const grid::ScalarField& v, const SolveConfig& cfg,
                          const PnState& start) const {
    require_compatible(cfg);
    validate_runtime(cfg);
    if (v.grid != disc_.grid) {
      throw ValidationError("inner_solve: v is on the wrong grid");
    }
    if (v.par_axis != grid::Parity::even ||
        v.par_equator != grid::Parity::even) {
      throw ValidationError("inner_solve: v must be even in both variables");
    }
    const SourceParams sp{eos_, cfg.b_rot, cfg.tau, cfg.u_hat_max};
    const NormWeights wts = weights_for(cfg);
    InnerResult out{start, 0, {}, {}};
    out.state.v = v;
    require_state_consistent(out.state, "inner_solve");
    for (int it = 1; it <= cfg.max_iter_inner; ++it) {
      // A range violation on the first sweep is a genuine configuration
      // problem; on later sweeps it means the iteration is leaving the
      // validated regime, which is a convergence failure.
      const SourceFields src = [&] {
        try {
          return compute_sources(bg_, out.state, sp);
        } catch (const ValidationError& e) {
          if (it == 1) {
            throw;
          }
          throw ConvergenceError(
              std::string("inner_solve: state left the validated range: ") +
                  e.what(),
              it, out.differences.empty() ? 0.0 : out.differences.back());
        }
      }();
      const grid::ScalarField y_t = solver5_.apply(src.s_b);
      const grid::ScalarField x_t = solver4_.apply(src.s_c);
      PnState next = out.state;
      next.y.v = out.state.y.v + cfg.damping * (y_t.v - out.state.y.v);
      next.x.v = out.state.x.v + cfg.damping * (x_t.v - out.state.x.v);
      // Refresh the linear frame-dragging coupling with the y of this
      // sweep before solving for w; every other state dependence of the
      // enthalpy source stays at the previous sweep.
      grid::ScalarField s_a = src.s_a;
      s_a.v -= cfg.b_rot * (frame_drag_combination(next.y).v -
                            frame_drag_combination(out.state.y).v);
      const grid::ScalarField w_t = resolvent_.solve_direct(s_a).q;
      next.w.v = out.state.w.v + cfg.damping * (w_t.v - out.state.w.v);
      const double dist = state_distance(next, out.state, wts);
      out.differences.push_back(dist);
      if (out.differences.size() >= 2) {
        const std::size_t k = out.differences.size() - 1;
        out.ratios.push_back(
            out.differences[k] /
            std::max(out.differences[k - 1],
                     std::numeric_limits<double>::min()));
      }
      out.state = std::move(next);
      out.iterations = it;
      if (dist < cfg.tol_inner) {
        return out;
      }
    }
    throw ConvergenceError(
        "inner_solve: weighted-norm difference still " +
            format_history(out.differences) + " after " +
            std::to_string(cfg.max_iter_inner) +
            " sweeps; successive ratios " + format_history(out.ratios),
        cfg.max_iter_inner,
        out.differences.empty() ? 0.0 : out.differences.back());
  }

  /// Gradient pair for the outer quadrature, evaluated at a state by the
  /// stable expanded forms. Throws DegenerateMetricError when the gradient
  /// of the cylindrical stretch vanishes somewhere (the quadrature system
  /// is then unsolvable there).
  KPrimeGradient k_prime_gradient(const PnState& state,
                                  const SolveConfig& cfg) const {
    require_compatible(cfg);
    const SourceParams sp{eos_, cfg.b_rot, cfg.tau, cfg.u_hat_max};
    SourceFields src = compute_sources(bg_, state, sp);
    const MetricMinima mm =
        nondegeneracy_minima(bg_, state, cfg.b_rot, cfg.tau);
    if (!(mm.b2_min > 0.0)) {
      throw DegenerateMetricError(
          "k_prime_gradient: |grad Pi|^2 reaches " +
              std::to_string(mm.b2_min) +
              "; the stretch gradient must not vanish",
          mm.b2_min);
    }
    return KPrimeGradient{std::move(src.t1), std::move(src.t3), mm.b2_min,
                          src.u_hat_max};
  }

  /// Full two-level solve: iterates v -> quadrature of the gradient pair
  /// at the inner fixed point of v, damped by cfg.damping, until the
  /// weighted norm of the v-increment falls below tol_outer. After
  /// convergence one more inner pass at the final v produces the returned
  /// state, and the report's residual_fixed_point re-measures the
  /// quadrature defect there.
  SolveResult outer_solve(const SolveConfig& cfg) const {
    require_compatible(cfg);
    validate_runtime(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const NormWeights wts = weights_for(cfg);
    grid::ScalarField v(disc_.grid, grid::Parity::even, grid::Parity::even);
    PnState state = zero_state(disc_.grid);
    SolveReport rep;
    bool converged = false;
    for (int k = 1; k <= cfg.max_iter_outer; ++k) {
      InnerResult ir = run_inner(v, cfg, state, rep);
      state = std::move(ir.state);
      rep.inner_iterations.push_back(ir.iterations);
      rep.inner_median_ratios.push_back(median_ratio(ir.differences));
      rep.inner_ratio_history = std::move(ir.ratios);
      const StateNorms sn = state_norms(state, wts);
      rep.norm_c1_history.push_back(sn.c1);
      rep.norm_c2a_history.push_back(sn.c2a);
      rep.norm_total_history.push_back(sn.total);
      const KPrimeGradient kg = gradient_or_wrap(state, cfg, rep);
      rep.b2_min = kg.b2_min;
      rep.u_hat_max = std::max(rep.u_hat_max, kg.u_hat_max);
      const grid::ScalarField v_raw =
          grid::quadrature_from_gradient(kg.t1, kg.t3);
      grid::ScalarField step(disc_.grid, grid::Parity::even,
                             grid::Parity::even);
      step.v = cfg.damping * (v_raw.v - v.v);
      const double diff = field_weighted_norm(step, wts);
      rep.outer_differences.push_back(diff);
      if (rep.outer_differences.size() >= 2) {
        const std::size_t m = rep.outer_differences.size() - 1;
        rep.outer_ratios.push_back(
            rep.outer_differences[m] /
            std::max(rep.outer_differences[m - 1],
                     std::numeric_limits<double>::min()));
      }
      rep.outer_iterations = k;
      v.v += step.v;
      if (diff < cfg.tol_outer) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      const double last =
          rep.outer_differences.empty() ? 0.0 : rep.outer_differences.back();
      rep.wall_ms = elapsed_ms(t0);
      throw SolveDivergenceError(
          "outer_solve: weighted-norm difference still " +
              format_history(rep.outer_differences) + " after " +
              std::to_string(cfg.max_iter_outer) +
              " iterations; successive ratios " +
              format_history(rep.outer_ratios),
          cfg.max_iter_outer, last, std::move(rep));
    }
    // Consistency pass: the returned state is the inner fixed point of the
    // final v, and the fixed-point residual is measured at that state.
    InnerResult fin = run_inner(v, cfg, state, rep);
    state = std::move(fin.state);
    rep.final_inner_iterations = fin.iterations;
    const KPrimeGradient kg = gradient_or_wrap(state, cfg, rep);
    const grid::ScalarField v_check =
        grid::quadrature_from_gradient(kg.t1, kg.t3);
    const grid::ScalarField v_alt =
        grid::quadrature_from_gradient_alt(kg.t1, kg.t3);
    rep.residual_fixed_point = (v_check.v - v.v).abs().maxCoeff();
    rep.path_defect = (v_check.v - v_alt.v).abs().maxCoeff();
    const MetricMinima mm =
        nondegeneracy_minima(bg_, state, cfg.b_rot, cfg.tau);
    rep.b1_min = mm.b1_min;
    rep.b2_min = mm.b2_min;
    rep.u_hat_max = std::max(rep.u_hat_max, kg.u_hat_max);
    rep.final_norms = state_norms(state, weights_for(cfg));
    rep.wall_ms = elapsed_ms(t0);
    return SolveResult{std::move(state), std::move(rep)};
  }

 private:
  static SolveConfig validated(const SolveConfig& cfg) {
    default_alpha(cfg.gamma);  // enforces the gamma range
    if (!(cfg.b_rot >= 0.0)) {
      throw ValidationError("SolveConfig: b_rot must be >= 0");
    }
    if (cfg.xi0 != 0.0 && !(cfg.xi0 > 0.0)) {
      throw ValidationError("SolveConfig: xi0 must be positive or 0 (auto)");
    }
    validate_runtime(cfg);
    return cfg;
  }

  static void validate_runtime(const SolveConfig& cfg) {
    if (!(cfg.tau >= 0.0 && cfg.tau < 1.0)) {
      throw ValidationError("SolveConfig: tau must lie in [0, 1)");
    }
    if (cfg.alpha != 0.0 && !(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
      throw ValidationError(
          "SolveConfig: alpha must lie in (0, 1), or 0 for the default");
    }
    if (!(cfg.tol_inner > 0.0 && cfg.tol_outer > 0.0)) {
      throw ValidationError("SolveConfig: tolerances must be positive");
    }
    if (cfg.max_iter_inner < 1 || cfg.max_iter_outer < 1) {
      throw ValidationError("SolveConfig: iteration budgets must be >= 1");
    }
    if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) {
      throw ValidationError("SolveConfig: damping must lie in (0, 1]");
    }
    if (!(cfg.u_hat_max > 1.0)) {
      throw ValidationError(
          "SolveConfig: u_hat_max must exceed the central value 1");
    }
  }

  static newton::StarDiscretization discretization_of(const SolveConfig& cfg,
                                                      double n_index) {
    if (cfg.xi0 == 0.0) {
      return newton::standard_discretization(n_index, cfg.grid_n,
                                             cfg.domain_factor);
    }
    const newton::LaneEmdenSolution le = newton::solve_lane_emden(n_index);
    if (!(cfg.xi0 > 2.0 * le.xi1)) {
      throw ValidationError(
          "SolveConfig: xi0 must exceed twice the surface radius " +
          std::to_string(le.xi1));
    }
    return newton::StarDiscretization{
        grid::AxiGrid(cfg.xi0, cfg.grid_n),
        potential::default_cutoff(2.0 * le.xi1, cfg.xi0), le.xi1, le.mu1};
  }

  /// Rejects runtime configs whose structural fields differ from the ones
  /// this context baked into its background and operators.
  void require_compatible(const SolveConfig& cfg) const {
    const bool same =
        cfg.gamma == cfg_.gamma && cfg.b_rot == cfg_.b_rot &&
        cfg.grid_n == cfg_.grid_n && cfg.xi0 == cfg_.xi0 &&
        (cfg.xi0 != 0.0 || cfg.domain_factor == cfg_.domain_factor) &&
        cfg.lambda_mode == cfg_.lambda_mode &&
        cfg.lambda1 == cfg_.lambda1 && cfg.lambda2 == cfg_.lambda2;
    if (!same) {
      throw ValidationError(
          "SolveContext: structural parameters (gamma, b_rot, grid, lambda "
          "block) differ from the context; construct a new context");
    }
  }

  /// Inner run that converts a failure into an outer-level error carrying
  /// the partial report.
  InnerResult run_inner(const grid::ScalarField& v, const SolveConfig& cfg,
                        const PnState& warm, SolveReport& rep) const {
    try {
      return inner_solve(v, cfg, warm);
    } catch (const ConvergenceError& e) {
      SolveReport partial = rep;
      throw SolveDivergenceError(
          std::string("outer_solve: inner level failed: ") + e.what(),
          e.iterations, e.residual, std::move(partial));
    }
  }

  KPrimeGradient gradient_or_wrap(const PnState& state,
                                  const SolveConfig& cfg,
                                  SolveReport& rep) const {
    try {
      return k_prime_gradient(state, cfg);
    } catch (const DegenerateMetricError& e) {
      SolveReport partial = rep;
      throw SolveDivergenceError(
          std::string("outer_solve: ") + e.what(), e.iterations, e.residual,
          std::move(partial));
    }
  }

  static double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }

  /// Compact "a, b, ..., z" rendering of the tail of a history for error
  /// messages; at most the last six entries.
  static std::string format_history(const std::vector<double>& h) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << "[";
    const std::size_t start = h.size() > 6 ? h.size() - 6 : 0;
    for (std::size_t k = start; k < h.size(); ++k) {
      if (k > start) {
        os << ", ";
      }
      if (start > 0 && k == start) {
        os << "..., ";
      }
      os << h[k];
    }
    os << "]";
    return os.str();
  }

  SolveConfig cfg_;
  eos::Eos eos_;
  newton::StarDiscretization disc_;
  potential::PotentialSolver solver3_;
  potential::PotentialSolver solver4_;
  potential::PotentialSolver solver5_;
  newton::DistortedLaneEmden profile_;
  Background bg_;
  newton::ResolventContext resolvent_;
};

/// One-shot convenience: builds the context and runs the full solve.
inline SolveResult outer_solve(const SolveConfig& cfg) {
  const SolveContext ctx(cfg);
  return ctx.outer_solve(cfg);
}

}  // namespace rotstar::pn
