// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

/// \file
/// Adaptive explicit Runge-Kutta integration (Dormand-Prince 5(4)) with
/// dense step storage and root-accurate event location. Used for the radial
/// Lane-Emden profile and the spherically symmetric relativistic oracle.

namespace rotstar::math {

/// One accepted integration step: state and derivative at both ends.
template <int N>
struct OdeStep {
  double t0, t1;
  std::array<double, N> y0, y1, f0, f1;
};

/// Dense output over accepted steps via cubic Hermite interpolation.
/// Accuracy follows the step tolerance because steps are small where the
/// solution varies; event times are refined by re-integration, not by this
/// interpolant.
template <int N>
struct OdeSolution {
  std::vector<OdeStep<N>> steps;

  /// Interpolates component k at time t (clamped to the covered range).
  double eval(double t, int k) const {
    if (steps.empty()) {
      throw std::runtime_error("OdeSolution::eval: empty solution");
    }
    // Binary search for the step containing t.
    std::size_t lo = 0;
    std::size_t hi = steps.size() - 1;
    if (t <= steps.front().t0) {
      lo = 0;
    } else if (t >= steps.back().t1) {
      lo = steps.size() - 1;
    } else {
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (steps[mid].t1 < t) {
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
    }
    const auto& s = steps[lo];
    const double h = s.t1 - s.t0;
    const double u = (t - s.t0) / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    return h00 * s.y0[k] + h10 * h * s.f0[k] + h01 * s.y1[k] +
           h11 * h * s.f1[k];
  }

  double t_end() const { return steps.empty() ? 0.0 : steps.back().t1; }
};

/// Dormand-Prince 5(4) adaptive integrator.
///
/// Integrates y' = f(t,y) from (t0,y0) to t_end with relative/absolute
/// tolerances; optionally stops at the first root of event(t,y) (sign change
/// detected on accepted steps, then bisected to near machine precision by
/// re-integrating inside the bracketing step).
template <int N>
class DormandPrince {
 public:
  using Rhs = std::function<void(double, const std::array<double, N>&,
                                 std::array<double, N>&)>;
  using Event = std::function<double(double, const std::array<double, N>&)>;

  struct Result {
    OdeSolution<N> solution;
    bool event_hit = false;
    double event_time = 0.0;
    std::array<double, N> event_state{};
    std::size_t n_steps = 0;
  };

  DormandPrince(Rhs rhs, double rtol = 1e-12, double atol = 1e-14)
      : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol) {}

  void set_max_step(double h) { max_step_ = h; }
  void set_initial_step(double h) { init_step_ = h; }

  Result integrate(double t0, std::array<double, N> y0, double t_end,
                   const Event* event = nullptr) const {
    Result res;
    double t = t0;
    std::array<double, N> y = y0;
    std::array<double, N> f;
    rhs_(t, y, f);
    double h = init_step_ > 0.0 ? init_step_
                                : std::min(1e-3 * (t_end - t0), max_step_);
    double ev_prev = event ? (*event)(t, y) : 0.0;
    constexpr int max_steps = 2000000;
    for (int step = 0; step < max_steps && t < t_end; ++step) {
      h = std::min({h, max_step_, t_end - t});
      std::array<double, N> y_new, f_new;
      double err = 0.0;
      attempt(t, y, f, h, y_new, f_new, err);
      if (err > 1.0) {  // reject; shrink
        h *= std::max(0.2, 0.9 * std::pow(err, -0.25));
        continue;
      }
      OdeStep<N> s;
      s.t0 = t;
      s.t1 = t + h;
      s.y0 = y;
      s.y1 = y_new;
      s.f0 = f;
      s.f1 = f_new;
      res.solution.steps.push_back(s);
      ++res.n_steps;
      const double t_new = t + h;
      if (event) {
        const double ev_new = (*event)(t_new, y_new);
        if (ev_prev > 0.0 && ev_new <= 0.0) {
          locate_event(*event, s, res);
          return res;
        }
        ev_prev = ev_new;
      }
      t = t_new;
      y = y_new;
      f = f_new;
      h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-16),
                                                      -0.2)));
    }
    return res;
  }

 private:
  // One 5(4) attempt; err is the scaled error norm (accept if <= 1).
  void attempt(double t, const std::array<double, N>& y,
               const std::array<double, N>& f0, double h,
               std::array<double, N>& y_out, std::array<double, N>& f_out,
               double& err) const {
    // Dormand-Prince coefficients.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    std::array<double, N> k2, k3, k4, k5, k6, k7, tmp;
    auto stage = [&](double ci, const std::array<double, N>& yi,
                     std::array<double, N>& ki) { rhs_(t + ci * h, yi, ki); };
    for (int i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * f0[i];
    stage(c2, tmp, k2);
    for (int i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a31 * f0[i] + a32 * k2[i]);
    stage(c3, tmp, k3);
    for (int i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a41 * f0[i] + a42 * k2[i] + a43 * k3[i]);
    stage(c4, tmp, k4);
    for (int i = 0; i < N; ++i)
      tmp[i] =
          y[i] + h * (a51 * f0[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    stage(c5, tmp, k5);
    for (int i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * f0[i] + a62 * k2[i] + a63 * k3[i] +
                           a64 * k4[i] + a65 * k5[i]);
    stage(1.0, tmp, k6);
    for (int i = 0; i < N; ++i)
      y_out[i] = y[i] + h * (b1 * f0[i] + b3 * k3[i] + b4 * k4[i] +
                             b5 * k5[i] + b6 * k6[i]);
    stage(1.0, y_out, k7);
    f_out = k7;
    err = 0.0;
    for (int i = 0; i < N; ++i) {
      const double e = h * (e1 * f0[i] + e3 * k3[i] + e4 * k4[i] +
                            e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(y_out[i]));
      err = std::max(err, std::abs(e) / sc);
    }
  }

  // Bisect the event root inside step s by re-integrating from s.t0 with
  // tight tolerance; accuracy is limited by rtol, not interpolation.
  void locate_event(const Event& event, const OdeStep<N>& s,
                    Result& res) const {
    auto value_at = [&](double t) -> std::array<double, N> {
      if (t <= s.t0) {
        return s.y0;
      }
      DormandPrince<N> sub(rhs_, rtol_, atol_);
      sub.set_max_step((t - s.t0));
      auto r = sub.integrate(s.t0, s.y0, t, nullptr);
      if (r.solution.steps.empty()) {
        return s.y0;
      }
      return r.solution.steps.back().y1;
    };
    double lo = s.t0;
    double hi = s.t1;
    double flo = event(s.t0, s.y0);
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi);
         ++iter) {
      const double mid = 0.5 * (lo + hi);
      const auto ym = value_at(mid);
      const double fm = event(mid, ym);
      if (flo > 0.0 && fm <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    res.event_hit = true;
    res.event_time = 0.5 * (lo + hi);
    res.event_state = value_at(res.event_time);
  }

  Rhs rhs_;
  double rtol_, atol_;
  double max_step_ = std::numeric_limits<double>::infinity();
  double init_step_ = 0.0;
};

}  // namespace rotstar::math
