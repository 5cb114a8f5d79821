// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

/// \file
/// One-dimensional quadrature building blocks: cached Gauss-Legendre rules
/// with node-doubling to a tolerance, globally adaptive bisection, and
/// composite Simpson rules (plain and cumulative) on uniform grids.

namespace rotstar::math {

/// Nodes and weights of an N-point Gauss-Legendre rule on [-1,1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computes (and caches) the N-point Gauss-Legendre rule on [-1,1] by
/// Newton iteration on the Legendre polynomial.
inline const GaussLegendreRule& gauss_legendre(int n) {
  static std::map<int, GaussLegendreRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) {
    return it->second;
  }
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: n must be >= 1");
  }
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess for the i-th root.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n(x) and P_n'(x) by upward recurrence.
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // One more polishing pass after convergence.
        double q0 = 1.0;
        double q1 = x;
        for (int k = 2; k <= n; ++k) {
          const double q2 = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        pp = n * (x * q1 - q0) / (x * x - 1.0);
        x -= q1 / pp;
        break;
      }
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  auto [pos, inserted] = cache.emplace(n, std::move(rule));
  return pos->second;
}

/// Integrates f over [a,b] with an n-point Gauss-Legendre rule.
template <typename F>
double gl_integrate(F&& f, double a, double b, int n) {
  const auto& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

/// Result of a doubling quadrature run.
struct DoublingResult {
  double value = 0.0;
  double last_change = 0.0;  ///< |I_{2n} - I_n| at the accepted level
  int points = 0;            ///< points of the accepted rule
  bool converged = false;
};

/// Integrates f over [a,b], doubling the Gauss-Legendre point count from
/// n0 until successive values agree to abs_tol (or max_points is hit).
template <typename F>
DoublingResult gl_integrate_doubling(F&& f, double a, double b,
                                     double abs_tol, int n0 = 64,
                                     int max_points = 4096) {
  DoublingResult out;
  double prev = gl_integrate(f, a, b, n0);
  for (int n = 2 * n0; n <= max_points; n *= 2) {
    const double cur = gl_integrate(f, a, b, n);
    out.last_change = std::abs(cur - prev);
    out.value = cur;
    out.points = n;
    if (out.last_change < abs_tol) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;
}

/// Globally adaptive Gauss-Legendre quadrature: bisects the worst interval
/// (by local 15- vs 31-point disagreement) until the summed error estimate
/// is below abs_tol.
template <typename F>
double gl_integrate_adaptive(F&& f, double a, double b, double abs_tol,
                             int max_intervals = 4000) {
  struct Segment {
    double a, b, value, error;
  };
  auto eval = [&](double lo, double hi) {
    const double v15 = gl_integrate(f, lo, hi, 15);
    const double v31 = gl_integrate(f, lo, hi, 31);
    return Segment{lo, hi, v31, std::abs(v31 - v15)};
  };
  std::vector<Segment> segs{eval(a, b)};
  for (int iter = 0; iter < max_intervals; ++iter) {
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total_err += segs[i].error;
      if (segs[i].error > segs[worst].error) {
        worst = i;
      }
    }
    if (total_err < abs_tol) {
      break;
    }
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    segs[worst] = eval(s.a, mid);
    segs.push_back(eval(mid, s.b));
  }
  double sum = 0.0;
  for (const auto& s : segs) {
    sum += s.value;
  }
  return sum;
}

/// Composite-Simpson weights for n uniformly spaced nodes (n odd), spacing h:
/// (h/3) * {1, 4, 2, 4, ..., 2, 4, 1}.
inline std::vector<double> simpson_weights(int n, double h) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("simpson_weights: need odd n >= 3");
  }
  std::vector<double> w(n, 0.0);
  for (int i = 0; i + 2 < n; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  return w;
}

/// Cumulative integral of uniformly sampled values f_0..f_{n-1} (spacing h)
/// starting at 0: even nodes by composite Simpson,
///   I_{j+2} = I_j + (h/3)(f_j + 4 f_{j+1} + f_{j+2});
/// odd nodes by the third-order half-panel rule
///   I_{j+1} = I_j + (h/12)(5 f_j + 8 f_{j+1} - f_{j+2}).
/// The final node of an even-count tail uses the mirrored half-panel rule.
inline std::vector<double> simpson_cumulative(const std::vector<double>& f,
                                              double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) {
    return out;
  }
  if (n == 2) {  // trapezoid is all we can do
    out[1] = 0.5 * h * (f[0] + f[1]);
    return out;
  }
  for (std::size_t j = 0; j + 2 < n; j += 2) {
    out[j + 1] = out[j] + h / 12.0 * (5.0 * f[j] + 8.0 * f[j + 1] - f[j + 2]);
    out[j + 2] = out[j] + h / 3.0 * (f[j] + 4.0 * f[j + 1] + f[j + 2]);
  }
  if (n % 2 == 0) {  // last node: mirrored half-panel ending rule
    const std::size_t j = n - 3;
    out[n - 1] =
        out[n - 2] + h / 12.0 * (-f[j] + 8.0 * f[j + 1] + 5.0 * f[j + 2]);
  }
  return out;
}

}  // namespace rotstar::math
