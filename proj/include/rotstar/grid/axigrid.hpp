// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "rotstar/errors.hpp"
#include "rotstar/math/quadrature.hpp"

/// \file
/// Uniform quadrant grid on [0, xi0]^2 in dimensionless cylindrical
/// coordinates (varpi, z), axisymmetric scalar fields with stored parities,
/// parity-aware second-order finite differences, the axisymmetric
/// n-dimensional Laplacian, discrete Hoelder-norm estimators, and the
/// two-leg path quadrature reconstructing a function from its gradient.
/// The quadrant represents the full plane through the parities: every
/// physical field here is either even or odd under varpi -> -varpi and
/// under z -> -z (equatorial symmetry).

namespace rotstar::grid {

enum class Parity : int { even = +1, odd = -1 };

inline Parity flip(Parity p) {
  return p == Parity::even ? Parity::odd : Parity::even;
}

/// Uniform grid on [0, xi0] x [0, xi0]; index i runs along varpi, j along z.
struct AxiGrid {
  double xi0 = 0.0;
  int n_cells = 0;  ///< nodes per axis (odd, >= 33)
  double h = 0.0;

  AxiGrid() = default;
  AxiGrid(double xi0_in, int n_cells_in) : xi0(xi0_in), n_cells(n_cells_in) {
    if (!(xi0 > 0.0)) {
      throw ValidationError("AxiGrid: xi0 must be > 0");
    }
    if (n_cells < 33 || n_cells % 2 == 0) {
      throw ValidationError(
          "AxiGrid: n_cells must be odd and >= 33, got " +
          std::to_string(n_cells));
    }
    h = xi0 / (n_cells - 1);
  }

  double varpi(int i) const { return i * h; }
  double z(int j) const { return j * h; }
  double r(int i, int j) const { return std::hypot(varpi(i), z(j)); }

  bool operator==(const AxiGrid& o) const {
    return xi0 == o.xi0 && n_cells == o.n_cells;
  }
  bool operator!=(const AxiGrid& o) const { return !(*this == o); }
};

/// Scalar field over an AxiGrid with stored parities. The grid is held by
/// value (it is three scalars), so fields are freely copyable and movable.
struct ScalarField {
  AxiGrid grid;
  Eigen::ArrayXXd v;  ///< v(i, j) with i along varpi, j along z
  Parity par_axis = Parity::even;     ///< behavior under varpi -> -varpi
  Parity par_equator = Parity::even;  ///< behavior under z -> -z

  ScalarField() = default;
  ScalarField(const AxiGrid& g, Parity pa = Parity::even,
              Parity pe = Parity::even)
      : grid(g),
        v(Eigen::ArrayXXd::Zero(g.n_cells, g.n_cells)),
        par_axis(pa),
        par_equator(pe) {}

  int n() const { return grid.n_cells; }

  /// Ghost-aware value: indices may be -1 (reflected by parity) and are
  /// valid through n_cells-1.
  double at(int i, int j) const {
    double sign = 1.0;
    if (i < 0) {
      i = -i;
      sign *= static_cast<double>(par_axis);
    }
    if (j < 0) {
      j = -j;
      sign *= static_cast<double>(par_equator);
    }
    return sign * v(i, j);
  }

  double max_abs() const { return v.abs().maxCoeff(); }
};

/// Builds a field by evaluating f(varpi, z) at every node.
template <typename F>
ScalarField make_field(const AxiGrid& g, F&& f, Parity pa = Parity::even,
                       Parity pe = Parity::even) {
  ScalarField out(g, pa, pe);
  for (int j = 0; j < g.n_cells; ++j) {
    for (int i = 0; i < g.n_cells; ++i) {
      out.v(i, j) = f(g.varpi(i), g.z(j));
    }
  }
  return out;
}

inline void require_same_grid(const ScalarField& a, const ScalarField& b,
                              const char* where) {
  if (a.grid != b.grid) {
    throw ValidationError(std::string(where) + ": fields on different grids");
  }
}

enum class Deriv { d_varpi, d_z, d_varpi_varpi, d_zz, d_varpi_z };

namespace detail {

/// One-dimensional second-order first derivative along direction dir
/// (0 = varpi, 1 = z), with parity ghosts at the inner edge and one-sided
/// stencils at the outer edge.
inline ScalarField diff1(const ScalarField& f, int dir) {
  const int n = f.n();
  const double h = f.grid.h;
  ScalarField out(f.grid,
                  dir == 0 ? flip(f.par_axis) : f.par_axis,
                  dir == 1 ? flip(f.par_equator) : f.par_equator);
  auto val = [&](int i, int j) { return f.at(i, j); };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int k = dir == 0 ? i : j;
      double d;
      if (k == n - 1) {  // one-sided second order
        auto u = [&](int m) {
          return dir == 0 ? val(i - m, j) : val(i, j - m);
        };
        d = (3.0 * u(0) - 4.0 * u(1) + u(2)) / (2.0 * h);
      } else {
        auto u = [&](int m) {
          return dir == 0 ? val(i + m, j) : val(i, j + m);
        };
        d = (u(1) - u(-1)) / (2.0 * h);
      }
      out.v(i, j) = d;
    }
  }
  return out;
}

/// Second derivative along dir, same stencil policy.
inline ScalarField diff2(const ScalarField& f, int dir) {
  const int n = f.n();
  const double h2 = f.grid.h * f.grid.h;
  ScalarField out(f.grid, f.par_axis, f.par_equator);
  auto val = [&](int i, int j) { return f.at(i, j); };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int k = dir == 0 ? i : j;
      double d;
      if (k == n - 1) {  // one-sided second order
        auto u = [&](int m) {
          return dir == 0 ? val(i - m, j) : val(i, j - m);
        };
        d = (2.0 * u(0) - 5.0 * u(1) + 4.0 * u(2) - u(3)) / h2;
      } else {
        auto u = [&](int m) {
          return dir == 0 ? val(i + m, j) : val(i, j + m);
        };
        d = (u(1) - 2.0 * u(0) + u(-1)) / h2;
      }
      out.v(i, j) = d;
    }
  }
  return out;
}

}  // namespace detail

/// Parity-aware second-order finite differences. Mixed derivative is the
/// composition d_z(d_varpi f). Output parities follow the differentiation
/// rules (each derivative flips the parity in its own direction).
inline ScalarField derive(const ScalarField& f, Deriv which) {
  switch (which) {
    case Deriv::d_varpi:
      return detail::diff1(f, 0);
    case Deriv::d_z:
      return detail::diff1(f, 1);
    case Deriv::d_varpi_varpi:
      return detail::diff2(f, 0);
    case Deriv::d_zz:
      return detail::diff2(f, 1);
    case Deriv::d_varpi_z:
      return detail::diff1(detail::diff1(f, 0), 1);
  }
  throw ValidationError("derive: unknown derivative tag");
}

/// The axisymmetric Laplacian of an n-dimensional radial problem:
/// d^2/dvarpi^2 + ((n-2)/varpi) d/dvarpi + d^2/dz^2, with the singular term
/// replaced by its regular limit (n-2) d^2/dvarpi^2 on the axis.
inline ScalarField axi_laplacian(const ScalarField& f, int n_dim) {
  if (n_dim < 3 || n_dim > 5) {
    throw ValidationError("axi_laplacian: n_dim must be 3, 4, or 5");
  }
  if (f.par_axis != Parity::even) {
    throw ValidationError("axi_laplacian: field must be even in varpi");
  }
  const ScalarField fv = detail::diff1(f, 0);
  const ScalarField fvv = detail::diff2(f, 0);
  const ScalarField fzz = detail::diff2(f, 1);
  ScalarField out(f.grid, Parity::even, f.par_equator);
  const int n = f.n();
  for (int j = 0; j < n; ++j) {
    out.v(0, j) = (n_dim - 1) * fvv.v(0, j) + fzz.v(0, j);
    for (int i = 1; i < n; ++i) {
      out.v(i, j) = fvv.v(i, j) +
                    (n_dim - 2) / f.grid.varpi(i) * fv.v(i, j) +
                    fzz.v(i, j);
    }
  }
  return out;
}

/// Discrete Hoelder seminorm estimator: max over node pairs separated by
/// h 2^m (m = 0, 1, ... while the separation is <= xi0/4) along the two
/// axis-aligned and the two diagonal directions of |df| / dist^alpha.
inline double holder_seminorm(const ScalarField& f, double alpha) {
  const int n = f.n();
  const double h = f.grid.h;
  double worst = 0.0;
  for (int k = 1; k * h <= f.grid.xi0 / 4.0 + 1e-12; k *= 2) {
    const double inv_ax = std::pow(k * h, -alpha);
    const double inv_di = std::pow(k * h * std::sqrt(2.0), -alpha);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (i + k < n) {
          worst = std::max(worst,
                           std::abs(f.v(i + k, j) - f.v(i, j)) * inv_ax);
        }
        if (j + k < n) {
          worst = std::max(worst,
                           std::abs(f.v(i, j + k) - f.v(i, j)) * inv_ax);
        }
        if (i + k < n && j + k < n) {
          worst = std::max(
              worst, std::abs(f.v(i + k, j + k) - f.v(i, j)) * inv_di);
        }
        if (i + k < n && j - k >= 0) {
          worst = std::max(
              worst, std::abs(f.v(i + k, j - k) - f.v(i, j)) * inv_di);
        }
      }
    }
  }
  return worst;
}

/// Discrete C^l (+ order-l Hoelder seminorm) norm estimate: the sum over
/// orders k <= l of the largest sup among the order-k derivatives, plus the
/// largest order-l seminorm. Diagnostic only.
inline double holder_norm(const ScalarField& f, int l, double alpha) {
  if (l < 0 || l > 2) {
    throw ValidationError("holder_norm: l must be 0, 1, or 2");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("holder_norm: alpha must lie in (0,1)");
  }
  std::vector<std::vector<ScalarField>> orders;
  orders.push_back({f});
  if (l >= 1) {
    orders.push_back({derive(f, Deriv::d_varpi), derive(f, Deriv::d_z)});
  }
  if (l >= 2) {
    orders.push_back({derive(f, Deriv::d_varpi_varpi),
                      derive(f, Deriv::d_varpi_z), derive(f, Deriv::d_zz)});
  }
  double norm = 0.0;
  for (const auto& fields : orders) {
    double sup = 0.0;
    for (const auto& g : fields) {
      sup = std::max(sup, g.max_abs());
    }
    norm += sup;
  }
  double semi = 0.0;
  for (const auto& g : orders.back()) {
    semi = std::max(semi, holder_seminorm(g, alpha));
  }
  return norm + semi;
}

/// Reconstructs F from gradient components by the two-leg path quadrature
///   F(varpi, z) = int_0^z g3(0, z') dz' + int_0^varpi g1(varpi', z) dvarpi'
/// (z-leg along the axis first, then the varpi-leg at constant z), using
/// cumulative composite Simpson along grid lines. F(0,0) = 0 exactly.
inline ScalarField quadrature_from_gradient(const ScalarField& g1,
                                            const ScalarField& g3) {
  require_same_grid(g1, g3, "quadrature_from_gradient");
  const int n = g1.n();
  const double h = g1.grid.h;
  ScalarField out(g1.grid, flip(g1.par_axis), flip(g3.par_equator));
  // Axis leg: cumulative integral of g3 along varpi = 0.
  std::vector<double> axis_vals(n);
  for (int j = 0; j < n; ++j) {
    axis_vals[j] = g3.v(0, j);
  }
  const std::vector<double> axis_cum = math::simpson_cumulative(axis_vals, h);
  // Row legs: cumulative integral of g1 at constant z.
  std::vector<double> row(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      row[i] = g1.v(i, j);
    }
    const std::vector<double> row_cum = math::simpson_cumulative(row, h);
    for (int i = 0; i < n; ++i) {
      out.v(i, j) = axis_cum[j] + row_cum[i];
    }
  }
  return out;
}

/// Same reconstruction along the other canonical path (varpi-leg along the
/// equator first, then the z-leg at constant varpi). For curl-free input
/// the two agree to discretization accuracy; the difference measures the
/// circulation (path-independence defect).
inline ScalarField quadrature_from_gradient_alt(const ScalarField& g1,
                                                const ScalarField& g3) {
  require_same_grid(g1, g3, "quadrature_from_gradient_alt");
  const int n = g1.n();
  const double h = g1.grid.h;
  ScalarField out(g1.grid, flip(g1.par_axis), flip(g3.par_equator));
  std::vector<double> eq_vals(n);
  for (int i = 0; i < n; ++i) {
    eq_vals[i] = g1.v(i, 0);
  }
  const std::vector<double> eq_cum = math::simpson_cumulative(eq_vals, h);
  std::vector<double> col(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      col[j] = g3.v(i, j);
    }
    const std::vector<double> col_cum = math::simpson_cumulative(col, h);
    for (int j = 0; j < n; ++j) {
      out.v(i, j) = eq_cum[i] + col_cum[j];
    }
  }
  return out;
}

/// Tensor-product cubic Lagrange interpolation at an arbitrary point of the
/// closed quadrant (4x4 node neighborhood, clamped at the edges). Fourth
/// order for smooth data.
inline double interpolate(const ScalarField& f, double varpi, double z) {
  const int n = f.n();
  const double h = f.grid.h;
  auto stencil_start = [&](double x) {
    int i0 = static_cast<int>(std::floor(x / h)) - 1;
    return std::max(0, std::min(i0, n - 4));
  };
  const int i0 = stencil_start(varpi);
  const int j0 = stencil_start(z);
  double wx[4], wz[4];
  auto weights = [&](double x, int k0, double* w) {
    const double t = x / h - k0;  // in node units relative to stencil start
    for (int a = 0; a < 4; ++a) {
      double num = 1.0;
      double den = 1.0;
      for (int b = 0; b < 4; ++b) {
        if (a == b) {
          continue;
        }
        num *= t - b;
        den *= a - b;
      }
      w[a] = num / den;
    }
  };
  weights(varpi, i0, wx);
  weights(z, j0, wz);
  double sum = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      sum += wx[a] * wz[b] * f.v(i0 + a, j0 + b);
    }
  }
  return sum;
}

/// Restriction of a field to a coarser grid whose nodes are a subset of the
/// fine nodes (same xi0, (n_fine - 1) divisible by (n_coarse - 1)).
inline ScalarField restrict_to(const ScalarField& fine,
                               const AxiGrid& coarse) {
  if (coarse.xi0 != fine.grid.xi0 ||
      (fine.n() - 1) % (coarse.n_cells - 1) != 0) {
    throw ValidationError("restrict_to: incompatible grids");
  }
  const int stride = (fine.n() - 1) / (coarse.n_cells - 1);
  ScalarField out(coarse, fine.par_axis, fine.par_equator);
  for (int j = 0; j < coarse.n_cells; ++j) {
    for (int i = 0; i < coarse.n_cells; ++i) {
      out.v(i, j) = fine.v(i * stride, j * stride);
    }
  }
  return out;
}

}  // namespace rotstar::grid
