// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cmath>
#include <vector>

/// \file
/// Chebyshev-spaced sample points for latitude (zeta = cos of polar angle)
/// sweeps along the star surface.

namespace rotstar::math {

/// Chebyshev-Lobatto points mapped to [0,1]: zeta_j = (1 - cos(pi j/(M-1)))/2,
/// j = 0..M-1. Endpoints are exactly 0 and 1; nodes cluster at both ends,
/// which resolves the surface curve best near equator and pole.
inline std::vector<double> chebyshev_points_01(int m) {
  std::vector<double> pts(m);
  for (int j = 0; j < m; ++j) {
    pts[j] = 0.5 * (1.0 - std::cos(M_PI * j / (m - 1)));
  }
  pts.front() = 0.0;
  pts.back() = 1.0;
  return pts;
}

/// Mirrors points from [0,1] to the full interval [-1,1]; the negative copies
/// come first in increasing order and zero is not duplicated.
inline std::vector<double> mirror_to_symmetric(const std::vector<double>& pos) {
  std::vector<double> all;
  all.reserve(2 * pos.size());
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
    if (*it > 0.0) {
      all.push_back(-*it);
    }
  }
  all.insert(all.end(), pos.begin(), pos.end());
  return all;
}

}  // namespace rotstar::math
