#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"

namespace utsp {

// Greedy maximal eps-separated subset: points are scanned in index order
// and kept when at distance >= eps from every kept point. The result is an
// (eps, eps)-net.
inline std::vector<std::size_t> greedy_separated_net(const MetricSpace& m, double eps) {
  if (!(eps > 0.0)) throw invalid_input("net radius must be positive");
  std::vector<std::size_t> net;
  for (std::size_t p = 0; p < m.size(); ++p) {
    bool far = true;
    for (auto q : net)
      if (m(p, q) < eps) {
        far = false;
        break;
      }
    if (far) net.push_back(p);
  }
  return net;
}

// Map sending each point to the index (within `net`) of its nearest net
// point, ties to the lower index.
inline std::vector<std::size_t> nearest_point_map(const MetricSpace& m, std::span<const std::size_t> net) {
  if (net.empty()) throw invalid_input("net must be nonempty");
  std::vector<std::size_t> phi(m.size());
  for (std::size_t p = 0; p < m.size(); ++p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < net.size(); ++i)
      if (m(p, net[i]) < m(p, net[best])) best = i;
    phi[p] = best;
  }
  return phi;
}

struct QuasiIsometryConstants {
  double c = 1.0;      // (1/C) rho_M <= rho_N <= C rho_M off fibers, rho_N <= C on fibers
  double delta = 0.0;  // smallest distance between distinct points of N or M
  double k() const { return c * c + c / delta; }
};

// Measures the constants of phi: N -> M used by the pullback bound
// OR_N(k) <= (C^2 + C/delta) OR_M(k).
inline QuasiIsometryConstants measure_quasi_isometry(const MetricSpace& n, const MetricSpace& m,
                                                     std::span<const std::size_t> phi) {
  if (phi.size() != n.size()) throw invalid_input("phi must be defined on every point of N");
  for (auto y : phi)
    if (y >= m.size()) throw invalid_input("phi maps outside M");
  QuasiIsometryConstants q;
  for (std::size_t a = 0; a < n.size(); ++a)
    for (std::size_t b = a + 1; b < n.size(); ++b) {
      const double dn = n(a, b);
      if (phi[a] == phi[b]) {
        q.c = std::max(q.c, dn);
      } else {
        const double dm = m(phi[a], phi[b]);
        q.c = std::max({q.c, dn / dm, dm / dn});
      }
    }
  double sep = std::numeric_limits<double>::infinity();
  if (n.size() > 1) sep = std::min(sep, n.separation());
  if (m.size() > 1) sep = std::min(sep, m.separation());
  if (!std::isfinite(sep)) sep = 1.0;
  q.delta = sep;
  return q;
}

}  // namespace utsp
