#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"

namespace utsp {

struct GluedCopies {
  MetricSpace space;
  TotalOrder order;
  // copy_of[g], point_of[g]: which copy (0-based, Omega points report 0) and
  // which point of the original space the glued point g is.
  std::vector<std::size_t> copy_of, point_of;
};

// s copies of (M, T) glued over Omega. The order puts all of the first copy
// first, then the non-Omega points of the later copies copy by copy; within a
// copy points compare by T.
inline GluedCopies glue_copies(const MetricSpace& m, const TotalOrder& t, std::vector<std::size_t> omega,
                               std::size_t s) {
  check_order(m, t);
  if (s < 1) throw invalid_input("need at least one copy");
  std::sort(omega.begin(), omega.end());
  omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
  if (omega.empty() && s > 1) throw invalid_input("empty gluing set gives a disconnected space");
  for (auto w : omega)
    if (w >= m.size()) throw invalid_input("gluing set point out of range");
  std::vector<char> in_omega(m.size(), 0);
  for (auto w : omega) in_omega[w] = 1;

  GluedCopies out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    out.copy_of.push_back(0);
    out.point_of.push_back(t.at(r));
  }
  for (std::size_t c = 1; c < s; ++c)
    for (std::size_t r = 0; r < m.size(); ++r)
      if (!in_omega[t.at(r)]) {
        out.copy_of.push_back(c);
        out.point_of.push_back(t.at(r));
      }
  const std::size_t n = out.copy_of.size();
  std::vector<double> flat(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t pa = out.point_of[a];
    labels[a] = out.copy_of[a] == 0 ? m.label(pa) : m.label(pa) + "#" + std::to_string(out.copy_of[a] + 1);
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t pb = out.point_of[b];
      // Omega points belong to every copy.
      const bool same = out.copy_of[a] == out.copy_of[b] || in_omega[pa] || in_omega[pb];
      if (same) {
        flat[a * n + b] = m(pa, pb);
      } else {
        double best = std::numeric_limits<double>::infinity();
        for (auto w : omega) best = std::min(best, m(pa, w) + m(w, pb));
        flat[a * n + b] = best;
      }
    }
  }
  out.space = MetricSpace::from_flat(std::move(labels), std::move(flat));
  out.order = TotalOrder::identity(n);  // glued points were listed in order
  return out;
}

}  // namespace utsp
