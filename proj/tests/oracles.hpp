#pragma once

// Independent brute-force references used to cross-check the library.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"

namespace oracle {

inline double seq_length(const utsp::MetricSpace& m, const std::vector<std::size_t>& s, bool closed) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) len += m(s[i], s[i + 1]);
  if (closed && s.size() > 1) len += m(s.back(), s.front());
  return len;
}

// Minimum over all permutations of the points.
inline double opt_length(const utsp::MetricSpace& m, std::vector<std::size_t> pts, bool closed) {
  std::sort(pts.begin(), pts.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, seq_length(m, pts, closed));
  } while (std::next_permutation(pts.begin(), pts.end()));
  return best;
}

// OR_{M,T}(k) by enumerating every subset of size 2..k+1 and its permutations.
inline double order_ratio(const utsp::MetricSpace& m, const utsp::TotalOrder& t, int k, bool closed = false) {
  const std::size_t n = m.size();
  double best = 1.0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> pts;
    for (std::size_t p = 0; p < n; ++p)
      if (mask >> p & 1) pts.push_back(p);
    if (pts.size() < 2 || pts.size() > std::size_t(k) + 1) continue;
    auto sorted = t.sort(pts);
    best = std::max(best, seq_length(m, sorted, closed) / opt_length(m, pts, closed));
  }
  return best;
}

// Largest elongation over all T-increasing s-point sequences; infinity
// when some sequence has zero width.
inline double max_elongation(const utsp::MetricSpace& m, const utsp::TotalOrder& t, std::size_t s) {
  const std::size_t n = m.size();
  std::vector<std::size_t> idx(s);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  double best = 0.0;
  while (true) {
    double diam = 0.0, width = 0.0;
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = a + 1; b < s; ++b) {
        const double d = m(t.at(idx[a]), t.at(idx[b]));
        diam = std::max(diam, d);
        if ((b - a) % 2 == 0) width = std::max(width, d);
      }
    best = std::max(best, width > 0 ? diam / width : std::numeric_limits<double>::infinity());
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

// Hyperbolic distance in the half-space model, arccosh form.
inline double half_space_distance(const std::vector<double>& x, const std::vector<double>& y) {
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sq += (x[i] - y[i]) * (x[i] - y[i]);
  return std::acosh(1.0 + sq / (2.0 * x[0] * y[0]));
}

inline utsp::MetricSpace six_point_space() {
  return utsp::MetricSpace({"1", "2", "3", "4", "5", "6"}, {{0, 1, 1.5, 1.7, 1.5, 2},
                                                            {1, 0, 1.8, 1.6, 1.5, 1.6},
                                                            {1.5, 1.8, 0, 1, 1.7, 2},
                                                            {1.7, 1.6, 1, 0, 1.3, 1.6},
                                                            {1.5, 1.5, 1.7, 1.3, 0, 1.7},
                                                            {2, 1.6, 2, 1.6, 1.7, 0}});
}

}  // namespace oracle
