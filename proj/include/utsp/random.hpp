#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"

namespace utsp {

// Random space of n points in the unit cube with the Euclidean metric.
template <typename Rng>
MetricSpace random_euclidean_space(std::size_t n, Rng& rng, std::size_t dim = 2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& x : p) x = u(rng);
  std::vector<double> flat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim; ++i) s += (pts[a][i] - pts[b][i]) * (pts[a][i] - pts[b][i]);
      flat[a * n + b] = std::sqrt(s);
    }
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return MetricSpace::from_flat(std::move(labels), std::move(flat));
}

template <typename Rng>
TotalOrder random_order(std::size_t n, Rng& rng) {
  std::vector<std::size_t> seq(n);
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  std::shuffle(seq.begin(), seq.end(), rng);
  return TotalOrder::from_sequence(std::move(seq));
}

// Random connected simple graph with unit edges: a random spanning tree
// plus up to `extra` further distinct edges.
template <typename Rng>
Graph random_connected_graph(std::size_t n, std::size_t extra, Rng& rng) {
  if (n < 1) throw invalid_input("graph needs at least one vertex");
  std::vector<Edge> edges;
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t a = perm[std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)], b = perm[i];
    edges.push_back({a, b, 1.0});
    used[a][b] = used[b][a] = 1;
  }
  const std::size_t room = n * (n - 1) / 2 - (n - 1);
  extra = std::min(extra, room);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (extra > 0) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b || used[a][b]) continue;
    used[a][b] = used[b][a] = 1;
    edges.push_back({std::min(a, b), std::max(a, b), 1.0});
    --extra;
  }
  return Graph(n, std::move(edges));
}

}  // namespace utsp
