#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"

namespace utsp {

// n points evenly spaced on a circle of length L, with the arc metric.
// Point i sits at arc position i*L/n; the identity is the clockwise order.
inline MetricSpace circle_space(std::size_t n, double length = 1.0) {
  if (n < 1) throw invalid_input("circle needs at least one point");
  if (!(length > 0.0)) throw invalid_input("circle length must be positive");
  std::vector<double> flat(n * n);
  const double step = length / double(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      flat[i * n + j] = double(std::min(gap, n - gap)) * step;
    }
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "c" + std::to_string(i);
  return MetricSpace::from_flat(std::move(labels), std::move(flat));
}

// Tripod with legs of length L, discretized with n points per leg spaced
// L/n apart. Point 0 is the center, points 1+l*n+j (j = 0..n-1) lie on leg l
// at distance (j+1)L/n from the center.
inline MetricSpace tripod_space(std::size_t n, double length = 1.0) {
  if (n < 1) throw invalid_input("tripod needs at least one point per leg");
  if (!(length > 0.0)) throw invalid_input("tripod leg length must be positive");
  const std::size_t total = 3 * n + 1;
  const double step = length / double(n);
  auto leg = [n](std::size_t p) { return p == 0 ? 3 : (p - 1) / n; };
  auto radius = [n, step](std::size_t p) { return p == 0 ? 0.0 : double((p - 1) % n + 1) * step; };
  std::vector<double> flat(total * total);
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      if (a == b) continue;
      const double ra = radius(a), rb = radius(b);
      flat[a * total + b] = (a != 0 && b != 0 && leg(a) == leg(b)) ? std::abs(ra - rb) : ra + rb;
    }
  std::vector<std::string> labels(total);
  labels[0] = "o";
  for (std::size_t p = 1; p < total; ++p)
    labels[p] = "leg" + std::to_string(leg(p)) + "_" + std::to_string((p - 1) % n + 1);
  return MetricSpace::from_flat(std::move(labels), std::move(flat));
}

// A graph with its edges subdivided into sample points.
struct DiscretizedGraph {
  MetricSpace space;
  std::size_t vertex_count = 0;  // points 0..vertex_count-1 are the vertices
  // For every edge, its interior sample points listed from edge.u to edge.v.
  std::vector<std::vector<std::size_t>> edge_points;
  double density = 0.0;  // sample points per unit length
};

// Subdivides every edge of length w into max(1, round(w*density)) equal
// segments and takes the shortest-path metric of the subdivided graph.
inline DiscretizedGraph discretize_graph(const Graph& g, double density) {
  if (!(density > 0.0)) throw invalid_input("discretization density must be positive");
  std::vector<std::string> labels = g.labels;
  if (labels.empty())
    for (std::size_t v = 0; v < g.vertex_count; ++v) labels.push_back(std::to_string(v));
  DiscretizedGraph out;
  out.vertex_count = g.vertex_count;
  out.density = density;
  std::vector<Edge> edges;
  std::size_t next = g.vertex_count;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (!(ed.weight > 0.0)) throw invalid_input("edge weights must be positive");
    const auto segments = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(ed.weight * density)));
    const double step = ed.weight / double(segments);
    std::vector<std::size_t> pts;
    std::size_t prev = ed.u;
    for (std::size_t j = 1; j < segments; ++j) {
      pts.push_back(next);
      labels.push_back(labels[ed.u] + "-" + labels[ed.v] + "@" + std::to_string(j) + "/" + std::to_string(segments));
      edges.push_back({prev, next, step});
      prev = next++;
    }
    edges.push_back({prev, ed.v, step});
    out.edge_points.push_back(std::move(pts));
  }
  out.space = shortest_path_metric(Graph(next, std::move(edges), std::move(labels)));
  return out;
}

// The domino: the 2x1 grid graph with vertices (x,y), x in 0..2, y in 0..1
// (index 3y+x) and seven edges of the given length.
inline Graph domino_graph(double edge_length = 1.0) {
  std::vector<std::string> labels;
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 3; ++x) labels.push_back("v" + std::to_string(x) + std::to_string(y));
  std::vector<Edge> e = {{0, 1, edge_length}, {1, 2, edge_length}, {3, 4, edge_length}, {4, 5, edge_length},
                         {0, 3, edge_length}, {1, 4, edge_length}, {2, 5, edge_length}};
  return Graph(6, std::move(e), std::move(labels));
}

inline DiscretizedGraph domino_space(double density = 20.0, double edge_length = 1.0) {
  return discretize_graph(domino_graph(edge_length), density);
}

}  // namespace utsp
