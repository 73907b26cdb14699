#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/figures.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"

namespace utsp {

// A graph with unit edges, each sampled at the 2m-1 interior points j/(2m),
// j = 1..2m-1, together with the star figure owning every point.
struct StarSpace {
  MetricSpace space;                 // vertices first (same indices as the graph)
  Graph graph;
  int m = 1;
  std::vector<std::size_t> owner;    // owning vertex of every point
  // half_edges[v]: for every neighbor w, the points of v's half of edge vw
  // listed from v outward.
  std::vector<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> half_edges;
};

// The vertex space of the graph with its graph metric.
inline MetricSpace vertex_metric(const Graph& g) { return shortest_path_metric(g); }

// Builds the Star space of `g` with subdivision m and the star order Star(T)
// induced by the vertex order tv. Figures follow tv; within a figure the
// half-edges go by ascending neighbor rank, each from the vertex toward the
// edge midpoint, and the vertex comes last. The midpoint of AB belongs to the
// T-smaller of A, B.
inline std::pair<StarSpace, TotalOrder> star_order(const Graph& g, const TotalOrder& tv, int m) {
  if (m < 1) throw invalid_input("star subdivision m must be at least 1");
  if (tv.size() != g.vertex_count) throw invalid_input("vertex order does not match the graph");
  for (const auto& e : g.edges) {
    if (e.u == e.v) throw invalid_input("star graphs must not have loops");
    if (std::abs(e.weight - 1.0) > kTolerance) throw invalid_input("star graphs use unit edges");
  }
  StarSpace s;
  s.graph = g;
  s.m = m;
  auto disc = discretize_graph(g, 2.0 * m);
  s.space = std::move(disc.space);
  const std::size_t n = s.space.size();
  s.owner.assign(n, 0);
  s.half_edges.assign(g.vertex_count, {});
  for (std::size_t v = 0; v < g.vertex_count; ++v) s.owner[v] = v;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    const auto& pts = disc.edge_points[e];  // from u to v, 2m-1 points
    const std::size_t low = tv.less(ed.u, ed.v) ? ed.u : ed.v;
    std::vector<std::size_t> half_u, half_v;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const std::size_t pos = j + 1;  // position pos/(2m) along the edge from u
      const bool to_u = pos < std::size_t(m) || (pos == std::size_t(m) && low == ed.u);
      (to_u ? half_u : half_v).push_back(pts[j]);
    }
    std::reverse(half_v.begin(), half_v.end());
    for (auto p : half_u) s.owner[p] = ed.u;
    for (auto p : half_v) s.owner[p] = ed.v;
    s.half_edges[ed.u].emplace_back(ed.v, std::move(half_u));
    s.half_edges[ed.v].emplace_back(ed.u, std::move(half_v));
  }
  std::vector<std::size_t> seq;
  seq.reserve(n);
  for (std::size_t r = 0; r < tv.size(); ++r) {
    const std::size_t v = tv.at(r);
    auto& halves = s.half_edges[v];
    std::stable_sort(halves.begin(), halves.end(),
                     [&](const auto& a, const auto& b) { return tv.rank(a.first) < tv.rank(b.first); });
    for (const auto& [w, pts] : halves) seq.insert(seq.end(), pts.begin(), pts.end());
    seq.push_back(v);
  }
  return {std::move(s), TotalOrder::from_sequence(std::move(seq))};
}

// Points of the star figure of v.
inline std::vector<std::size_t> star_figure(const StarSpace& s, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < s.owner.size(); ++p)
    if (s.owner[p] == v) out.push_back(p);
  return out;
}

}  // namespace utsp
