#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"

namespace utsp {

// Tile of the binary tiling of the upper half-space: level k covers heights
// [2^k, 2^{k+1}] and horizontal box prod [2^k a_i, 2^k (a_i + 1)].
struct Tile {
  int k = 0;
  std::vector<std::int64_t> a;

  std::size_t dim() const noexcept { return a.size(); }
  friend auto operator<=>(const Tile&, const Tile&) = default;
  friend bool operator==(const Tile&, const Tile&) = default;
};

inline std::string to_string(const Tile& t) {
  std::string s = "(" + std::to_string(t.k);
  for (auto x : t.a) s += "," + std::to_string(x);
  return s + ")";
}

// Coordinates first, level second; used to order forest roots.
inline bool coordinate_less(const Tile& x, const Tile& y) {
  if (x.a != y.a) return x.a < y.a;
  return x.k < y.k;
}

inline Tile tile_up(const Tile& t) {
  Tile u{t.k + 1, t.a};
  for (auto& x : u.a) x >>= 1;  // arithmetic shift is floor division by 2
  return u;
}

// Child 2a + e, with bit i of `e` selecting e_i.
inline Tile tile_down(const Tile& t, std::uint32_t e) {
  Tile c{t.k - 1, t.a};
  for (std::size_t i = 0; i < c.a.size(); ++i) c.a[i] = 2 * c.a[i] + ((e >> i) & 1u);
  return c;
}

// Sideways neighbors (2d), the parent and the 2^d children.
inline std::vector<Tile> tile_neighbors(const Tile& t) {
  const std::size_t d = t.dim();
  if (d == 0 || d > 16) throw invalid_input("tile dimension must be in 1..16");
  std::vector<Tile> out;
  out.reserve(2 * d + 1 + (std::size_t{1} << d));
  for (std::size_t i = 0; i < d; ++i)
    for (int s : {-1, 1}) {
      Tile n = t;
      n.a[i] += s;
      out.push_back(std::move(n));
    }
  out.push_back(tile_up(t));
  for (std::uint32_t e = 0; e < (1u << d); ++e) out.push_back(tile_down(t, e));
  return out;
}

// Center (x_0, x_1..x_d) of a tile in the half-space model.
inline std::vector<double> tile_center(const Tile& t) {
  const double scale = std::ldexp(1.0, t.k);
  std::vector<double> x{1.5 * scale};
  for (auto ai : t.a) x.push_back(scale * (double(ai) + 0.5));
  return x;
}

// Hyperbolic distance between tile centers:
// 2 ln((|x - x'| + sqrt((x0 + x0')^2 + sum_i (x_i - x'_i)^2)) / (2 sqrt(x0 x0'))).
inline double tile_center_distance(const Tile& t1, const Tile& t2) {
  if (t1.dim() != t2.dim()) throw invalid_input("tiles of different dimension");
  const auto x = tile_center(t1), y = tile_center(t2);
  double horiz = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) horiz += (x[i] - y[i]) * (x[i] - y[i]);
  const double direct = std::sqrt(horiz + (x[0] - y[0]) * (x[0] - y[0]));
  const double mirror = std::sqrt(horiz + (x[0] + y[0]) * (x[0] + y[0]));
  return 2.0 * std::log((direct + mirror) / (2.0 * std::sqrt(x[0] * y[0])));
}

// t lies in the branch of root: at or below its level with the horizontal
// box nested in the root's box.
inline bool in_branch(const Tile& t, const Tile& root) {
  if (t.dim() != root.dim()) throw invalid_input("tiles of different dimension");
  if (t.k > root.k) return false;
  const int shift = root.k - t.k;
  if (shift >= 63) {
    for (std::size_t i = 0; i < t.dim(); ++i)
      if ((t.a[i] < 0 ? -1 : 0) != root.a[i]) return false;
    return true;
  }
  for (std::size_t i = 0; i < t.dim(); ++i)
    if ((t.a[i] >> shift) != root.a[i]) return false;
  return true;
}

// The vertical forest has one tree per sign pattern of the coordinates.
inline std::vector<bool> forest_component(const Tile& t) {
  std::vector<bool> s;
  for (auto x : t.a) s.push_back(x < 0);
  return s;
}

struct UpDownPath {
  std::vector<Tile> tiles;
  std::size_t up_count = 0, horizontal_count = 0, down_count = 0;

  std::size_t length() const noexcept { return tiles.empty() ? 0 : tiles.size() - 1; }
};

namespace detail {

inline bool tiles_close(const Tile& x, const Tile& y) {
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (std::abs(x.a[i] - y.a[i]) > 1) return false;
  return true;
}

}  // namespace detail

// Standard up-and-down path: the lower endpoint climbs to the other's level,
// both climb until they are close (coordinate differences at most 1), then
// horizontal steps in ascending coordinate index, then descent. Ancestors of
// negative coordinates stay at -1, so the climb always ends.
inline UpDownPath standard_up_down_path(const Tile& from, const Tile& to) {
  if (from.dim() != to.dim()) throw invalid_input("tiles of different dimension");
  std::vector<Tile> up{from}, down{to};
  while (up.back().k < down.back().k) up.push_back(tile_up(up.back()));
  while (down.back().k < up.back().k) down.push_back(tile_up(down.back()));
  while (!detail::tiles_close(up.back(), down.back())) {
    up.push_back(tile_up(up.back()));
    down.push_back(tile_up(down.back()));
  }
  UpDownPath p;
  p.up_count = up.size() - 1;
  p.down_count = down.size() - 1;
  p.tiles = std::move(up);
  Tile cur = p.tiles.back();
  const Tile& target = down.back();
  for (std::size_t i = 0; i < cur.dim(); ++i)
    if (cur.a[i] != target.a[i]) {
      cur.a[i] = target.a[i];
      p.tiles.push_back(cur);
      ++p.horizontal_count;
    }
  for (std::size_t j = down.size() - 1; j-- > 0;) p.tiles.push_back(down[j]);
  return p;
}

// A finite piece of the tiling graph.
struct TilingWindow {
  std::size_t d = 1;
  int level_lo = 0, level_hi = 0;
  std::vector<Tile> tiles;  // sorted by (level, coordinates)
  std::map<Tile, std::size_t> index;
  std::vector<std::vector<std::size_t>> adjacency;
  MetricSpace metric;  // graph metric of the window, empty unless requested

  std::size_t size() const noexcept { return tiles.size(); }
  std::optional<std::size_t> find(const Tile& t) const {
    auto it = index.find(t);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Tile& t) const { return index.count(t) > 0; }
};

// All tiles of the box [lo_i, hi_i] at level level_lo and their ancestors up
// to level_hi; adjacency restricted to the window, hop-count metric.
inline TilingWindow build_window(std::size_t d, int level_lo, int level_hi,
                                 const std::vector<std::pair<std::int64_t, std::int64_t>>& base_ranges,
                                 bool with_metric = true) {
  if (d == 0 || d > 16) throw invalid_input("tiling dimension must be in 1..16");
  if (level_hi < level_lo) throw invalid_input("empty level range");
  if (base_ranges.size() != d) throw invalid_input("need one coordinate range per horizontal dimension");
  double count = 1.0;
  for (auto [lo, hi] : base_ranges) {
    if (hi < lo) throw invalid_input("empty coordinate range");
    count *= double(hi - lo + 1);
  }
  if (count > 2e5) throw budget_error("window base has " + std::to_string(count) + " tiles; limit is 200000");
  TilingWindow w;
  w.d = d;
  w.level_lo = level_lo;
  w.level_hi = level_hi;
  std::vector<Tile> level;
  std::vector<std::int64_t> cur(d);
  for (std::size_t i = 0; i < d; ++i) cur[i] = base_ranges[i].first;
  while (true) {
    level.push_back(Tile{level_lo, cur});
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (cur[i] < base_ranges[i].second) {
        ++cur[i];
        break;
      }
      cur[i] = base_ranges[i].first;
    }
    if (i == d) break;
  }
  for (int k = level_lo;; ++k) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    w.tiles.insert(w.tiles.end(), level.begin(), level.end());
    if (k == level_hi) break;
    for (auto& t : level) t = tile_up(t);
  }
  for (std::size_t i = 0; i < w.tiles.size(); ++i) w.index[w.tiles[i]] = i;
  w.adjacency.assign(w.tiles.size(), {});
  for (std::size_t i = 0; i < w.tiles.size(); ++i)
    for (const auto& nb : tile_neighbors(w.tiles[i]))
      if (auto j = w.find(nb)) w.adjacency[i].push_back(*j);
  // Connectivity and hop metric by BFS.
  const std::size_t n = w.tiles.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::string>> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comps.push_back({});
    std::queue<std::size_t> q;
    q.push(s);
    comp[s] = int(comps.size() - 1);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      if (comps.back().size() < 3) comps.back().push_back(to_string(w.tiles[v]));
      for (auto u : w.adjacency[v])
        if (comp[u] < 0) {
          comp[u] = comp[s];
          q.push(u);
        }
    }
  }
  if (comps.size() > 1) {
    std::string msg = "window graph is disconnected into " + std::to_string(comps.size()) + " components:";
    for (const auto& c : comps) {
      msg += " {";
      for (const auto& l : c) msg += l + " ";
      msg += "...}";
    }
    throw disconnected_error(msg);
  }
  if (with_metric) {
    std::vector<double> flat(n * n, 0.0);
    std::vector<int> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      std::queue<std::size_t> q;
      q.push(s);
      dist[s] = 0;
      while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (auto u : w.adjacency[v])
          if (dist[u] < 0) {
            dist[u] = dist[v] + 1;
            q.push(u);
          }
      }
      for (std::size_t t = 0; t < n; ++t) flat[s * n + t] = dist[t];
    }
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = to_string(w.tiles[i]);
    w.metric = MetricSpace::from_flat(std::move(labels), std::move(flat));
  }
  return w;
}

// Window whose base is [0, span) at level 0 in every coordinate with levels
// 0..levels.
inline TilingWindow build_column_window(std::size_t d, int levels, std::int64_t span, bool with_metric = true) {
  if (span < 1) throw invalid_input("span must be positive");
  return build_window(d, 0, levels, std::vector<std::pair<std::int64_t, std::int64_t>>(d, {0, span - 1}), with_metric);
}

// Rooted first-visit order on the vertical forest of the window: roots (tiles
// whose parent is outside) by coordinates, children by ascending offset.
inline TotalOrder branch_convex_order(const TilingWindow& w) {
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!w.contains(tile_up(w.tiles[i]))) roots.push_back(i);
  std::sort(roots.begin(), roots.end(),
            [&](std::size_t x, std::size_t y) { return coordinate_less(w.tiles[x], w.tiles[y]); });
  std::vector<std::size_t> seq, stack;
  seq.reserve(w.size());
  const std::uint32_t kids = 1u << w.d;
  for (auto r : roots) {
    stack.push_back(r);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      seq.push_back(v);
      for (std::uint32_t e = kids; e-- > 0;)
        if (auto c = w.find(tile_down(w.tiles[v], e))) stack.push_back(*c);
    }
  }
  return TotalOrder::from_sequence(std::move(seq));
}

// Window tiles inside the branch of `root`.
inline std::vector<std::size_t> window_branch(const TilingWindow& w, const Tile& root) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (in_branch(w.tiles[i], root)) out.push_back(i);
  return out;
}

struct MultiplicityAudit {
  std::size_t paths = 0;      // consecutive pairs joined
  std::size_t truncated = 0;  // paths leaving the window, excluded
  std::size_t violations = 0; // (vertical edge, direction) used by more than one path
  std::size_t max_vertical_use = 0;
  std::size_t max_vertex_paths = 0;
  // Vertical edges keyed by their lower tile: {up uses, down uses}.
  std::map<Tile, std::pair<std::size_t, std::size_t>> vertical;
  std::map<Tile, std::size_t> vertex_paths;
};

// Joins the points of x, sorted decreasingly in t, by consecutive standard
// paths and counts how often each vertical edge is used in each direction.
inline MultiplicityAudit multiplicity_audit(const TilingWindow& w, const TotalOrder& t, std::vector<std::size_t> x) {
  if (t.size() != w.size()) throw invalid_input("order does not match the window");
  for (auto p : x)
    if (p >= w.size()) throw invalid_input("subset point outside the window");
  std::sort(x.begin(), x.end(), [&](std::size_t a, std::size_t b) { return t.rank(a) > t.rank(b); });
  MultiplicityAudit r;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const auto p = standard_up_down_path(w.tiles[x[i]], w.tiles[x[i + 1]]);
    if (!std::all_of(p.tiles.begin(), p.tiles.end(), [&](const Tile& tl) { return w.contains(tl); })) {
      ++r.truncated;
      continue;
    }
    ++r.paths;
    std::map<Tile, char> here;
    for (std::size_t j = 0; j + 1 < p.tiles.size(); ++j) {
      const Tile &a = p.tiles[j], &b = p.tiles[j + 1];
      if (b.k == a.k + 1) ++r.vertical[a].first;
      if (a.k == b.k + 1) ++r.vertical[b].second;
    }
    for (const auto& tl : p.tiles) here[tl] = 1;
    for (const auto& [tl, _] : here) ++r.vertex_paths[tl];
  }
  for (const auto& [tl, c] : r.vertical) {
    r.max_vertical_use = std::max({r.max_vertical_use, c.first, c.second});
    r.violations += (c.first > 1) + (c.second > 1);
  }
  for (const auto& [tl, c] : r.vertex_paths) r.max_vertex_paths = std::max(r.max_vertex_paths, c);
  return r;
}

// Empirical quasi-geodesic constants of standard paths over all window
// pairs: slope_only = max len/dist (B = 0) and offset_only = max len - dist
// (A = 1).
struct QuasiGeodesicFit {
  double slope_only = 1.0;
  double offset_only = 0.0;
  std::size_t pairs = 0;
  std::size_t truncated = 0;
};

inline QuasiGeodesicFit fit_up_down_constants(const TilingWindow& w) {
  if (w.metric.size() != w.size()) throw invalid_input("window was built without a metric");
  QuasiGeodesicFit f;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const auto p = standard_up_down_path(w.tiles[i], w.tiles[j]);
      if (!std::all_of(p.tiles.begin(), p.tiles.end(), [&](const Tile& tl) { return w.contains(tl); })) {
        ++f.truncated;
        continue;
      }
      ++f.pairs;
      const double len = double(p.length()), dist = w.metric(i, j);
      f.slope_only = std::max(f.slope_only, len / dist);
      f.offset_only = std::max(f.offset_only, len - dist);
    }
  return f;
}

// Graphviz export with one rank per level.
inline std::string window_to_dot(const TilingWindow& w) {
  std::ostringstream os;
  os << "graph tiling {\n  rankdir=BT;\n";
  for (int k = w.level_lo; k <= w.level_hi; ++k) {
    os << "  { rank=same;";
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w.tiles[i].k == k) os << " t" << i << ";";
    os << " }\n";
  }
  for (std::size_t i = 0; i < w.size(); ++i) os << "  t" << i << " [label=\"" << to_string(w.tiles[i]) << "\"];\n";
  for (std::size_t i = 0; i < w.size(); ++i)
    for (auto j : w.adjacency[i])
      if (i < j) os << "  t" << i << " -- t" << j << (w.tiles[i].k == w.tiles[j].k ? " [style=dashed]" : "") << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace utsp
