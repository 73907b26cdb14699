#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "utsp/error.hpp"

namespace utsp {

// Absolute tolerance for every equality test between distances.
inline constexpr double kTolerance = 1e-9;

// Largest subset handed to the exact Held-Karp oracles by default.
inline constexpr std::size_t kExactCap = 18;

// Finite metric space stored as a dense symmetric matrix.
//
// The constructor only enforces the structural requirements (square, finite,
// nonnegative, unique labels). Use validate_metric() to audit the metric
// axioms themselves.
class MetricSpace {
 public:
  MetricSpace() = default;

  MetricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> rows) {
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) {
        throw format_error("distance matrix is not square: row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) + " entries, expected " +
                           std::to_string(n));
      }
    }
    dist_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double v = rows[i][j];
        if (!std::isfinite(v) || v < 0.0) {
          throw format_error("distance matrix entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") is negative or not finite");
        }
        dist_[i * n + j] = v;
      }
    }
    n_ = n;
    set_labels(std::move(labels));
  }

  // Builds a space from a flat row-major matrix.
  static MetricSpace from_flat(std::vector<std::string> labels, std::vector<double> flat) {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (n * n != flat.size()) throw format_error("flat distance matrix is not square");
    for (double v : flat) {
      if (!std::isfinite(v) || v < 0.0) throw format_error("distance matrix has a negative or non-finite entry");
    }
    MetricSpace m;
    m.n_ = n;
    m.dist_ = std::move(flat);
    m.set_labels(std::move(labels));
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }
  double distance(std::size_t i, std::size_t j) const { return dist_.at(i * n_ + j); }

  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Raw row-major storage, n*n entries.
  std::span<const double> data() const noexcept { return dist_; }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  double diameter() const noexcept {
    double best = 0.0;
    for (double v : dist_) best = std::max(best, v);
    return best;
  }

  double diameter(std::span<const std::size_t> points) const noexcept {
    double best = 0.0;
    for (std::size_t a = 0; a < points.size(); ++a)
      for (std::size_t b = a + 1; b < points.size(); ++b) best = std::max(best, (*this)(points[a], points[b]));
    return best;
  }

  // Smallest distance between two distinct points (infinity when n < 2).
  double separation() const noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) best = std::min(best, (*this)(i, j));
    return best;
  }

  // Restriction of the metric to the given points, in the given order.
  MetricSpace subspace(std::span<const std::size_t> points) const {
    std::vector<std::string> labels;
    std::vector<double> flat;
    flat.reserve(points.size() * points.size());
    for (std::size_t a : points) {
      labels.push_back(label(a));
      for (std::size_t b : points) flat.push_back((*this)(a, b));
    }
    return from_flat(std::move(labels), std::move(flat));
  }

 private:
  void set_labels(std::vector<std::string> labels) {
    if (labels.empty()) {
      labels.reserve(n_);
      for (std::size_t i = 0; i < n_; ++i) labels.push_back(std::to_string(i));
    }
    if (labels.size() != n_) {
      throw format_error("label count " + std::to_string(labels.size()) + " does not match matrix size " +
                         std::to_string(n_));
    }
    index_.clear();
    for (std::size_t i = 0; i < n_; ++i) {
      if (!index_.emplace(labels[i], i).second) throw format_error("duplicate point label '" + labels[i] + "'");
    }
    labels_ = std::move(labels);
  }

  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Metric validation

enum class Axiom { zero_diagonal, symmetry, positivity, triangle };

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::zero_diagonal: return "zero-diagonal";
    case Axiom::symmetry: return "symmetry";
    case Axiom::positivity: return "positivity";
    case Axiom::triangle: return "triangle";
  }
  return "?";
}

struct Violation {
  Axiom axiom;
  std::size_t i = 0, j = 0, k = 0;  // k only meaningful for triangle violations
  double excess = 0.0;              // amount by which the axiom fails
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const noexcept { return violations.empty(); }
};

// Audits the metric axioms on a raw matrix. Triangle violations are reported
// once per unordered endpoint pair {i,k} and intermediate j.
inline ValidationReport validate_metric(const std::vector<std::vector<double>>& rows,
                                        double tolerance = kTolerance) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw format_error("distance matrix is not square at row " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(rows[i][j]) || rows[i][j] < 0.0) {
        throw format_error("negative or non-finite distance at (" + std::to_string(i) + "," + std::to_string(j) +
                           ")");
      }
    }
  }
  ValidationReport report;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] > tolerance) report.violations.push_back({Axiom::zero_diagonal, i, i, 0, rows[i][i]});
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = std::abs(rows[i][j] - rows[j][i]);
      if (diff > tolerance) report.violations.push_back({Axiom::symmetry, i, j, 0, diff});
      if (rows[i][j] <= tolerance || rows[j][i] <= tolerance)
        report.violations.push_back({Axiom::positivity, i, j, 0, 0.0});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double excess = rows[i][k] - (rows[i][j] + rows[j][k]);
        if (excess > tolerance) report.violations.push_back({Axiom::triangle, i, j, k, excess});
      }
    }
  }
  return report;
}

inline ValidationReport validate_metric(const MetricSpace& m, double tolerance = kTolerance) {
  return validate_metric(m.rows(), tolerance);
}

inline std::string describe(const Violation& v) {
  std::ostringstream os;
  os << to_string(v.axiom);
  if (v.axiom == Axiom::triangle) {
    os << " at (" << v.i << "," << v.j << "," << v.k << "): d(" << v.i << "," << v.k << ") exceeds d(" << v.i
       << "," << v.j << ")+d(" << v.j << "," << v.k << ") by " << v.excess;
  } else {
    os << " at (" << v.i << "," << v.j << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Weighted graphs and their shortest-path metric

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

struct Graph {
  std::vector<std::string> labels;  // one per vertex; may be empty for "0".."n-1"
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;

  Graph() = default;
  Graph(std::size_t n, std::vector<Edge> e, std::vector<std::string> l = {})
      : labels(std::move(l)), vertex_count(n), edges(std::move(e)) {}

  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(vertex_count);
    for (const auto& e : edges) {
      adj[e.u].emplace_back(e.v, e.weight);
      adj[e.v].emplace_back(e.u, e.weight);
    }
    return adj;
  }
};

// Connected components of a graph, each listed by ascending vertex index.
inline std::vector<std::vector<std::size_t>> connected_components(const Graph& g) {
  const auto adj = g.adjacency();
  std::vector<int> comp(g.vertex_count, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < g.vertex_count; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (auto [w, _] : adj[v]) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

// All-pairs shortest path lengths of a connected, positively weighted graph.
inline MetricSpace shortest_path_metric(const Graph& g) {
  const std::size_t n = g.vertex_count;
  for (const auto& e : g.edges) {
    if (e.u >= n || e.v >= n) throw format_error("edge endpoint out of range");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw invalid_input("edge weights must be positive");
  }
  std::vector<std::string> labels = g.labels;
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));

  const auto comps = connected_components(g);
  if (comps.size() > 1) {
    std::ostringstream os;
    os << "graph is disconnected (" << comps.size() << " components):";
    for (std::size_t c = 0; c < comps.size() && c < 8; ++c) {
      os << " {";
      for (std::size_t t = 0; t < comps[c].size() && t < 8; ++t) os << (t ? "," : "") << labels[comps[c][t]];
      if (comps[c].size() > 8) os << ",...";
      os << "}";
    }
    if (comps.size() > 8) os << " ...";
    throw disconnected_error(os.str());
  }

  const auto adj = g.adjacency();
  std::vector<double> flat(n * n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    double* row = flat.data() + s * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    row[s] = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > row[v]) continue;
      for (auto [w, len] : adj[v]) {
        if (d + len < row[w]) {
          row[w] = d + len;
          pq.emplace(row[w], w);
        }
      }
    }
  }
  // Dijkstra from each side can differ in the last bit; symmetrize.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::min(flat[i * n + j], flat[j * n + i]);
      flat[i * n + j] = flat[j * n + i] = v;
    }
  return MetricSpace::from_flat(std::move(labels), std::move(flat));
}

// ---------------------------------------------------------------------------
// Subsets and exact tour oracles

// A finite subset X of a metric space, #X >= 2.
class SubsetInstance {
 public:
  SubsetInstance(const MetricSpace& space, std::vector<std::size_t> points) : space_(&space), points_(std::move(points)) {
    if (points_.size() < 2) throw invalid_input("a subset instance needs at least two points");
    std::vector<std::size_t> sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.back() >= space.size()) throw invalid_input("subset point index out of range");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw invalid_input("subset points must be pairwise distinct");
  }

  const MetricSpace& space() const noexcept { return *space_; }
  std::span<const std::size_t> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  const MetricSpace* space_;
  std::vector<std::size_t> points_;
};

struct PathResult {
  double length = 0.0;
  std::vector<std::size_t> sequence;  // visiting order, point indices
};

// Length of the open path visiting `sequence` in order.
inline double path_length(const MetricSpace& m, std::span<const std::size_t> sequence) {
  double total = 0.0;
  for (std::size_t i = 1; i < sequence.size(); ++i) total += m(sequence[i - 1], sequence[i]);
  return total;
}

inline double cycle_length(const MetricSpace& m, std::span<const std::size_t> sequence) {
  if (sequence.size() < 2) return 0.0;
  return path_length(m, sequence) + m(sequence.back(), sequence.front());
}

namespace detail {

inline void check_exact_size(std::size_t size, std::size_t cap) {
  if (size > cap) {
    throw budget_error("exact tour oracle refused: subset has " + std::to_string(size) +
                       " points, cap is " + std::to_string(cap) + "; use sampled mode for larger subsets");
  }
}

inline std::vector<std::size_t> sorted_points(const SubsetInstance& x) {
  std::vector<std::size_t> p(x.points().begin(), x.points().end());
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace detail

// Shortest open Hamiltonian path through X (Held-Karp over subsets).
// Among optimal paths the lexicographically smallest sequence is returned.
inline PathResult opt_path_length(const SubsetInstance& x, std::size_t cap = kExactCap) {
  detail::check_exact_size(x.size(), cap);
  const auto pts = detail::sorted_points(x);
  const MetricSpace& m = x.space();
  const std::size_t n = pts.size();
  const std::size_t full = (std::size_t{1} << n) - 1;
  constexpr double inf = std::numeric_limits<double>::infinity();
  // h[S*n + j]: shortest path that starts at j and covers S (j in S).
  std::vector<double> h((full + 1) * n, inf);
  for (std::size_t s = 1; s <= full; ++s) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(s >> j & 1)) continue;
      const std::size_t rest = s & ~(std::size_t{1} << j);
      if (rest == 0) {
        h[s * n + j] = 0.0;
        continue;
      }
      double best = inf;
      for (std::size_t i = 0; i < n; ++i)
        if (rest >> i & 1) best = std::min(best, m(pts[j], pts[i]) + h[rest * n + i]);
      h[s * n + j] = best;
    }
  }
  double opt = inf;
  for (std::size_t j = 0; j < n; ++j) opt = std::min(opt, h[full * n + j]);

  PathResult r;
  r.length = opt;
  std::size_t s = full;
  double target = opt;
  std::size_t cur = n;
  while (s) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!(s >> i & 1)) continue;
      const double step = cur == n ? 0.0 : m(pts[cur], pts[i]);
      if (step + h[s * n + i] <= target + kTolerance) {
        target = h[s * n + i];
        r.sequence.push_back(pts[i]);
        s &= ~(std::size_t{1} << i);
        cur = i;
        break;
      }
    }
  }
  return r;
}

// Shortest closed tour through X. The returned sequence starts at the
// smallest point index and is lexicographically smallest among optimal tours.
inline PathResult opt_cycle_length(const SubsetInstance& x, std::size_t cap = kExactCap) {
  detail::check_exact_size(x.size(), cap);
  const auto pts = detail::sorted_points(x);
  const MetricSpace& m = x.space();
  const std::size_t n = pts.size();
  const std::size_t rest_n = n - 1;  // positions 1..n-1 mapped to bits 0..n-2
  const std::size_t full = (std::size_t{1} << rest_n) - 1;
  constexpr double inf = std::numeric_limits<double>::infinity();
  // c[S*rest_n + j]: shortest path from position j+1 covering S then returning to position 0.
  std::vector<double> c((full + 1) * rest_n, inf);
  for (std::size_t s = 1; s <= full; ++s) {
    for (std::size_t j = 0; j < rest_n; ++j) {
      if (!(s >> j & 1)) continue;
      const std::size_t rest = s & ~(std::size_t{1} << j);
      if (rest == 0) {
        c[s * rest_n + j] = m(pts[j + 1], pts[0]);
        continue;
      }
      double best = inf;
      for (std::size_t i = 0; i < rest_n; ++i)
        if (rest >> i & 1) best = std::min(best, m(pts[j + 1], pts[i + 1]) + c[rest * rest_n + i]);
      c[s * rest_n + j] = best;
    }
  }
  double opt = inf;
  for (std::size_t j = 0; j < rest_n; ++j) opt = std::min(opt, m(pts[0], pts[j + 1]) + c[full * rest_n + j]);

  PathResult r;
  r.length = opt;
  r.sequence.push_back(pts[0]);
  std::size_t s = full;
  std::size_t cur = 0;  // position, 0 = start
  double target = opt;
  while (s) {
    for (std::size_t i = 0; i < rest_n; ++i) {
      if (!(s >> i & 1)) continue;
      const double v = m(pts[cur], pts[i + 1]) + c[s * rest_n + i];
      if (v <= target + kTolerance) {
        target = c[s * rest_n + i];
        r.sequence.push_back(pts[i + 1]);
        s &= ~(std::size_t{1} << i);
        cur = i + 1;
        break;
      }
    }
  }
  return r;
}

}  // namespace utsp
