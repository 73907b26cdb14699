#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"

namespace utsp {

// Finite rooted tree with positive edge lengths and a fixed order on the
// children of every vertex.
class RootedTree {
 public:
  RootedTree() = default;

  // parent[v] is nullopt exactly for the root; length[v] is the length of
  // the edge from v to its parent (ignored for the root). Children keep
  // ascending vertex order unless reordered with set_children().
  RootedTree(std::vector<std::optional<std::size_t>> parent, std::vector<double> length,
             std::vector<std::string> labels = {})
      : parent_(std::move(parent)), length_(std::move(length)), labels_(std::move(labels)) {
    const std::size_t n = parent_.size();
    if (length_.size() != n) throw invalid_input("tree needs one edge length per vertex");
    if (!labels_.empty() && labels_.size() != n) throw invalid_input("tree label count mismatch");
    children_.assign(n, {});
    std::size_t roots = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!parent_[v]) {
        root_ = v;
        ++roots;
        continue;
      }
      if (*parent_[v] >= n || *parent_[v] == v) throw invalid_input("tree parent out of range");
      if (!(length_[v] > 0.0)) throw invalid_input("tree edge lengths must be positive");
      children_[*parent_[v]].push_back(v);
    }
    if (n > 0 && roots != 1) throw invalid_input("tree must have exactly one root, found " + std::to_string(roots));
    // Every vertex must reach the root.
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack;
    if (n > 0) stack.push_back(root_);
    std::size_t reached = 0;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      if (seen[v]) throw invalid_input("tree contains a cycle");
      seen[v] = 1;
      ++reached;
      for (auto c : children_[v]) stack.push_back(c);
    }
    if (reached != n) throw invalid_input("tree has vertices unreachable from the root (cycle)");
  }

  std::size_t size() const noexcept { return parent_.size(); }
  std::size_t root() const noexcept { return root_; }
  std::optional<std::size_t> parent(std::size_t v) const { return parent_.at(v); }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_.at(v); }
  double edge_length(std::size_t v) const { return length_.at(v); }

  void set_children(std::size_t v, std::vector<std::size_t> order) {
    auto a = order, b = children_.at(v);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw invalid_input("children order must permute the existing children");
    children_[v] = std::move(order);
  }

  // x is an ascendant of y (x != y, x on the root path of y).
  bool is_ascendant(std::size_t x, std::size_t y) const {
    auto p = parent_.at(y);
    while (p) {
      if (*p == x) return true;
      p = parent_[*p];
    }
    return false;
  }

  // The branch of v: v and all its descendants.
  std::vector<std::size_t> branch(std::size_t v) const {
    std::vector<std::size_t> out, stack{v};
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      out.push_back(u);
      for (auto c : children_[u]) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Path metric on the vertices.
  MetricSpace metric() const {
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < size(); ++v)
      if (parent_[v]) edges.push_back({*parent_[v], v, length_[v]});
    return shortest_path_metric(Graph(size(), std::move(edges), labels_));
  }

 private:
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<double> length_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> children_;
  std::size_t root_ = 0;
};

// First-visit depth-first order: every ascendant precedes its descendants,
// children are visited in the tree's children order.
inline TotalOrder rooted_order(const RootedTree& tree) {
  std::vector<std::size_t> seq, stack;
  if (tree.size() > 0) stack.push_back(tree.root());
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    seq.push_back(v);
    const auto& ch = tree.children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return TotalOrder::from_sequence(std::move(seq));
}

// True iff every branch is convex with respect to t.
inline bool is_hierarchical(const RootedTree& tree, const TotalOrder& t) {
  if (t.size() != tree.size()) throw invalid_input("order size does not match tree");
  // Post-order accumulation of rank range and size per branch.
  const std::size_t n = tree.size();
  std::vector<std::size_t> lo(n), hi(n), count(n, 1);
  std::vector<std::size_t> order, stack;
  if (n > 0) stack.push_back(tree.root());
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto c : tree.children(v)) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = *it;
    lo[v] = hi[v] = t.rank(v);
    for (auto c : tree.children(v)) {
      lo[v] = std::min(lo[v], lo[c]);
      hi[v] = std::max(hi[v], hi[c]);
      count[v] += count[c];
    }
    if (hi[v] - lo[v] + 1 != count[v]) return false;
  }
  return true;
}

// Random tree: vertex v > 0 hangs below a uniform earlier vertex with a
// length drawn from [min_len, max_len]; children orders are shuffled.
template <typename Rng>
RootedTree random_tree(std::size_t n, Rng& rng, double min_len = 0.1, double max_len = 2.0) {
  std::vector<std::optional<std::size_t>> parent(n);
  std::vector<double> length(n, 0.0);
  std::uniform_real_distribution<double> len(min_len, max_len);
  for (std::size_t v = 1; v < n; ++v) {
    parent[v] = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    length[v] = len(rng);
  }
  RootedTree t(std::move(parent), std::move(length));
  for (std::size_t v = 0; v < n; ++v) {
    auto ch = t.children(v);
    std::shuffle(ch.begin(), ch.end(), rng);
    t.set_children(v, std::move(ch));
  }
  return t;
}

}  // namespace utsp
