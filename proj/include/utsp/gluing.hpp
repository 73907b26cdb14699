#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"
#include "utsp/random.hpp"

namespace utsp {

struct Component {
  MetricSpace space;
  TotalOrder order;
};

// One joint point: the list of (component, local point) pairs identified.
using Joint = std::vector<std::pair<std::size_t, std::size_t>>;

// Spaces glued at single points along a tree. The bipartite graph with one
// node per component, one node per joint and an edge for every incidence
// must be a tree.
class AcyclicGluing {
 public:
  AcyclicGluing(std::vector<Component> components, std::vector<Joint> joints)
      : components_(std::move(components)), joints_(std::move(joints)) {
    if (components_.empty()) throw invalid_input("gluing needs at least one component");
    for (const auto& c : components_) check_order(c.space, c.order);
    const std::size_t nc = components_.size();
    std::size_t incidences = 0;
    std::vector<std::size_t> uf(nc + joints_.size());
    std::iota(uf.begin(), uf.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    for (std::size_t j = 0; j < joints_.size(); ++j) {
      if (joints_[j].size() < 2) throw invalid_input("joint " + std::to_string(j) + " must join two components");
      std::vector<char> comp_used(nc, 0);
      for (auto [c, p] : joints_[j]) {
        if (c >= nc || p >= components_[c].space.size())
          throw invalid_input("joint " + std::to_string(j) + " names an invalid point");
        if (comp_used[c]) throw invalid_input("joint " + std::to_string(j) + " meets a component twice");
        comp_used[c] = 1;
        if (!seen.emplace(std::make_pair(c, p), j).second)
          throw invalid_input("point used by two joints; merge them into one");
        ++incidences;
        uf[find(c)] = find(nc + j);
      }
    }
    if (incidences + 1 != nc + joints_.size()) throw invalid_input("gluing graph is not a tree (it has a cycle)");
    for (std::size_t x = 1; x < uf.size(); ++x)
      if (find(x) != find(0)) throw invalid_input("gluing graph is not connected");
    // Global point ids: joints first, then the remaining points by component.
    local_to_global_.resize(nc);
    for (std::size_t c = 0; c < nc; ++c) local_to_global_[c].assign(components_[c].space.size(), SIZE_MAX);
    for (std::size_t j = 0; j < joints_.size(); ++j) {
      for (auto [c, p] : joints_[j]) local_to_global_[c][p] = j;
      global_to_local_.push_back(joints_[j]);
    }
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t p = 0; p < components_[c].space.size(); ++p)
        if (local_to_global_[c][p] == SIZE_MAX) {
          local_to_global_[c][p] = global_to_local_.size();
          global_to_local_.push_back({{c, p}});
        }
  }

  std::size_t component_count() const noexcept { return components_.size(); }
  const Component& component(std::size_t c) const { return components_.at(c); }
  const std::vector<Joint>& joints() const noexcept { return joints_; }
  std::size_t size() const noexcept { return global_to_local_.size(); }
  std::size_t global(std::size_t c, std::size_t p) const { return local_to_global_.at(c).at(p); }
  // All (component, local point) occurrences of a glued point.
  const Joint& occurrences(std::size_t g) const { return global_to_local_.at(g); }
  bool is_joint(std::size_t g) const { return g < joints_.size(); }

  // Shortest-path metric of the union of the components.
  MetricSpace metric() const {
    std::vector<Edge> edges;
    for (std::size_t c = 0; c < components_.size(); ++c) {
      const auto& sp = components_[c].space;
      for (std::size_t a = 0; a < sp.size(); ++a)
        for (std::size_t b = a + 1; b < sp.size(); ++b) edges.push_back({global(c, a), global(c, b), sp(a, b)});
    }
    std::vector<std::string> labels(size());
    for (std::size_t g = 0; g < size(); ++g) {
      auto [c, p] = global_to_local_[g][0];
      labels[g] = is_joint(g) ? "j" + std::to_string(g) : std::to_string(c) + ":" + components_[c].space.label(p);
    }
    return shortest_path_metric(Graph(size(), std::move(edges), std::move(labels)));
  }

 private:
  std::vector<Component> components_;
  std::vector<Joint> joints_;
  std::vector<std::vector<std::size_t>> local_to_global_;
  std::vector<Joint> global_to_local_;
};

// Clockwise order: the base point first, then each component containing it
// walked by its cyclic shift at the base; whenever a joint is reached, the
// other components at that joint are walked recursively before resuming.
inline TotalOrder clockwise_order(const AcyclicGluing& g, std::size_t base) {
  if (base >= g.size()) throw invalid_input("base point out of range");
  std::vector<std::size_t> seq;
  std::vector<char> done(g.component_count(), 0);
  auto visit = [&](auto&& self, std::size_t c, std::size_t entry_local) -> void {
    done[c] = 1;
    const auto shifted = cyclic_shift(g.component(c).order, entry_local);
    for (std::size_t r = 1; r < shifted.size(); ++r) {
      const std::size_t p = shifted.at(r);
      const std::size_t gp = g.global(c, p);
      seq.push_back(gp);
      for (auto [c2, p2] : g.occurrences(gp))
        if (!done[c2]) self(self, c2, p2);
    }
  };
  seq.push_back(base);
  for (auto [c, p] : g.occurrences(base))
    if (!done[c]) visit(visit, c, p);
  return TotalOrder::from_sequence(std::move(seq));
}

// Random gluing of random Euclidean components with random orders. Each
// component after the first attaches at one of its points to a uniformly
// chosen point of an earlier component.
template <typename Rng>
AcyclicGluing random_gluing(const std::vector<std::size_t>& sizes, Rng& rng) {
  if (sizes.empty()) throw invalid_input("random gluing needs component sizes");
  std::vector<Component> comps;
  for (std::size_t n : sizes) {
    if (n < 1) throw invalid_input("component sizes must be positive");
    auto sp = random_euclidean_space(n, rng);
    auto t = random_order(n, rng);
    comps.push_back({std::move(sp), std::move(t)});
  }
  std::vector<Joint> joints;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> joint_of;
  for (std::size_t c = 1; c < sizes.size(); ++c) {
    const std::size_t host = std::uniform_int_distribution<std::size_t>(0, c - 1)(rng);
    const std::size_t hp = std::uniform_int_distribution<std::size_t>(0, sizes[host] - 1)(rng);
    const std::size_t cp = std::uniform_int_distribution<std::size_t>(0, sizes[c] - 1)(rng);
    auto it = joint_of.find({host, hp});
    if (it == joint_of.end()) {
      joint_of[{host, hp}] = joints.size();
      joint_of[{c, cp}] = joints.size();
      joints.push_back({{host, hp}, {c, cp}});
    } else {
      joints[it->second].push_back({c, cp});
      joint_of[{c, cp}] = it->second;
    }
  }
  return AcyclicGluing(std::move(comps), std::move(joints));
}

}  // namespace utsp
