#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "utsp/copies.hpp"
#include "utsp/figures.hpp"
#include "utsp/gluing.hpp"
#include "utsp/nets.hpp"
#include "utsp/order_ratio.hpp"
#include "utsp/random.hpp"
#include "utsp/snake.hpp"
#include "utsp/star.hpp"
#include "utsp/tiling.hpp"
#include "utsp/tree.hpp"

namespace utsp::acceptance {

// Pinned tolerances.
inline constexpr double kEqualityTol = 1e-9;     // exact-arithmetic comparisons
inline constexpr double kGrowthTolerance = 0.10; // bounded-OR evidence across windows
inline constexpr double kDominoEps = 0.1;

struct Config {
  std::uint64_t seed = 1;
  double scale = 1.0;  // fraction of the instance counts to run (tests use < 1)
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

namespace detail {

inline std::size_t scaled(std::size_t count, const Config& c) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(double(count) * c.scale + 0.5));
}

inline std::vector<double> values(const MetricSpace& m, const TotalOrder& t, int kmax, bool cyclic = false) {
  RatioOptions o;
  o.cyclic = cyclic;
  std::vector<double> v;
  for (const auto& r : ratio_profile(m, t, kmax, o)) v.push_back(r.value);
  return v;
}

// Mixed generator for random test spaces: Euclidean in 1..3 dimensions or
// random weighted graph metrics.
template <typename Rng>
MetricSpace mixed_space(std::size_t n, Rng& rng) {
  const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
  if (kind < 3 || n < 2) return random_euclidean_space(n, rng, std::size_t(kind) + 1);
  auto g = random_connected_graph(n, n / 2, rng);
  std::uniform_real_distribution<double> w(0.2, 2.0);
  for (auto& e : g.edges) e.weight = w(rng);
  return shortest_path_metric(g);
}

struct Tally {
  std::size_t checks = 0, failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      if (failures == 0) first = what;
      ++failures;
    }
  }
  std::string summary(const std::string& prefix) const {
    std::ostringstream os;
    os << prefix << "; " << checks << " checks, " << failures << " failures";
    if (failures) os << "; first: " << first;
    return os.str();
  }
};

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace detail

// 1. Exact OR_{M,T}(k) lies in [1, k] and is nondecreasing in k.
inline Result bounds_sanity(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 1);
  detail::Tally tally;
  const std::size_t count = detail::scaled(200, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    const auto m = detail::mixed_space(n, rng);
    const auto t = random_order(n, rng);
    const auto v = detail::values(m, t, int(n));
    for (std::size_t k = 1; k <= v.size(); ++k) {
      const double x = v[k - 1];
      tally.expect(x >= 1.0 - kEqualityTol && x <= double(k) + kEqualityTol,
                   "instance " + std::to_string(i) + " k=" + std::to_string(k) + " value " + detail::num(x));
      if (k > 1) tally.expect(x >= v[k - 2], "instance " + std::to_string(i) + " decreases at k=" + std::to_string(k));
    }
  }
  return {1, "bounds sanity", tally.failures == 0, tally.summary(std::to_string(count) + " spaces"), 0, 60};
}

// 2. Six-point example: OR(2) minimizers are exactly T1 and its reverse,
// and T3 beats T1 at k = 3.
inline Result six_point_example(const Config&) {
  const MetricSpace m({"1", "2", "3", "4", "5", "6"}, {{0, 1, 1.5, 1.7, 1.5, 2},
                                                       {1, 0, 1.8, 1.6, 1.5, 1.6},
                                                       {1.5, 1.8, 0, 1, 1.7, 2},
                                                       {1.7, 1.6, 1, 0, 1.3, 1.6},
                                                       {1.5, 1.5, 1.7, 1.3, 0, 1.7},
                                                       {2, 1.6, 2, 1.6, 1.7, 0}});
  const auto best = best_order_ratio(m, 2);
  const auto t1 = TotalOrder::identity(6);
  const auto t2 = t1.reversed();
  const auto t3 = TotalOrder::from_sequence({2, 3, 4, 0, 1, 5});
  bool minimizers_ok = best.exact && best.orders_examined == 720 && best.minimizers.size() == 2 &&
                       ((best.minimizers[0] == t1 && best.minimizers[1] == t2) ||
                        (best.minimizers[0] == t2 && best.minimizers[1] == t1));
  const double or3_t1 = order_ratio(m, t1, 3).value, or3_t3 = order_ratio(m, t3, 3).value;
  const bool t3_ok = or3_t3 < or3_t1 - kEqualityTol;
  std::ostringstream os;
  os << "OR_M(2) = " << detail::num(best.value) << " with " << best.minimizers.size() << " minimizers over "
     << best.orders_examined << " orders; OR_T3(3) = " << detail::num(or3_t3) << " vs OR_T1(3) = " << detail::num(or3_t1);
  return {2, "six-point example", minimizers_ok && t3_ok, os.str(), 0, 5};
}

// 3. Rooted orders on random weighted trees have exact OR(k) <= 2.
inline Result tree_orders(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 3);
  detail::Tally tally;
  double worst = 1.0;
  const std::size_t count = detail::scaled(100, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 14)(rng);
    const auto tree = random_tree(n, rng);
    const auto t = rooted_order(tree);
    tally.expect(is_hierarchical(tree, t), "rooted order not hierarchical on tree " + std::to_string(i));
    for (double v : detail::values(tree.metric(), t, int(n) - 1)) {
      worst = std::max(worst, v);
      tally.expect(v <= 2.0 + kEqualityTol, "tree " + std::to_string(i) + " has OR " + detail::num(v));
    }
  }
  return {3, "tree orders", tally.failures == 0,
          tally.summary(std::to_string(count) + " trees, max OR " + detail::num(worst)), 0, 120};
}

// 4. Every order of 8 circle points has a thin long 3-snake; the clockwise
// order has OR <= 2.
inline Result circle(const Config&) {
  const std::size_t n = 8;
  const double len = 1.0;
  const auto m = circle_space(n, len);
  std::vector<std::size_t> seq(n);
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  std::size_t orders = 0, missing = 0;
  do {
    ++orders;
    if (!find_snake_with_bounds(m, TotalOrder::from_sequence(seq), 3, len / 2 - len / n, len / n)) ++missing;
  } while (std::next_permutation(seq.begin(), seq.end()));
  double worst = 1.0;
  for (double v : detail::values(m, TotalOrder::identity(n), int(n) - 1)) worst = std::max(worst, v);
  const bool ok = missing == 0 && orders == 40320 && worst <= 2.0 + kEqualityTol;
  return {4, "circle", ok,
          std::to_string(orders) + " orders, " + std::to_string(missing) + " without a snake; clockwise max OR " +
              detail::num(worst),
          0, 120};
}

// 5. 1/2 OR <= OR° <= 2 OR.
inline Result cyclic_sandwich(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 5);
  detail::Tally tally;
  const std::size_t count = detail::scaled(200, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 12)(rng);
    const auto m = detail::mixed_space(n, rng);
    const auto t = random_order(n, rng);
    const int k = std::uniform_int_distribution<int>(1, int(n) - 1)(rng);
    const double open = order_ratio(m, t, k).value, closed = cyclic_order_ratio(m, t, k).value;
    tally.expect(closed >= 0.5 * open - kEqualityTol && closed <= 2.0 * open + kEqualityTol,
                 "triple " + std::to_string(i) + ": OR " + detail::num(open) + ", OR° " + detail::num(closed));
  }
  return {5, "cyclic sandwich", tally.failures == 0, tally.summary(std::to_string(count) + " triples"), 0, 60};
}

// 6. OR° of a clockwise order on an acyclic gluing is the maximum over the
// components, for every k.
inline Result gluing_equality(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 6);
  detail::Tally tally;
  const std::size_t count = detail::scaled(50, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t comps = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    // Total glued size sum(n_c) - (comps - 1) <= 13.
    std::vector<std::size_t> sizes(comps, 2);
    std::size_t total = 2 * comps - (comps - 1);
    const std::size_t target = std::uniform_int_distribution<std::size_t>(total, 13)(rng);
    while (total < target) {
      ++sizes[std::uniform_int_distribution<std::size_t>(0, comps - 1)(rng)];
      ++total;
    }
    const auto g = random_gluing(sizes, rng);
    const auto m = g.metric();
    const std::size_t base = std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng);
    const auto t = clockwise_order(g, base);
    const int kmax = int(m.size()) - 1;
    const auto whole = detail::values(m, t, kmax, true);
    std::vector<double> best(std::size_t(kmax), 1.0);
    for (std::size_t c = 0; c < g.component_count(); ++c) {
      const auto v = detail::values(g.component(c).space, g.component(c).order, kmax, true);
      for (int k = 0; k < kmax; ++k) best[std::size_t(k)] = std::max(best[std::size_t(k)], v[std::size_t(k)]);
    }
    for (int k = 0; k < kmax; ++k)
      tally.expect(std::abs(whole[std::size_t(k)] - best[std::size_t(k)]) <= kEqualityTol,
                   "gluing " + std::to_string(i) + " k=" + std::to_string(k + 1) + ": " +
                       detail::num(whole[std::size_t(k)]) + " vs " + detail::num(best[std::size_t(k)]));
  }
  return {6, "gluing equality", tally.failures == 0, tally.summary(std::to_string(count) + " gluings"), 0, 300};
}

// 7. OR_{Star(T)}(k) <= 8 OR_{V,T}(k) + 4 on random graphs.
inline Result star_bound(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 7);
  detail::Tally tally;
  double worst_margin = 1e300;
  const int kmax = 5, m = 3;
  const std::size_t count = detail::scaled(30, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    const auto g = random_connected_graph(n, extra, rng);
    const auto tv = random_order(n, rng);
    const auto [star, ts] = star_order(g, tv, m);
    const auto vs = detail::values(star.space, ts, kmax);
    const auto vv = detail::values(vertex_metric(g), tv, kmax);
    for (int k = 0; k < kmax; ++k) {
      const double bound = 8.0 * vv[std::size_t(k)] + 4.0;
      worst_margin = std::min(worst_margin, bound - vs[std::size_t(k)]);
      tally.expect(vs[std::size_t(k)] <= bound + kEqualityTol,
                   "graph " + std::to_string(i) + " k=" + std::to_string(k + 1));
    }
  }
  return {7, "star bound", tally.failures == 0,
          tally.summary(std::to_string(count) + " graphs, smallest margin " + detail::num(worst_margin)), 0, 600};
}

// 8. Domino snakes: every tested order has a 4-snake with width <= 2 eps and
// diameter >= 1/3 - eps.
inline Result domino_snakes(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 8);
  const auto dom = domino_space(20.0);
  const auto& m = dom.space;
  struct Case {
    std::string kind;
    MetricSpace space;
    TotalOrder order;
  };
  std::vector<Case> orders;
  const std::size_t random_count = detail::scaled(100, cfg);
  for (std::size_t i = 0; i < random_count; ++i) orders.push_back({"random", m, random_order(m.size(), rng)});
  // Star orders for vertex orders; m = 10 samples the same 20 points per unit.
  const auto graph = domino_graph();
  std::vector<std::size_t> vseq(graph.vertex_count);
  std::iota(vseq.begin(), vseq.end(), std::size_t{0});
  std::size_t star_count = 0;
  const std::size_t star_limit = detail::scaled(720, cfg);
  do {
    auto [s, t] = star_order(graph, TotalOrder::from_sequence(vseq), 10);
    if (s.space.size() != m.size()) throw invalid_input("star discretization does not match the domino");
    orders.push_back({"star", std::move(s.space), std::move(t)});
    ++star_count;
  } while (std::next_permutation(vseq.begin(), vseq.end()) && star_count < star_limit);
  // Rooted orders of breadth-first spanning trees, and the construction order.
  const double step = 1.0 / dom.density;
  for (std::size_t root = 0; root < graph.vertex_count; ++root) {
    std::vector<std::optional<std::size_t>> parent(m.size());
    std::vector<double> len(m.size(), 0.0);
    std::vector<char> seen(m.size(), 0);
    std::vector<std::size_t> queue{root};
    seen[root] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (std::size_t u = 0; u < m.size(); ++u)
        if (!seen[u] && std::abs(m(queue[q], u) - step) < 1e-9) {
          seen[u] = 1;
          parent[u] = queue[q];
          len[u] = step;
          queue.push_back(u);
        }
    orders.push_back({"rooted", m, rooted_order(RootedTree(parent, len))});
  }
  orders.push_back({"construction", m, TotalOrder::identity(m.size())});
  const double eps = kDominoEps;
  std::size_t missing = 0;
  std::string first;
  double min_diam = 1e300, max_width = 0;
  for (const auto& c : orders) {
    const auto s = find_snake_with_bounds(c.space, c.order, 4, 1.0 / 3.0 - eps, 2 * eps);
    if (!s) {
      if (!missing) first = c.kind;
      ++missing;
      continue;
    }
    min_diam = std::min(min_diam, s->diameter);
    max_width = std::max(max_width, s->width);
  }
  std::ostringstream os;
  os << orders.size() << " orders (" << random_count << " random, " << star_count << " star, 6 rooted, 1 construction), "
     << missing << " without a witness";
  if (missing) os << " (first: " << first << ")";
  if (missing < orders.size()) os << "; witness diameters >= " << detail::num(min_diam) << ", widths <= " << detail::num(max_width);
  return {8, "domino snakes", missing == 0, os.str(), 0, 600};
}

// 9. Degree 2d + 2^d + 1 at interior window tiles; level-shift invariance of
// center distances.
inline Result tiling_adjacency(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 9);
  detail::Tally tally;
  std::size_t interior = 0;
  for (std::size_t d = 1; d <= 3; ++d) {
    const std::int64_t span = d == 1 ? 16 : d == 2 ? 8 : 4;
    const auto w = build_window(d, -2, 3, std::vector<std::pair<std::int64_t, std::int64_t>>(d, {-span, span - 1}), false);
    const std::size_t full = 2 * d + (std::size_t{1} << d) + 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto nb = tile_neighbors(w.tiles[i]);
      tally.expect(nb.size() == full, "neighbor count at " + to_string(w.tiles[i]));
      const bool inside = std::all_of(nb.begin(), nb.end(), [&](const Tile& t) { return w.contains(t); });
      if (!inside) continue;
      ++interior;
      tally.expect(w.adjacency[i].size() == full, "degree at " + to_string(w.tiles[i]));
    }
    std::uniform_int_distribution<std::int64_t> coord(-50, 50);
    std::uniform_int_distribution<int> level(-6, 6);
    for (int trial = 0; trial < 500; ++trial) {
      Tile a{level(rng), {}}, b{level(rng), {}};
      for (std::size_t i = 0; i < d; ++i) {
        a.a.push_back(coord(rng));
        b.a.push_back(coord(rng));
      }
      const double base = tile_center_distance(a, b);
      const double shifted = tile_center_distance(Tile{a.k + 1, a.a}, Tile{b.k + 1, b.a});
      tally.expect(std::abs(base - shifted) <= kEqualityTol, "level shift " + to_string(a) + " " + to_string(b));
      const double up = tile_center_distance(a, tile_up(a)), up0 = tile_center_distance(Tile{0, a.a}, tile_up(Tile{0, a.a}));
      tally.expect(std::abs(up - up0) <= kEqualityTol, "parent edge length at " + to_string(a));
    }
  }
  if (interior == 0) tally.expect(false, "no interior tiles");
  return {9, "tiling adjacency and isometry", tally.failures == 0,
          tally.summary(std::to_string(interior) + " interior tiles over d = 1, 2, 3"), 0, 60};
}

// 10. No vertical edge is used twice in one direction by the standard paths
// joining a T-sorted subset.
inline Result multiplicity(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 10);
  const auto w = build_column_window(1, 8, 256, false);
  const auto t = branch_convex_order(w);
  std::size_t violations = 0, truncated = 0, worst_vertex = 0;
  const std::size_t count = detail::scaled(1000, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t s = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    const auto a = multiplicity_audit(w, t, utsp::detail::random_subset(rng, w.size(), s));
    violations += a.violations;
    truncated += a.truncated;
    worst_vertex = std::max(worst_vertex, a.max_vertex_paths);
  }
  std::ostringstream os;
  os << count << " subsets in a " << w.size() << "-tile window; " << violations << " violations, " << truncated
     << " truncated paths; max paths through one tile " << worst_vertex;
  return {10, "multiplicity", violations == 0 && w.size() >= 500, os.str(), 0, 300};
}

// 11. Standard paths between members of a branch stay in the branch.
inline Result branch_containment(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 11);
  std::size_t outside = 0, tiles = 0;
  const std::size_t count = detail::scaled(10000, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t d = 1 + i % 2;
    Tile root{std::uniform_int_distribution<int>(-2, 6)(rng), {}};
    for (std::size_t j = 0; j < d; ++j) root.a.push_back(std::uniform_int_distribution<std::int64_t>(-20, 20)(rng));
    auto member = [&] {
      Tile t = root;
      const int depth = std::uniform_int_distribution<int>(0, 7)(rng);
      for (int j = 0; j < depth; ++j)
        t = tile_down(t, std::uniform_int_distribution<std::uint32_t>(0, (1u << d) - 1)(rng));
      return t;
    };
    const auto p = standard_up_down_path(member(), member());
    for (const auto& t : p.tiles) {
      ++tiles;
      outside += !in_branch(t, root);
    }
  }
  return {11, "branch containment", outside == 0,
          std::to_string(count) + " pairs, " + std::to_string(tiles) + " path tiles, " + std::to_string(outside) +
              " outside their branch",
          0, 60};
}

// 12. Sampled OR under branch-convex orders does not grow across windows of
// doubling span.
inline Result bounded_or_evidence(const Config& cfg) {
  std::vector<double> vals;
  std::vector<std::size_t> sizes;
  std::ostringstream os;
  for (int levels : {6, 7, 8}) {
    const auto w = build_column_window(1, levels, std::int64_t{1} << levels);
    const auto t = branch_convex_order(w);
    RatioOptions o;
    o.mode = Mode::sampled;
    o.sampled.subsets = detail::scaled(10000, cfg);
    o.sampled.seed = cfg.seed;
    const auto r = order_ratio(w.metric, t, 7, o);
    vals.push_back(r.value);
    sizes.push_back(w.size());
    os << (levels == 6 ? "" : ", ") << "span " << (1 << levels) << " (" << w.size() << " tiles): " << detail::num(r.value);
  }
  bool ok = true;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j) ok = ok && vals[j] <= (1.0 + kGrowthTolerance) * vals[i];
  return {12, "bounded-OR evidence", ok, os.str(), 0, 900};
}

// 13. Glued copies: OR_{T_s}(k) <= sC + s - 1 with C = max_k OR_{M,T}(k).
inline Result glued_copies(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 13);
  detail::Tally tally;
  double worst_margin = 1e300;
  const std::size_t count = detail::scaled(30, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t s = 2 + i % 2;
    const std::size_t n = s == 2 ? std::uniform_int_distribution<std::size_t>(3, 7)(rng)
                                 : std::uniform_int_distribution<std::size_t>(3, 5)(rng);
    MetricSpace m;
    TotalOrder t;
    if (i % 4 < 2) {
      const auto tree = random_tree(n, rng);
      m = tree.metric();
      t = rooted_order(tree);
    } else {
      m = detail::mixed_space(n, rng);
      t = random_order(n, rng);
    }
    const std::size_t w = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, n / 2))(rng);
    std::vector<std::size_t> pts(n);
    std::iota(pts.begin(), pts.end(), std::size_t{0});
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(w);
    const double c = detail::values(m, t, int(n) - 1).back();
    const auto g = glue_copies(m, t, pts, s);
    const double bound = double(s) * c + double(s) - 1.0;
    for (double v : detail::values(g.space, g.order, int(g.space.size()) - 1)) {
      worst_margin = std::min(worst_margin, bound - v);
      tally.expect(v <= bound + kEqualityTol, "instance " + std::to_string(i) + ": " + detail::num(v) + " > " + detail::num(bound));
    }
  }
  return {13, "glued copies", tally.failures == 0,
          tally.summary(std::to_string(count) + " instances, smallest margin " + detail::num(worst_margin)), 0, 300};
}

// 14. Pullback along a net projection: OR_N(k) <= (C^2 + C/delta) OR_M(k).
inline Result pullback(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed * 1000 + 14);
  detail::Tally tally;
  double worst_ratio = 0.0;
  const std::size_t count = detail::scaled(30, cfg);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(4, 12)(rng);
    const auto nspace = random_euclidean_space(n, rng, 1 + i % 2);
    const double eps = std::uniform_real_distribution<double>(0.15, 0.5)(rng);
    const auto net = greedy_separated_net(nspace, eps);
    const auto mspace = nspace.subspace(net);
    const auto phi = nearest_point_map(nspace, net);
    const auto q = measure_quasi_isometry(nspace, mspace, phi);
    const auto tm = random_order(mspace.size(), rng);
    const auto tn = pullback_order(phi, tm, random_order(n, rng));
    const int kmax = int(n) - 1;
    const auto vn = detail::values(nspace, tn, kmax), vm = detail::values(mspace, tm, kmax);
    for (int k = 0; k < kmax; ++k) {
      const double lhs = vn[std::size_t(k)], rhs = q.k() * vm[std::size_t(k)];
      worst_ratio = std::max(worst_ratio, lhs / rhs);
      tally.expect(lhs <= rhs + kEqualityTol, "instance " + std::to_string(i) + " k=" + std::to_string(k + 1));
    }
  }
  return {14, "pullback", tally.failures == 0,
          tally.summary(std::to_string(count) + " nets, max OR_N/(K OR_M) " + detail::num(worst_ratio)), 0, 300};
}

struct Criterion {
  int id;
  std::function<Result(const Config&)> run;
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, bounds_sanity},      {2, six_point_example}, {3, tree_orders},          {4, circle},
      {5, cyclic_sandwich},    {6, gluing_equality},   {7, star_bound},           {8, domino_snakes},
      {9, tiling_adjacency},   {10, multiplicity},     {11, branch_containment},  {12, bounded_or_evidence},
      {13, glued_copies},      {14, pullback}};
  return all;
}

// Runs one criterion, timing it; exceeding the time limit fails it.
inline Result run_criterion(const Criterion& c, const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = c.run(cfg);
  } catch (const std::exception& e) {
    r.id = c.id;
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) {
    r.passed = false;
    r.detail += "; exceeded time limit of " + detail::num(r.limit_seconds) + " s";
  }
  return r;
}

inline std::string format_line(const Result& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  [" << (r.id < 10 ? " " : "") << r.id << "] " << r.name << " ("
     << std::fixed;
  os.precision(2);
  os << r.seconds << " s): " << r.detail;
  return os.str();
}

}  // namespace utsp::acceptance
