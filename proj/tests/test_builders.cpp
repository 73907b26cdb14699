#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "utsp/copies.hpp"
#include "utsp/figures.hpp"
#include "utsp/gluing.hpp"
#include "utsp/laminar.hpp"
#include "utsp/nets.hpp"
#include "utsp/order_ratio.hpp"
#include "utsp/random.hpp"
#include "utsp/square.hpp"
#include "utsp/star.hpp"
#include "utsp/tree.hpp"

using namespace utsp;

namespace {

std::vector<double> profile(const MetricSpace& m, const TotalOrder& t, int kmax, bool cyclic = false) {
  RatioOptions o;
  o.cyclic = cyclic;
  std::vector<double> v;
  for (const auto& r : ratio_profile(m, t, kmax, o)) v.push_back(r.value);
  return v;
}

}  // namespace

// ---- trees

TEST(RootedOrder, PathAndStar) {
  const RootedTree path({std::nullopt, 0, 1, 2}, {0, 1, 1, 1});
  EXPECT_EQ(rooted_order(path).sequence(), (std::vector<std::size_t>{0, 1, 2, 3}));
  RootedTree star({std::nullopt, 0, 0, 0}, {0, 1, 2, 3});
  star.set_children(0, {3, 1, 2});
  EXPECT_EQ(rooted_order(star).sequence(), (std::vector<std::size_t>{0, 3, 1, 2}));
}

TEST(RootedOrder, AscendantsPrecedeAndBranchesAreContiguous) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto tree = random_tree(1 + trial % 20, rng);
    const auto t = rooted_order(tree);
    EXPECT_TRUE(is_hierarchical(tree, t));
    for (std::size_t x = 0; x < tree.size(); ++x) {
      EXPECT_TRUE(is_convex(t, tree.branch(x)));
      for (std::size_t y = 0; y < tree.size(); ++y)
        if (tree.is_ascendant(x, y)) {
          EXPECT_TRUE(t.less(x, y));
        }
    }
  }
}

TEST(RootedOrder, ExactRatioAtMostTwo) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const auto tree = random_tree(4 + trial % 7, rng);
    for (double v : profile(tree.metric(), rooted_order(tree), int(tree.size()) - 1)) EXPECT_LE(v, 2.0 + 1e-9);
  }
}

TEST(IsHierarchical, DetectsInterleavedSiblings) {
  // Root 0 with children 1, 2; 1 has child 3.
  const RootedTree tree({std::nullopt, 0, 0, 1}, {0, 1, 1, 1});
  EXPECT_FALSE(is_hierarchical(tree, TotalOrder::from_sequence({0, 1, 2, 3})));
  EXPECT_TRUE(is_hierarchical(tree, TotalOrder::from_sequence({2, 3, 1, 0})));
  const RootedTree single({std::nullopt}, {0});
  EXPECT_TRUE(is_hierarchical(single, TotalOrder::identity(1)));
}

TEST(RootedTree, RejectsInvalidStructure) {
  EXPECT_THROW(RootedTree({std::nullopt, std::nullopt}, {0, 0}), invalid_input);
  EXPECT_THROW(RootedTree({std::nullopt, 2, 1}, {0, 1, 1}), invalid_input);
  EXPECT_THROW(RootedTree({std::nullopt, 0}, {0, -1}), invalid_input);
}

// ---- laminar families and the square

TEST(Laminar, TrivialFamilyKeepsEnumeration) {
  LaminarFamily f{5, {{}, {0, 1, 2, 3, 4}}};
  EXPECT_EQ(laminar_convex_order(f), TotalOrder::identity(5));
}

TEST(Laminar, NestedChainIsNested) {
  LaminarFamily f{7, {{1, 5, 6, 2}, {5, 6}, {0, 1, 2, 5, 6, 4}}};
  const auto t = laminar_convex_order(f);
  for (const auto& s : f.sets) EXPECT_TRUE(is_convex(t, s));
}

TEST(Laminar, RandomFamiliesBecomeConvex) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    // Intervals of a random tree's leaves form a laminar family.
    const auto tree = random_tree(3 + trial % 15, rng);
    LaminarFamily f{tree.size(), {}};
    for (std::size_t v = 0; v < tree.size(); ++v) f.sets.push_back(tree.branch(v));
    std::shuffle(f.sets.begin(), f.sets.end(), rng);
    const auto t = laminar_convex_order(f);
    for (const auto& s : f.sets) EXPECT_TRUE(is_convex(t, s));
  }
}

TEST(Laminar, CrossingPairIsNamed) {
  LaminarFamily f{4, {{0}, {0, 1}, {1, 2}}};
  try {
    laminar_convex_order(f);
    FAIL() << "expected invalid_input";
  } catch (const invalid_input& e) {
    EXPECT_NE(std::string(e.what()).find("sets 1 and 2"), std::string::npos) << e.what();
  }
}

TEST(Square, FirstLevelOrderAndKey) {
  const auto g = interleave_square_order(1);
  // (0,0) < (0,1/2) < (1/2,0) < (1/2,1/2)
  EXPECT_EQ(g.order.sequence(), (std::vector<std::size_t>{grid_index(0, 0, 1), grid_index(0, 1, 1),
                                                          grid_index(1, 0, 1), grid_index(1, 1, 1)}));
  EXPECT_DOUBLE_EQ(interleave_value(1, 1, 1), 0.75);
  EXPECT_DOUBLE_EQ(g.space(grid_index(0, 0, 1), grid_index(1, 1, 1)), std::sqrt(0.5));
}

TEST(Square, DyadicSquaresAreConvexAtEveryScale) {
  for (int m = 0; m <= 4; ++m) {
    const auto g = interleave_square_order(m);
    for (int level = 0; level <= m; ++level)
      for (const auto& s : dyadic_squares(m, level)) EXPECT_TRUE(is_convex(g.order, s));
  }
}

TEST(Square, LaminarOrderOfDyadicFamilyIsConvex) {
  const auto f = dyadic_family(2);
  const auto t = laminar_convex_order(f);
  for (const auto& s : f.sets) EXPECT_TRUE(is_convex(t, s));
}

TEST(Square, RefusesLargeExponents) {
  EXPECT_THROW(interleave_square_order(17), invalid_input);
  EXPECT_THROW(interleave_key(0, 0, 17), invalid_input);
  EXPECT_THROW(interleave_square_order(kMaxDenseSquareExponent + 1), budget_error);
  EXPECT_EQ(interleave_key(0xFFFF, 0, 16), 0xAAAAAAAAull);
}

// ---- figures

TEST(Figures, CircleAndTripodMetrics) {
  const auto c = circle_space(8, 2.0);
  EXPECT_DOUBLE_EQ(c(0, 4), 1.0);
  EXPECT_DOUBLE_EQ(c(1, 7), 0.5);
  EXPECT_TRUE(validate_metric(c).valid());
  const auto t = tripod_space(4, 2.0);
  EXPECT_EQ(t.size(), 13u);
  EXPECT_DOUBLE_EQ(t(0, 4), 2.0);
  EXPECT_DOUBLE_EQ(t(4, 8), 4.0);
  EXPECT_DOUBLE_EQ(t(1, 4), 1.5);
  EXPECT_TRUE(validate_metric(t).valid());
}

TEST(Figures, DominoDiscretization) {
  const auto d = domino_space(20.0);
  EXPECT_EQ(d.space.size(), 6u + 7u * 19u);
  EXPECT_NEAR(d.space(0, 5), 3.0, 1e-9);
  EXPECT_NEAR(d.space(1, 4), 1.0, 1e-9);
  EXPECT_NEAR(d.space(d.edge_points[0][0], 0), 0.05, 1e-12);
  EXPECT_NEAR(d.space.separation(), 0.05, 1e-12);
}

// ---- star orders

TEST(Star, SingleEdgeFigures) {
  const Graph g(2, {{0, 1, 1.0}}, {"A", "B"});
  const auto [s, t] = star_order(g, TotalOrder::identity(2), 2);
  // Points at 1/4, 1/2 (midpoint, owned by A), 3/4.
  ASSERT_EQ(s.space.size(), 5u);
  EXPECT_EQ(t.at(2), 0u);  // A last in its figure
  EXPECT_EQ(t.at(4), 1u);
  EXPECT_EQ(star_figure(s, 0).size(), 3u);
  EXPECT_EQ(star_figure(s, 1).size(), 2u);
  for (std::size_t p : star_figure(s, 0))
    for (std::size_t q : star_figure(s, 1)) EXPECT_TRUE(t.less(p, q));
  // Within A's half the points go outward from A toward the midpoint.
  EXPECT_LT(s.space(t.at(0), 0), s.space(t.at(1), 0));
  // Swapping the vertex order moves the midpoint to B.
  const auto [s2, t2] = star_order(g, TotalOrder::from_sequence({1, 0}), 2);
  EXPECT_EQ(star_figure(s2, 1).size(), 3u);
}

TEST(Star, FiguresAndHalfEdgesAreConvex) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = random_connected_graph(2 + trial % 5, 2, rng);
    const auto tv = random_order(g.vertex_count, rng);
    const auto [s, t] = star_order(g, tv, 1 + trial % 3);
    std::set<std::size_t> seen;
    for (std::size_t v = 0; v < g.vertex_count; ++v) {
      const auto fig = star_figure(s, v);
      EXPECT_TRUE(is_convex(t, fig));
      seen.insert(fig.begin(), fig.end());
      for (const auto& [w, half] : s.half_edges[v]) EXPECT_TRUE(is_convex(t, half));
    }
    EXPECT_EQ(seen.size(), s.space.size());
    EXPECT_EQ(s.space.size(), g.vertex_count + g.edges.size() * (2 * std::size_t(s.m) - 1));
  }
}

TEST(Star, RejectsNonUnitEdges) {
  EXPECT_THROW(star_order(Graph(2, {{0, 1, 2.0}}), TotalOrder::identity(2), 1), invalid_input);
}

// ---- gluings

TEST(Gluing, SingleComponentIsCyclicShift) {
  std::mt19937_64 rng(45);
  const auto sp = random_euclidean_space(6, rng);
  const auto t = random_order(6, rng);
  const AcyclicGluing g({{sp, t}}, {});
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(clockwise_order(g, 3), cyclic_shift(t, 3));
}

TEST(Gluing, FigureEightFirstVisit) {
  // Two 4-point circles glued at their point 0.
  const auto c = circle_space(4, 1.0);
  const AcyclicGluing g({{c, TotalOrder::identity(4)}, {c, TotalOrder::identity(4)}}, {{{0, 0}, {1, 0}}});
  EXPECT_EQ(g.size(), 7u);
  const auto t = clockwise_order(g, 0);
  std::vector<std::size_t> expect{0};
  for (std::size_t p = 1; p < 4; ++p) expect.push_back(g.global(0, p));
  for (std::size_t p = 1; p < 4; ++p) expect.push_back(g.global(1, p));
  EXPECT_EQ(t.sequence(), expect);
  const auto m = g.metric();
  EXPECT_DOUBLE_EQ(m(g.global(0, 2), g.global(1, 2)), 1.0);
}

TEST(Gluing, JointsRecurseBeforeResuming) {
  // Path component 0: a-b-c; component 1 glued at b.
  const MetricSpace path({}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  const AcyclicGluing g({{path, TotalOrder::identity(3)}, {path, TotalOrder::identity(3)}}, {{{0, 1}, {1, 0}}});
  const auto t = clockwise_order(g, g.global(0, 0));
  EXPECT_EQ(t.sequence(), (std::vector<std::size_t>{g.global(0, 0), g.global(0, 1), g.global(1, 1), g.global(1, 2),
                                                    g.global(0, 2)}));
}

TEST(Gluing, RestrictionsAreCyclicShifts) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_gluing({std::size_t(2 + trial % 3), 3, std::size_t(1 + trial % 4)}, rng);
    const auto t = clockwise_order(g, trial % g.size());
    for (std::size_t c = 0; c < g.component_count(); ++c) {
      const auto& comp = g.component(c);
      std::vector<std::size_t> restricted;
      for (std::size_t r = 0; r < t.size(); ++r)
        for (auto [cc, p] : g.occurrences(t.at(r)))
          if (cc == c) restricted.push_back(p);
      const auto shifted = cyclic_shift(comp.order, restricted.front());
      EXPECT_EQ(restricted, shifted.sequence());
    }
  }
}

TEST(Gluing, CyclicRatioEqualsComponentMaximum) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    const auto g = random_gluing({3, std::size_t(2 + trial % 3), 3}, rng);
    const auto m = g.metric();
    const auto t = clockwise_order(g, 0);
    const int kmax = int(m.size()) - 1;
    auto whole = profile(m, t, kmax, true);
    std::vector<double> comp_max(std::size_t(kmax), 1.0);
    for (std::size_t c = 0; c < g.component_count(); ++c) {
      const auto v = profile(g.component(c).space, g.component(c).order, kmax, true);
      for (int k = 0; k < kmax; ++k) comp_max[k] = std::max(comp_max[k], v[k]);
    }
    for (int k = 0; k < kmax; ++k) EXPECT_NEAR(whole[k], comp_max[k], 1e-9) << "k=" << k + 1;
  }
}

TEST(Gluing, RejectsCyclesAndDisconnection) {
  const MetricSpace two({}, {{0, 1}, {1, 0}});
  const Component c{two, TotalOrder::identity(2)};
  EXPECT_THROW(AcyclicGluing({c, c}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}}), invalid_input);
  EXPECT_THROW(AcyclicGluing({c, c}, {}), invalid_input);
  EXPECT_THROW(AcyclicGluing({c, c}, {{{0, 0}, {0, 1}}}), invalid_input);
}

// ---- glued copies

TEST(Copies, OneCopyIsUnchanged) {
  std::mt19937_64 rng(48);
  const auto m = random_euclidean_space(5, rng);
  const auto t = random_order(5, rng);
  const auto g = glue_copies(m, t, {1}, 1);
  ASSERT_EQ(g.space.size(), 5u);
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) EXPECT_DOUBLE_EQ(g.space(a, b), m(t.at(a), t.at(b)));
}

TEST(Copies, PathGluedAtEndsMakesACycle) {
  std::vector<std::vector<double>> rows(5, std::vector<double>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) rows[i][j] = std::abs(i - j);
  const MetricSpace path({}, rows);
  const auto t = TotalOrder::identity(5);
  const double c = profile(path, t, 4).back();
  EXPECT_NEAR(c, 1.0, 1e-12);
  const auto g = glue_copies(path, t, {0, 4}, 2);
  EXPECT_EQ(g.space.size(), 8u);
  EXPECT_TRUE(validate_metric(g.space).valid());
  // The cycle has length 8: midpoints of the two copies are 4 apart.
  EXPECT_DOUBLE_EQ(g.space(2, 5 + 1), 4.0);
  for (double v : profile(g.space, g.order, 7)) EXPECT_LE(v, 2 * c + 1 + 1e-9);
}

TEST(Copies, OrderRules) {
  std::mt19937_64 rng(49);
  const auto m = random_euclidean_space(6, rng);
  const auto t = random_order(6, rng);
  const auto g = glue_copies(m, t, {0, 2}, 3);
  EXPECT_EQ(g.space.size(), 6u + 2u * 4u);
  for (std::size_t a = 0; a < g.space.size(); ++a)
    for (std::size_t b = 0; b < g.space.size(); ++b) {
      if (a == b) continue;
      if (g.copy_of[a] == 0 && g.copy_of[b] != 0) {
        EXPECT_TRUE(g.order.less(a, b));
      }
      if (g.copy_of[a] < g.copy_of[b]) {
        EXPECT_TRUE(g.order.less(a, b));
      }
      if (g.copy_of[a] == g.copy_of[b] && t.less(g.point_of[a], g.point_of[b])) {
        EXPECT_TRUE(g.order.less(a, b));
      }
    }
  EXPECT_TRUE(validate_metric(g.space).valid());
  EXPECT_THROW(glue_copies(m, t, {}, 2), invalid_input);
}

// ---- nets

TEST(Nets, GreedyNetIsSeparatedAndCovering) {
  std::mt19937_64 rng(50);
  const auto m = random_euclidean_space(40, rng);
  for (double eps : {0.1, 0.25, 0.5}) {
    const auto net = greedy_separated_net(m, eps);
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = i + 1; j < net.size(); ++j) EXPECT_GE(m(net[i], net[j]), eps);
    const auto phi = nearest_point_map(m, net);
    for (std::size_t p = 0; p < m.size(); ++p) EXPECT_LT(m(p, net[phi[p]]), eps);
  }
}

TEST(Nets, PullbackBoundHolds) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const auto n = random_euclidean_space(9, rng);
    const auto net = greedy_separated_net(n, 0.3);
    const auto m = n.subspace(net);
    const auto phi = nearest_point_map(n, net);
    const auto q = measure_quasi_isometry(n, m, phi);
    const auto tm = random_order(m.size(), rng);
    const auto tn = pullback_order(phi, tm, random_order(n.size(), rng));
    const auto vn = profile(n, tn, 8), vm = profile(m, tm, 8);
    for (std::size_t k = 0; k < vn.size(); ++k) EXPECT_LE(vn[k], q.k() * vm[k] + 1e-9);
  }
}
