#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "utsp/order_ratio.hpp"
#include "utsp/tiling.hpp"

using namespace utsp;

namespace {

Tile random_tile(std::mt19937_64& rng, std::size_t d, int kmin, int kmax, std::int64_t span) {
  Tile t{std::uniform_int_distribution<int>(kmin, kmax)(rng), {}};
  for (std::size_t i = 0; i < d; ++i) t.a.push_back(std::uniform_int_distribution<std::int64_t>(-span, span)(rng));
  return t;
}

}  // namespace

TEST(TileNeighbors, OneDimensionalExample) {
  const auto nb = tile_neighbors(Tile{0, {0}});
  const std::set<Tile> got(nb.begin(), nb.end());
  const std::set<Tile> want{{1, {0}}, {-1, {0}}, {-1, {1}}, {0, {-1}}, {0, {1}}};
  EXPECT_EQ(got, want);
}

TEST(TileNeighbors, DegreeAndUpDownInverse) {
  std::mt19937_64 rng(61);
  for (std::size_t d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 50; ++trial) {
      const auto t = random_tile(rng, d, -5, 5, 40);
      const auto nb = tile_neighbors(t);
      EXPECT_EQ(nb.size(), 2 * d + (std::size_t{1} << d) + 1);
      EXPECT_EQ(std::set<Tile>(nb.begin(), nb.end()).size(), nb.size());
      for (std::uint32_t e = 0; e < (1u << d); ++e) EXPECT_EQ(tile_up(tile_down(t, e)), t);
      // Adjacency is symmetric.
      for (const auto& u : nb) {
        const auto back = tile_neighbors(u);
        EXPECT_NE(std::find(back.begin(), back.end(), t), back.end());
      }
    }
}

TEST(TileDistance, MatchesArccoshOracle) {
  EXPECT_DOUBLE_EQ(tile_center_distance(Tile{2, {3}}, Tile{2, {3}}), 0.0);
  const double d01 = tile_center_distance(Tile{0, {0}}, Tile{0, {1}});
  EXPECT_NEAR(d01, std::acosh(1.0 + 1.0 / (2 * 1.5 * 1.5)), 1e-12);
  EXPECT_NEAR(d01, 0.6549003, 1e-6);
  std::mt19937_64 rng(62);
  for (std::size_t d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_tile(rng, d, -4, 4, 10), b = random_tile(rng, d, -4, 4, 10);
      const double v = tile_center_distance(a, b);
      EXPECT_NEAR(v, oracle::half_space_distance(tile_center(a), tile_center(b)), 1e-9 * std::max(1.0, v));
      EXPECT_NEAR(v, tile_center_distance(b, a), 1e-12);
    }
}

TEST(TileDistance, TriangleInequalityAndLevelShift) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto a = random_tile(rng, d, -3, 3, 8), b = random_tile(rng, d, -3, 3, 8), c = random_tile(rng, d, -3, 3, 8);
    EXPECT_LE(tile_center_distance(a, c), tile_center_distance(a, b) + tile_center_distance(b, c) + 1e-9);
    const Tile a2{a.k + 1, a.a}, b2{b.k + 1, b.a};
    EXPECT_NEAR(tile_center_distance(a, b), tile_center_distance(a2, b2), 1e-9);
  }
  // The parent edge has the same length everywhere.
  const double up = tile_center_distance(Tile{0, {0}}, Tile{1, {0}});
  for (int k = -3; k <= 3; ++k)
    for (std::int64_t a = -5; a <= 5; ++a) {
      const Tile t{k, {a}};
      EXPECT_NEAR(tile_center_distance(t, tile_up(t)), up, 1e-9);
    }
}

TEST(Window, CountsAndDegrees) {
  const auto w = build_window(1, 0, 3, {{0, 7}});
  EXPECT_EQ(w.size(), 15u);
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_LE(w.adjacency[i].size(), 5u);
    for (auto j : w.adjacency[i]) EXPECT_DOUBLE_EQ(w.metric(i, j), 1.0);
  }
  EXPECT_TRUE(validate_metric(w.metric).valid());
  const auto w2 = build_window(2, 0, 2, {{0, 3}, {0, 3}});
  EXPECT_EQ(w2.size(), 16u + 4u + 1u);
}

TEST(Window, RejectsBadRanges) {
  EXPECT_THROW(build_window(1, 2, 1, {{0, 1}}), invalid_input);
  EXPECT_THROW(build_window(1, 0, 1, {{3, 1}}), invalid_input);
  EXPECT_THROW(build_window(2, 0, 1, {{0, 1}}), invalid_input);
}

TEST(UpDownPath, ShapesOfSimpleCases) {
  const auto pure = standard_up_down_path(Tile{0, {5}}, Tile{2, {1}});
  EXPECT_EQ(pure.up_count, 2u);
  EXPECT_EQ(pure.horizontal_count, 0u);
  EXPECT_EQ(pure.down_count, 0u);
  const auto side = standard_up_down_path(Tile{0, {0}}, Tile{0, {1}});
  EXPECT_EQ(side.length(), 1u);
  EXPECT_EQ(side.horizontal_count, 1u);
}

TEST(UpDownPath, IsAValidWalkWithUpHorizontalDownShape) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto a = random_tile(rng, d, -3, 3, 30), b0 = random_tile(rng, d, -3, 3, 30);
    Tile b = b0;
    for (std::size_t i = 0; i < d; ++i)
      if ((b.a[i] < 0) != (a.a[i] < 0)) b.a[i] = -b.a[i] - 1;
    const auto p = standard_up_down_path(a, b);
    EXPECT_EQ(p.tiles.front(), a);
    EXPECT_EQ(p.tiles.back(), b);
    EXPECT_LE(p.horizontal_count, d);
    EXPECT_EQ(p.length(), p.up_count + p.horizontal_count + p.down_count);
    int phase = 0;
    for (std::size_t j = 0; j + 1 < p.tiles.size(); ++j) {
      const auto nb = tile_neighbors(p.tiles[j]);
      EXPECT_NE(std::find(nb.begin(), nb.end(), p.tiles[j + 1]), nb.end());
      const int dk = p.tiles[j + 1].k - p.tiles[j].k;
      const int step_phase = dk > 0 ? 0 : dk == 0 ? 1 : 2;
      EXPECT_GE(step_phase, phase);
      phase = step_phase;
    }
  }
}

TEST(UpDownPath, QuasiGeodesicFitIsReported) {
  const auto w = build_column_window(1, 5, 32);
  const auto f = fit_up_down_constants(w);
  EXPECT_GT(f.pairs, 0u);
  EXPECT_EQ(f.truncated, 0u);
  EXPECT_GE(f.slope_only, 1.0);
  EXPECT_LT(f.slope_only, 4.0);
}

TEST(InBranch, Basics) {
  const Tile t{1, {3}};
  EXPECT_TRUE(in_branch(t, t));
  EXPECT_FALSE(in_branch(tile_up(t), t));
  EXPECT_TRUE(in_branch(Tile{-2, {24}}, t));
  EXPECT_FALSE(in_branch(Tile{-2, {23}}, t));
}

TEST(InBranch, StandardPathsStayInside) {
  std::mt19937_64 rng(65);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 1 + trial % 2;
    const auto root = random_tile(rng, d, 0, 4, 6);
    auto member = [&] {
      Tile t = root;
      const int depth = std::uniform_int_distribution<int>(0, 5)(rng);
      for (int j = 0; j < depth; ++j) t = tile_down(t, std::uniform_int_distribution<std::uint32_t>(0, (1u << d) - 1)(rng));
      return t;
    };
    const auto a = member(), b = member();
    for (const auto& tl : standard_up_down_path(a, b).tiles) EXPECT_TRUE(in_branch(tl, root));
  }
}

TEST(BranchConvexOrder, ColumnIsLinearByLevel) {
  const auto w = build_window(1, 0, 4, {{0, 0}});
  const auto t = branch_convex_order(w);
  for (std::size_t r = 0; r + 1 < t.size(); ++r) EXPECT_GT(w.tiles[t.at(r)].k, w.tiles[t.at(r + 1)].k);
}

TEST(BranchConvexOrder, EveryBranchIsConvex) {
  for (std::size_t d = 1; d <= 2; ++d) {
    const auto w = build_window(d, 0, 3, std::vector<std::pair<std::int64_t, std::int64_t>>(d, {-4, 5}), false);
    const auto t = branch_convex_order(w);
    for (const auto& root : w.tiles) EXPECT_TRUE(is_convex(t, window_branch(w, root)));
  }
}

TEST(Multiplicity, SingletonIsEmptyAndRandomSubsetsHaveNoViolations) {
  const auto w = build_column_window(1, 6, 64, false);
  const auto t = branch_convex_order(w);
  const auto single = multiplicity_audit(w, t, {3});
  EXPECT_EQ(single.paths, 0u);
  EXPECT_TRUE(single.vertical.empty());
  std::mt19937_64 rng(66);
  std::size_t worst_vertex = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = detail::random_subset(rng, w.size(), 10);
    const auto a = multiplicity_audit(w, t, x);
    EXPECT_EQ(a.violations, 0u);
    EXPECT_EQ(a.truncated, 0u);
    EXPECT_LE(a.max_vertical_use, 1u);
    worst_vertex = std::max(worst_vertex, a.max_vertex_paths);
  }
  EXPECT_LE(worst_vertex, 10u);
}

TEST(Multiplicity, ArbitraryOrderCanViolate) {
  const auto w = build_column_window(1, 3, 8, false);
  // Alternate between two sibling subtrees.
  const auto l = *w.find(Tile{0, {0}}), r = *w.find(Tile{0, {7}}), l2 = *w.find(Tile{0, {1}}), r2 = *w.find(Tile{0, {6}});
  std::vector<std::size_t> seq{l, r, l2, r2};
  for (std::size_t i = 0; i < w.size(); ++i)
    if (std::find(seq.begin(), seq.end(), i) == seq.end()) seq.push_back(i);
  const auto t = TotalOrder::from_sequence(seq);
  EXPECT_GT(multiplicity_audit(w, t, {l, r, l2, r2}).violations, 0u);
}

TEST(Dot, HasRanksAndEdges) {
  const auto w = build_window(1, 0, 1, {{0, 1}});
  const auto dot = window_to_dot(w);
  EXPECT_NE(dot.find("rank=same"), std::string::npos);
  EXPECT_NE(dot.find("--"), std::string::npos);
}

TEST(UpDownPath, CrossesForestComponents) {
  const auto p = standard_up_down_path(Tile{0, {-1}}, Tile{0, {0}});
  EXPECT_EQ(p.up_count, 0u);
  EXPECT_EQ(p.horizontal_count, 1u);
  const auto q = standard_up_down_path(Tile{3, {-5}}, Tile{3, {6}});
  EXPECT_EQ(q.tiles.front(), (Tile{3, {-5}}));
  EXPECT_EQ(q.tiles.back(), (Tile{3, {6}}));
  for (std::size_t i = 1; i < q.tiles.size(); ++i) {
    const auto nb = tile_neighbors(q.tiles[i - 1]);
    EXPECT_NE(std::find(nb.begin(), nb.end(), q.tiles[i]), nb.end());
  }
}
