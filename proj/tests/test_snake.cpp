#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "utsp/figures.hpp"
#include "utsp/random.hpp"
#include "utsp/snake.hpp"

using namespace utsp;

namespace {

MetricSpace line_space(const std::vector<double>& pos) {
  std::vector<std::vector<double>> rows(pos.size(), std::vector<double>(pos.size()));
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j) rows[i][j] = std::abs(pos[i] - pos[j]);
  return MetricSpace({}, rows);
}

}  // namespace

TEST(SnakeMetrics, PairHasInfiniteElongation) {
  const auto m = line_space({0, 2});
  const std::vector<std::size_t> pts{1, 0};
  const auto s = snake_metrics(m, TotalOrder::from_sequence({1, 0}), pts);
  EXPECT_DOUBLE_EQ(s.width, 0.0);
  EXPECT_DOUBLE_EQ(s.diameter, 2.0);
  EXPECT_EQ(s.elongation, kInfiniteElongation);
}

TEST(SnakeMetrics, ThreePointsOnALine) {
  const auto m = line_space({0, 1, 0.1});
  const std::vector<std::size_t> pts{0, 1, 2};
  const auto s = snake_metrics(m, TotalOrder::identity(3), pts);
  EXPECT_DOUBLE_EQ(s.diameter, 1.0);
  EXPECT_NEAR(s.width, 0.1, 1e-15);
  EXPECT_NEAR(s.elongation, 10.0, 1e-12);
}

TEST(SnakeMetrics, WidthIsSameParityMaximum) {
  const auto m = line_space({0, 5, 0.2, 5.1, 0.3});
  const std::vector<std::size_t> pts{0, 1, 2, 3, 4};
  const auto s = snake_metrics(m, TotalOrder::identity(5), pts);
  EXPECT_NEAR(s.width, 0.3, 1e-12);
  EXPECT_NEAR(s.diameter, 5.1, 1e-12);
}

TEST(SnakeMetrics, RejectsNonIncreasing) {
  const auto m = line_space({0, 1, 2});
  const std::vector<std::size_t> bad{2, 1}, one{0};
  EXPECT_THROW(snake_metrics(m, TotalOrder::identity(3), bad), invalid_input);
  EXPECT_THROW(snake_metrics(m, TotalOrder::identity(3), one), invalid_input);
}

TEST(SnakeRatioBound, Values) {
  EXPECT_DOUBLE_EQ(snake_ratio_bound(3, 1, 0), 3.0);
  EXPECT_NEAR(snake_ratio_bound(3, 1, 0.01), 2.94 / 1.02, 1e-12);
  EXPECT_NEAR(snake_ratio_bound(3, 1, 0.01), 2.8823529411764706, 1e-12);
  double prev = 0;
  for (double b : {0.1, 0.01, 0.001, 1e-6}) {
    const double v = snake_ratio_bound(4, 1, b);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_NEAR(prev, 4.0, 1e-4);
  EXPECT_THROW(snake_ratio_bound(3, 0, 0.1), invalid_input);
  EXPECT_THROW(snake_ratio_bound(1, 1, 0.1), invalid_input);
}

TEST(SnakeRatioBound, ExplicitSnakeSpaceExceedsBound) {
  // x1 < x2 < x3 < x4 at 0, 1, 0.01, 0.99: diameter 1, width 0.01.
  const auto m = line_space({0, 1, 0.01, 0.99});
  const auto t = TotalOrder::identity(4);
  const std::vector<std::size_t> pts{0, 1, 2, 3};
  const auto s = snake_metrics(m, t, pts);
  EXPECT_DOUBLE_EQ(s.diameter, 1.0);
  EXPECT_NEAR(s.width, 0.01, 1e-12);
  EXPECT_GE(order_ratio(m, t, 3).value, snake_ratio_bound(3, s.diameter, s.width) - 1e-12);
}

TEST(SnakeSearch, ExactMatchesNaiveEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 5 + trial % 11;
    const auto m = random_euclidean_space(n, rng, 1 + trial % 2);
    const auto t = random_order(n, rng);
    const std::size_t s = 3 + trial % 3;
    if (s > n) continue;
    const auto r = find_max_elongation_snake(m, t, s);
    EXPECT_EQ(r.mode, Mode::exact);
    EXPECT_NEAR(r.snake.elongation, oracle::max_elongation(m, t, s), 1e-9);
    const auto again = snake_metrics(m, t, r.snake.points);
    EXPECT_DOUBLE_EQ(again.diameter, r.snake.diameter);
    EXPECT_DOUBLE_EQ(again.width, r.snake.width);
    EXPECT_GE(r.snake.diameter, r.snake.width);
  }
}

TEST(SnakeSearch, AgreesWithOrderRatioBound) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 6 + trial % 5;
    const auto m = random_euclidean_space(n, rng);
    const auto t = random_order(n, rng);
    for (int s = 2; s <= 4; ++s) {
      const auto sn = find_max_elongation_snake(m, t, std::size_t(s) + 1).snake;
      EXPECT_GE(order_ratio(m, t, s).value, snake_ratio_bound(s, sn.diameter, sn.width) - 1e-9);
    }
  }
}

TEST(SnakeSearch, LineWithNaturalOrderHasNoElongatedTriples) {
  std::vector<double> pos;
  for (int i = 0; i < 60; ++i) pos.push_back(i * 0.37);
  const auto m = line_space(pos);
  const auto r = find_max_elongation_snake(m, TotalOrder::identity(60), 3);
  EXPECT_EQ(r.mode, Mode::exact);
  EXPECT_LE(r.snake.elongation, 1.0 + 1e-12);
}

TEST(SnakeSearch, CircleHasLongThinTriplesUnderAnyOrder) {
  std::mt19937_64 rng(33);
  const std::size_t n = 16;
  const double len = 2.0;
  const auto m = circle_space(n, len);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_order(n, rng);
    EXPECT_TRUE(find_snake_with_bounds(m, t, 3, len / 2 - len / n, len / n).has_value());
  }
}

TEST(SnakeSearch, TripodHasLongThinTriplesUnderAnyOrder) {
  std::mt19937_64 rng(34);
  const std::size_t n = 6;
  const double len = 1.5;
  const auto m = tripod_space(n, len);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_order(m.size(), rng);
    EXPECT_TRUE(find_snake_with_bounds(m, t, 3, len - len / n, len / n).has_value());
  }
}

TEST(SnakeSearch, BoundedSearchRespectsBounds) {
  std::mt19937_64 rng(35);
  const auto m = random_euclidean_space(20, rng);
  const auto t = random_order(20, rng);
  std::uint64_t examined = 0;
  const auto s = find_snake_with_bounds(m, t, 4, 0.5, 0.3, &examined);
  if (s) {
    EXPECT_GE(s->diameter, 0.5 - 1e-9);
    EXPECT_LE(s->width, 0.3 + 1e-9);
  }
  EXPECT_GT(examined, 0u);
  EXPECT_FALSE(find_snake_with_bounds(m, t, 4, 10.0, 0.0).has_value());
}

TEST(SnakeSearch, AnnealingIsReproducibleAndValid) {
  std::mt19937_64 rng(36);
  const auto m = random_euclidean_space(40, rng);
  const auto t = random_order(40, rng);
  SnakeSearchOptions o;
  o.exact_budget = 10;
  o.anneal_steps = 3000;
  o.seed = 5;
  const auto a = find_max_elongation_snake(m, t, 4, o);
  const auto b = find_max_elongation_snake(m, t, 4, o);
  EXPECT_EQ(a.mode, Mode::sampled);
  EXPECT_EQ(a.seed, 5u);
  EXPECT_EQ(a.snake.points, b.snake.points);
  const auto check = snake_metrics(m, t, a.snake.points);
  EXPECT_DOUBLE_EQ(check.elongation, a.snake.elongation);
  EXPECT_LE(a.snake.elongation, find_max_elongation_snake(m, t, 4).snake.elongation + 1e-12);
}

// A witness with OR(s) >= s(1 - eps), eps < 1/2, is a thin snake.
TEST(SnakeConverse, NearExtremalWitnessesAreThin) {
  std::mt19937_64 rng(37);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 6 + trial % 5;
    const auto m = random_euclidean_space(n, rng, 1);
    const auto t = random_order(n, rng);
    const auto prof = ratio_profile(m, t, 4);
    for (int s = 2; s <= 4; ++s) {
      const auto& r = prof[std::size_t(s) - 1];
      const double eps = 1.0 - r.value / s;
      if (!(eps < 0.5) || r.witness.size() != std::size_t(s) + 1) continue;
      const auto sn = snake_metrics(m, t, r.witness);
      EXPECT_LE(sn.width, 2.0 * s * s * eps * sn.diameter + 1e-9);
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Breakpoint, OnePointAndFiniteSpaces) {
  const MetricSpace one({}, {{0}});
  EXPECT_EQ(order_breakpoint(one, TotalOrder::identity(1)).br, 1);
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial;
    const auto m = random_euclidean_space(n, rng);
    const auto rep = order_breakpoint(m, random_order(n, rng));
    ASSERT_TRUE(rep.br.has_value());
    EXPECT_EQ(*rep.br, 2);
    EXPECT_EQ(rep.per_s.size(), 3u);
  }
}

TEST(Breakpoint, WindowNeverClaimsExponent) {
  std::mt19937_64 rng(39);
  const auto m = random_euclidean_space(9, rng);
  BreakpointOptions o;
  o.window = true;
  const auto rep = order_breakpoint(m, random_order(9, rng), o);
  EXPECT_FALSE(rep.br.has_value());
  EXPECT_EQ(rep.witness_snakes.size(), 3u);
  EXPECT_EQ(rep.exceeds_threshold.size(), 3u);
}
