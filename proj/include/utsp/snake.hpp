#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"
#include "utsp/order_ratio.hpp"

namespace utsp {

// Elongation of a zero-width snake; compares above every finite value.
inline constexpr double kInfiniteElongation = std::numeric_limits<double>::infinity();

// A T-increasing point sequence together with its diameter, width
// (largest distance between two points at positions of equal parity) and
// elongation diameter/width.
struct Snake {
  std::vector<std::size_t> points;
  double diameter = 0.0;
  double width = 0.0;
  double elongation = kInfiniteElongation;

  std::size_t size() const noexcept { return points.size(); }
};

namespace detail {

inline Snake measure_snake(const MetricSpace& m, std::vector<std::size_t> points) {
  Snake s;
  s.points = std::move(points);
  for (std::size_t a = 0; a < s.points.size(); ++a) {
    for (std::size_t b = a + 1; b < s.points.size(); ++b) {
      const double d = m(s.points[a], s.points[b]);
      s.diameter = std::max(s.diameter, d);
      if ((b - a) % 2 == 0) s.width = std::max(s.width, d);
    }
  }
  s.elongation = s.width > 0.0 ? s.diameter / s.width : kInfiniteElongation;
  return s;
}

inline bool better_snake(double elong, double diam, const Snake& incumbent, bool have) {
  if (!have) return true;
  if (elong > incumbent.elongation) return true;
  return elong == incumbent.elongation && diam > incumbent.diameter;
}

}  // namespace detail

inline Snake snake_metrics(const MetricSpace& m, const TotalOrder& t, std::span<const std::size_t> points) {
  check_order(m, t);
  if (points.size() < 2) throw invalid_input("a snake needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] >= m.size()) throw invalid_input("snake point out of range");
    if (i > 0 && !(t.rank(points[i - 1]) < t.rank(points[i])))
      throw invalid_input("snake points must be strictly increasing in the order");
  }
  return detail::measure_snake(m, std::vector<std::size_t>(points.begin(), points.end()));
}

// Lower bound on OR_{M,T}(s) certified by a snake on s+1 points of diameter
// a and width b: s(a-2b)/(a+(s-1)b).
inline double snake_ratio_bound(int s, double a, double b) {
  if (!(a > 0.0)) throw invalid_input("snake diameter must be positive");
  if (b < 0.0) throw invalid_input("snake width must be nonnegative");
  if (s < 2) throw invalid_input("snake ratio bound needs s >= 2");
  return s * (a - 2.0 * b) / (a + (s - 1) * b);
}

struct SnakeSearchOptions {
  double exact_budget = 5e7;       // subsequences; above it the search anneals
  std::size_t anneal_steps = 100000;
  double initial_temperature = 1.0;
  double final_temperature = 1e-3;
  std::uint64_t seed = 1;
  bool force_exact = false;
};

struct SnakeSearchResult {
  Snake snake;
  Mode mode = Mode::exact;
  std::uint64_t examined = 0;
  std::uint64_t seed = 0;
};

namespace detail {

class SnakeEnumerator {
 public:
  SnakeEnumerator(const MetricSpace& m, const TotalOrder& t, std::size_t s)
      : m_(m), t_(t), s_(s), n_(m.size()), ranks_(s), global_diam_(m.diameter()) {}

  // Exhaustive maximum elongation with width-based pruning.
  void maximize() { descend(0, 0, 0.0, 0.0); }

  // First sequence (lexicographic in ranks) meeting both bounds.
  bool find_bounded(double min_diameter, double max_width) {
    min_diam_ = min_diameter;
    max_width_ = max_width;
    bounded_ = true;
    return descend(0, 0, 0.0, 0.0);
  }

  const Snake& best() const { return best_; }
  bool have() const { return have_; }
  std::uint64_t examined() const { return examined_; }

 private:
  double d(std::size_t ra, std::size_t rb) const { return m_(t_.at(ra), t_.at(rb)); }

  bool descend(std::size_t pos, std::size_t start, double diam, double width) {
    for (std::size_t r = start; r + (s_ - pos) <= n_; ++r) {
      double nd = diam, nw = width;
      for (std::size_t q = 0; q < pos; ++q) {
        const double v = d(ranks_[q], r);
        nd = std::max(nd, v);
        if ((pos - q) % 2 == 0) nw = std::max(nw, v);
      }
      if (bounded_) {
        if (nw > max_width_ + kTolerance) continue;
      } else if (have_ && nw > 0.0 && global_diam_ / nw < best_.elongation) {
        continue;
      }
      ranks_[pos] = r;
      if (pos + 1 == s_) {
        ++examined_;
        const double e = nw > 0.0 ? nd / nw : kInfiniteElongation;
        if (bounded_) {
          if (nd >= min_diam_ - kTolerance) {
            record(nd, nw, e);
            return true;
          }
        } else if (better_snake(e, nd, best_, have_)) {
          record(nd, nw, e);
        }
      } else if (descend(pos + 1, r + 1, nd, nw)) {
        return true;
      }
    }
    return false;
  }

  void record(double nd, double nw, double e) {
    best_.points.clear();
    for (std::size_t r : ranks_) best_.points.push_back(t_.at(r));
    best_.diameter = nd;
    best_.width = nw;
    best_.elongation = e;
    have_ = true;
  }

  const MetricSpace& m_;
  const TotalOrder& t_;
  std::size_t s_, n_;
  std::vector<std::size_t> ranks_;
  double global_diam_;
  Snake best_;
  bool have_ = false;
  bool bounded_ = false;
  double min_diam_ = 0.0, max_width_ = 0.0;
  std::uint64_t examined_ = 0;
};

}  // namespace detail

// Snake on s points of maximal elongation (ties broken by larger diameter).
// Exhaustive when C(n,s) is within budget, otherwise simulated annealing
// over rank-compatible single-point replacements.
inline SnakeSearchResult find_max_elongation_snake(const MetricSpace& m, const TotalOrder& t, std::size_t s,
                                                   const SnakeSearchOptions& options = {}) {
  check_order(m, t);
  if (s < 2) throw invalid_input("snake search needs s >= 2");
  if (s > m.size()) throw invalid_input("snake longer than the space");
  SnakeSearchResult res;
  if (options.force_exact || detail::binomial(m.size(), s) <= options.exact_budget) {
    detail::SnakeEnumerator e(m, t, s);
    e.maximize();
    res.snake = e.best();
    res.examined = e.examined();
    res.mode = Mode::exact;
    return res;
  }
  res.mode = Mode::sampled;
  res.seed = options.seed;
  const std::size_t n = m.size();
  std::mt19937_64 rng(options.seed);
  auto ranks = detail::random_subset(rng, n, s);
  auto measure = [&](const std::vector<std::size_t>& rk) {
    std::vector<std::size_t> pts;
    pts.reserve(rk.size());
    for (std::size_t r : rk) pts.push_back(t.at(r));
    return detail::measure_snake(m, std::move(pts));
  };
  auto energy = [](const Snake& sn) {
    return std::isinf(sn.elongation) ? std::numeric_limits<double>::max() : std::log(sn.elongation);
  };
  Snake cur = measure(ranks);
  Snake best = cur;
  std::uniform_int_distribution<std::size_t> slot(0, s - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ratio = options.anneal_steps > 1
                           ? std::pow(options.final_temperature / options.initial_temperature,
                                      1.0 / double(options.anneal_steps - 1))
                           : 1.0;
  double temp = options.initial_temperature;
  for (std::size_t step = 0; step < options.anneal_steps; ++step, temp *= ratio) {
    const std::size_t i = slot(rng);
    const std::size_t lo = i == 0 ? 0 : ranks[i - 1] + 1;
    const std::size_t hi = i + 1 == s ? n - 1 : ranks[i + 1] - 1;
    if (lo > hi) continue;
    const std::size_t old = ranks[i];
    ranks[i] = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    if (ranks[i] == old) continue;
    Snake cand = measure(ranks);
    ++res.examined;
    const double delta = energy(cand) - energy(cur);
    if (delta >= 0.0 || unit(rng) < std::exp(delta / temp)) {
      cur = std::move(cand);
      if (detail::better_snake(cur.elongation, cur.diameter, best, true)) best = cur;
    } else {
      ranks[i] = old;
    }
  }
  res.snake = std::move(best);
  return res;
}

// Exhaustive search for a snake on s points with diameter >= min_diameter
// and width <= max_width. Returns the first one in rank-lexicographic order.
inline std::optional<Snake> find_snake_with_bounds(const MetricSpace& m, const TotalOrder& t, std::size_t s,
                                                   double min_diameter, double max_width,
                                                   std::uint64_t* examined = nullptr) {
  check_order(m, t);
  if (s < 2) throw invalid_input("snake search needs s >= 2");
  if (s > m.size()) return std::nullopt;
  detail::SnakeEnumerator e(m, t, s);
  const bool found = e.find_bounded(min_diameter, max_width);
  if (examined) *examined = e.examined();
  if (!found) return std::nullopt;
  return e.best();
}

// ---------------------------------------------------------------------------
// Order breakpoint

struct BreakpointOptions {
  int max_s = 4;
  double elongation_threshold = 12.0;  // configurable, see snake evidence below
  bool window = false;  // space is a finite window of an infinite space
  RatioOptions ratio{};
  SnakeSearchOptions snake{};
};

struct BreakpointReport {
  std::optional<int> br;               // nullopt: not determined
  std::vector<int> s_values;           // tested s
  std::vector<double> per_s;           // OR_{M,T}(s)
  std::vector<Snake> witness_snakes;   // best snake on s+1 points per tested s
  std::vector<bool> exceeds_threshold; // snake elongation above the threshold
  Mode mode = Mode::exact;
};

// Br(M,T): the smallest s with OR_{M,T}(s) < s. For a window of an infinite
// space no exponent is claimed; only per-s values and snake evidence.
inline BreakpointReport order_breakpoint(const MetricSpace& m, const TotalOrder& t,
                                         const BreakpointOptions& options = {}) {
  check_order(m, t);
  BreakpointReport rep;
  rep.mode = options.ratio.mode;
  if (m.size() <= 1) {
    rep.br = 1;
    return rep;
  }
  if (options.max_s < 2) throw invalid_input("max_s must be at least 2");
  const auto profile = ratio_profile(m, t, options.max_s, [&] {
    RatioOptions o = options.ratio;
    o.cyclic = false;
    return o;
  }());
  for (int s = 2; s <= options.max_s; ++s) {
    const double v = profile[static_cast<std::size_t>(s - 1)].value;
    rep.s_values.push_back(s);
    rep.per_s.push_back(v);
    if (static_cast<std::size_t>(s) + 1 <= m.size()) {
      auto found = find_max_elongation_snake(m, t, static_cast<std::size_t>(s) + 1, options.snake);
      rep.exceeds_threshold.push_back(found.snake.elongation > options.elongation_threshold);
      rep.witness_snakes.push_back(std::move(found.snake));
    }
    if (!rep.br && !options.window && options.ratio.mode == Mode::exact && v < s - kBreakpointMargin) rep.br = s;
  }
  return rep;
}

}  // namespace utsp
