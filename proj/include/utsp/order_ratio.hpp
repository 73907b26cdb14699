#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"
#include "utsp/parallel.hpp"

namespace utsp {

enum class Mode { exact, sampled };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "sampled"; }

// Margin used when testing the strict inequality OR(s) < s.
inline constexpr double kBreakpointMargin = 1e-6;

// Default cap on exact work, in elementary DP relaxations.
inline constexpr double kDefaultExactBudget = 3e10;

struct SampledParams {
  std::size_t subsets = 10000;  // random subsets drawn over all sizes
  std::size_t restarts = 100;   // hill-climbing restarts
  std::size_t steps = 200;      // swap proposals per restart
  std::uint64_t seed = 1;
};

struct RatioOptions {
  Mode mode = Mode::exact;
  bool cyclic = false;
  double budget = kDefaultExactBudget;
  SampledParams sampled{};
  unsigned workers = 0;  // 0: UTSP_WORKERS or hardware concurrency
};

// Value of OR_{M,T}(k) (or OR°) with the subset that attains it.
struct ORReport {
  int k = 1;
  double value = 1.0;
  std::vector<std::size_t> witness;  // point indices, increasing in T
  Mode mode = Mode::exact;
  bool cyclic = false;
  std::uint64_t subsets_examined = 0;
  std::uint64_t seed = 0;  // sampled mode only
};

namespace detail {

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

inline double subset_count(std::size_t n, std::size_t max_size) {
  double c = 0.0;
  for (std::size_t m = 2; m <= max_size; ++m) c += binomial(n, m);
  return c;
}

// Work estimate for the whole-space subset table.
inline double table_cost(std::size_t n, std::size_t max_size) {
  if (n > kExactCap) return std::numeric_limits<double>::infinity();
  double c = std::ldexp(1.0, static_cast<int>(n));
  for (std::size_t m = 1; m < max_size; ++m) c += binomial(n, m) * double(m) * double(n - m);
  return c;
}

// Work estimate for the incremental depth-first enumeration.
inline double dfs_cost(std::size_t n, std::size_t max_size) {
  if (max_size > kExactCap) return std::numeric_limits<double>::infinity();
  double c = 0.0;
  for (std::size_t m = 1; m <= max_size; ++m) c += binomial(n, m) * std::ldexp(1.0, int(m) - 1) * double(m * m);
  return c;
}

// Distances relabelled by rank: ranked(a, b) = d(T.at(a), T.at(b)).
inline std::vector<double> ranked_distances(const MetricSpace& m, const TotalOrder& t) {
  const std::size_t n = m.size();
  std::vector<double> d(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) d[a * n + b] = m(t.at(a), t.at(b));
  return d;
}

// Best ratio per subset size, with the attaining subset as a rank list.
struct SizeBest {
  double value = 0.0;
  std::vector<std::size_t> ranks;
  bool set = false;
};

inline bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void offer(SizeBest& slot, double value, const std::vector<std::size_t>& ranks) {
  if (!slot.set || value > slot.value || (value == slot.value && lex_less(ranks, slot.ranks))) {
    slot.value = value;
    slot.ranks = ranks;
    slot.set = true;
  }
}

// Shortest open paths / closed tours for every subset of a space of at most
// kExactCap points. Masks index points of the distance matrix `d`.
struct SubsetOptima {
  std::size_t n = 0;
  std::vector<double> open;    // open[mask]
  std::vector<double> closed;  // closed[mask]

  SubsetOptima(std::span<const double> d, std::size_t n_points, std::size_t max_size, bool want_open,
               bool want_closed)
      : n(n_points) {
    const std::size_t masks = std::size_t{1} << n;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (want_open) {
      open.assign(masks, 0.0);
      std::vector<double> dp(masks * n, inf);
      for (std::size_t j = 0; j < n; ++j) dp[(std::size_t{1} << j) * n + j] = 0.0;
      for (std::size_t mask = 1; mask < masks; ++mask) {
        const int pc = std::popcount(mask);
        if (static_cast<std::size_t>(pc) > max_size) continue;
        const double* row = dp.data() + mask * n;
        double best = inf;
        for (std::size_t j = 0; j < n; ++j) best = std::min(best, row[j]);
        open[mask] = pc == 1 ? 0.0 : best;
        if (static_cast<std::size_t>(pc) == max_size) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const double v = row[j];
          if (v == inf) continue;
          const double* dj = d.data() + j * n;
          for (std::size_t b = 0; b < n; ++b) {
            if (mask >> b & 1) continue;
            double& slot = dp[(mask | (std::size_t{1} << b)) * n + b];
            slot = std::min(slot, v + dj[b]);
          }
        }
      }
    }
    if (want_closed) {
      closed.assign(masks, 0.0);
      // Paths start at the lowest point of the mask.
      std::vector<double> dp(masks * n, inf);
      for (std::size_t j = 0; j < n; ++j) dp[(std::size_t{1} << j) * n + j] = 0.0;
      for (std::size_t mask = 1; mask < masks; ++mask) {
        const int pc = std::popcount(mask);
        if (static_cast<std::size_t>(pc) > max_size) continue;
        const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
        const double* row = dp.data() + mask * n;
        if (pc >= 2) {
          double best = inf;
          for (std::size_t j = 0; j < n; ++j)
            if (row[j] != inf) best = std::min(best, row[j] + d[j * n + low]);
          closed[mask] = best;
        }
        if (static_cast<std::size_t>(pc) == max_size) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const double v = row[j];
          if (v == inf) continue;
          const double* dj = d.data() + j * n;
          for (std::size_t b = low + 1; b < n; ++b) {
            if (mask >> b & 1) continue;
            double& slot = dp[(mask | (std::size_t{1} << b)) * n + b];
            slot = std::min(slot, v + dj[b]);
          }
        }
      }
    }
  }
};

inline std::vector<std::size_t> mask_bits(std::size_t mask) {
  std::vector<std::size_t> out;
  while (mask) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

// Exact per-size maxima using the subset table in rank space.
inline std::vector<SizeBest> exact_by_table(std::span<const double> dr, std::size_t n, std::size_t max_size,
                                            bool cyclic, std::uint64_t& examined) {
  SubsetOptima opt(dr, n, max_size, !cyclic, cyclic);
  const std::size_t masks = std::size_t{1} << n;
  std::vector<double> lt(masks, 0.0);
  std::vector<double> best(max_size + 1, 0.0);
  std::vector<std::size_t> arg(max_size + 1, 0);
  std::vector<char> set(max_size + 1, 0);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    const int pc = std::popcount(mask);
    const std::size_t hi = static_cast<std::size_t>(std::bit_width(mask) - 1);
    const std::size_t rest = mask ^ (std::size_t{1} << hi);
    if (rest == 0) continue;
    const std::size_t prev = static_cast<std::size_t>(std::bit_width(rest) - 1);
    lt[mask] = lt[rest] + dr[prev * n + hi];
    if (static_cast<std::size_t>(pc) > max_size) continue;
    ++examined;
    double ratio;
    if (cyclic) {
      const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
      ratio = (lt[mask] + dr[hi * n + low]) / opt.closed[mask];
    } else {
      ratio = lt[mask] / opt.open[mask];
    }
    if (!set[pc] || ratio > best[pc]) {
      best[pc] = ratio;
      arg[pc] = mask;
      set[pc] = 1;
    }
  }
  std::vector<SizeBest> out(max_size + 1);
  for (std::size_t s = 2; s <= max_size; ++s)
    if (set[s]) out[s] = SizeBest{best[s], mask_bits(arg[s]), true};
  return out;
}

// Depth-first subset enumeration in rank order with an incremental
// Held-Karp table over the chosen positions.
class DfsEnumerator {
 public:
  DfsEnumerator(std::span<const double> dr, std::size_t n, std::size_t max_size, bool cyclic)
      : dr_(dr), n_(n), k_(max_size), cyclic_(cyclic), idx_(max_size), best_(max_size + 1) {
    const std::size_t masks = std::size_t{1} << k_;
    dp_.assign(masks * k_, std::numeric_limits<double>::infinity());
  }

  void run_first(std::size_t first) { step(0, first, first + 1, 0.0); }

  std::vector<SizeBest>& best() { return best_; }
  std::uint64_t examined() const { return examined_; }

 private:
  double dist(std::size_t pa, std::size_t pb) const { return dr_[idx_[pa] * n_ + idx_[pb]]; }

  void place(std::size_t m, std::size_t r, double lt_prev) {
    idx_[m] = r;
    const std::size_t bit = std::size_t{1} << m;
    const std::size_t k = k_;
    constexpr double inf = std::numeric_limits<double>::infinity();
    double lopt = 0.0;
    if (!cyclic_) {
      for (std::size_t sub = 0; sub < bit; ++sub) {
        const std::size_t mask = sub | bit;
        double* row = dp_.data() + mask * k;
        if (sub == 0) {
          row[m] = 0.0;
          continue;
        }
        for (std::size_t j = 0; j <= m; ++j) {
          if (!(mask >> j & 1)) continue;
          const std::size_t prev = mask ^ (std::size_t{1} << j);
          const double* prow = dp_.data() + prev * k;
          double b = inf;
          for (std::size_t i = 0; i <= m; ++i)
            if (prev >> i & 1) b = std::min(b, prow[i] + dist(i, j));
          row[j] = b;
        }
      }
      const double* full = dp_.data() + ((bit << 1) - 1) * k;
      lopt = inf;
      for (std::size_t j = 0; j <= m; ++j) lopt = std::min(lopt, full[j]);
    } else {
      // Paths start at position 0; masks always contain bit 0.
      if (m == 0) {
        dp_[1 * k + 0] = 0.0;
      } else {
        const std::size_t inner = std::size_t{1} << (m - 1);
        for (std::size_t s = 0; s < inner; ++s) {
          const std::size_t mask = 1 | (s << 1) | bit;
          double* row = dp_.data() + mask * k;
          for (std::size_t j = 1; j <= m; ++j) {
            if (!(mask >> j & 1)) continue;
            const std::size_t prev = mask ^ (std::size_t{1} << j);
            const double* prow = dp_.data() + prev * k;
            double b = inf;
            if (prev == 1) {
              b = dist(0, j);
            } else {
              for (std::size_t i = 1; i <= m; ++i)
                if (prev >> i & 1) b = std::min(b, prow[i] + dist(i, j));
            }
            row[j] = b;
          }
        }
        const double* full = dp_.data() + ((bit << 1) - 1) * k;
        lopt = inf;
        for (std::size_t j = 1; j <= m; ++j) lopt = std::min(lopt, full[j] + dist(j, 0));
      }
    }
    const double lt = m == 0 ? 0.0 : lt_prev + dist(m - 1, m);
    lt_cur_ = lt;
    if (m >= 1) {
      ++examined_;
      const double ratio = cyclic_ ? (lt + dist(m, 0)) / lopt : lt / lopt;
      SizeBest& slot = best_[m + 1];
      if (!slot.set || ratio > slot.value) {
        slot.value = ratio;
        slot.ranks.assign(idx_.begin(), idx_.begin() + static_cast<std::ptrdiff_t>(m + 1));
        slot.set = true;
      }
    }
  }

  void step(std::size_t m, std::size_t r, std::size_t next, double lt_prev) {
    place(m, r, lt_prev);
    const double lt = lt_cur_;
    if (m + 1 >= k_) return;
    for (std::size_t q = next; q < n_; ++q) step(m + 1, q, q + 1, lt);
  }

  std::span<const double> dr_;
  std::size_t n_, k_;
  bool cyclic_;
  std::vector<std::size_t> idx_;
  std::vector<double> dp_;
  std::vector<SizeBest> best_;
  std::uint64_t examined_ = 0;
  double lt_cur_ = 0.0;
};

inline std::vector<SizeBest> exact_by_dfs(std::span<const double> dr, std::size_t n, std::size_t max_size,
                                          bool cyclic, unsigned workers, std::uint64_t& examined) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  std::vector<std::vector<SizeBest>> partial(workers);
  std::vector<std::uint64_t> counts(workers, 0);
  run_workers(workers, [&](unsigned w) {
    DfsEnumerator e(dr, n, max_size, cyclic);
    for (std::size_t first = w; first < n; first += workers) e.run_first(first);
    partial[w] = std::move(e.best());
    counts[w] = e.examined();
  });
  std::vector<SizeBest> out(max_size + 1);
  for (unsigned w = 0; w < workers; ++w) {
    examined += counts[w];
    for (std::size_t s = 2; s <= max_size; ++s)
      if (partial[w][s].set) offer(out[s], partial[w][s].value, partial[w][s].ranks);
  }
  return out;
}

// Small Held-Karp evaluator reused across sampled subsets.
class SubsetEvaluator {
 public:
  SubsetEvaluator(std::span<const double> dr, std::size_t n) : dr_(dr), n_(n) {}

  // Ratio l_T/l_opt (or cyclic) for a subset given as ascending ranks.
  double ratio(std::span<const std::size_t> ranks, bool cyclic) {
    const std::size_t m = ranks.size();
    double lt = 0.0;
    for (std::size_t i = 1; i < m; ++i) lt += d(ranks[i - 1], ranks[i]);
    if (cyclic) return (lt + d(ranks[m - 1], ranks[0])) / closed(ranks);
    return lt / open(ranks);
  }

 private:
  double d(std::size_t a, std::size_t b) const { return dr_[a * n_ + b]; }

  double open(std::span<const std::size_t> p) {
    const std::size_t m = p.size();
    const std::size_t masks = std::size_t{1} << m;
    constexpr double inf = std::numeric_limits<double>::infinity();
    dp_.assign(masks * m, inf);
    for (std::size_t j = 0; j < m; ++j) dp_[(std::size_t{1} << j) * m + j] = 0.0;
    for (std::size_t mask = 1; mask < masks; ++mask) {
      for (std::size_t j = 0; j < m; ++j) {
        const double v = dp_[mask * m + j];
        if (v == inf) continue;
        for (std::size_t b = 0; b < m; ++b) {
          if (mask >> b & 1) continue;
          double& s = dp_[(mask | (std::size_t{1} << b)) * m + b];
          s = std::min(s, v + d(p[j], p[b]));
        }
      }
    }
    double best = inf;
    for (std::size_t j = 0; j < m; ++j) best = std::min(best, dp_[(masks - 1) * m + j]);
    return best;
  }

  double closed(std::span<const std::size_t> p) {
    const std::size_t m = p.size();
    const std::size_t masks = std::size_t{1} << m;
    constexpr double inf = std::numeric_limits<double>::infinity();
    dp_.assign(masks * m, inf);
    dp_[1 * m + 0] = 0.0;
    for (std::size_t mask = 1; mask < masks; mask += 2) {
      for (std::size_t j = 0; j < m; ++j) {
        const double v = dp_[mask * m + j];
        if (v == inf) continue;
        for (std::size_t b = 1; b < m; ++b) {
          if (mask >> b & 1) continue;
          double& s = dp_[(mask | (std::size_t{1} << b)) * m + b];
          s = std::min(s, v + d(p[j], p[b]));
        }
      }
    }
    double best = inf;
    for (std::size_t j = 1; j < m; ++j) best = std::min(best, dp_[(masks - 1) * m + j] + d(p[j], p[0]));
    return best;
  }

  std::span<const double> dr_;
  std::size_t n_;
  std::vector<double> dp_;
};

inline std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n, std::size_t size) {
  std::vector<std::size_t> out;
  out.reserve(size);
  // Floyd's sampling.
  for (std::size_t j = n - size; j < n; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    const std::size_t t = pick(rng);
    if (std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
    else
      out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<SizeBest> sampled_search(std::span<const double> dr, std::size_t n, std::size_t max_size,
                                            bool cyclic, const SampledParams& p, std::uint64_t& examined) {
  std::mt19937_64 rng(p.seed);
  SubsetEvaluator eval(dr, n);
  std::vector<SizeBest> best(max_size + 1);
  std::uniform_int_distribution<std::size_t> size_pick(2, max_size);
  for (std::size_t i = 0; i < p.subsets; ++i) {
    const std::size_t s = size_pick(rng);
    auto sub = random_subset(rng, n, s);
    const double r = eval.ratio(sub, cyclic);
    ++examined;
    offer(best[s], r, sub);
  }
  std::uniform_int_distribution<std::size_t> point_pick(0, n - 1);
  for (std::size_t restart = 0; restart < p.restarts; ++restart) {
    const std::size_t s = 2 + restart % (max_size - 1);
    std::vector<std::size_t> cur =
        (restart < max_size - 1 && best[s].set) ? best[s].ranks : random_subset(rng, n, s);
    double cur_val = eval.ratio(cur, cyclic);
    ++examined;
    if (s == n) {
      offer(best[s], cur_val, cur);
      continue;
    }
    std::uniform_int_distribution<std::size_t> slot_pick(0, s - 1);
    for (std::size_t step = 0; step < p.steps; ++step) {
      const std::size_t slot = slot_pick(rng);
      std::size_t repl = point_pick(rng);
      if (std::find(cur.begin(), cur.end(), repl) != cur.end()) continue;
      std::vector<std::size_t> cand = cur;
      cand[slot] = repl;
      std::sort(cand.begin(), cand.end());
      const double v = eval.ratio(cand, cyclic);
      ++examined;
      if (v >= cur_val) {
        cur = std::move(cand);
        cur_val = v;
      }
    }
    offer(best[s], cur_val, cur);
  }
  return best;
}

}  // namespace detail

// OR_{M,T}(k) (or OR°_{M,T}(k) when options.cyclic) for every k in 1..kmax.
// Exact mode returns the supremum; sampled mode returns a certified lower
// bound attained by the reported witness.
inline std::vector<ORReport> ratio_profile(const MetricSpace& m, const TotalOrder& t, int kmax,
                                           const RatioOptions& options = {}) {
  check_order(m, t);
  if (kmax < 1) throw invalid_input("k must be at least 1");
  if (m.empty()) throw invalid_input("order ratio needs a nonempty space");
  const std::size_t n = m.size();
  std::vector<ORReport> out;
  auto base = [&](int k) {
    ORReport r;
    r.k = k;
    r.mode = options.mode;
    r.cyclic = options.cyclic;
    r.seed = options.mode == Mode::sampled ? options.sampled.seed : 0;
    return r;
  };
  if (n == 1) {
    for (int k = 1; k <= kmax; ++k) out.push_back(base(k));
    return out;
  }
  const std::size_t max_size = std::min<std::size_t>(static_cast<std::size_t>(kmax) + 1, n);
  const auto dr = detail::ranked_distances(m, t);
  std::uint64_t examined = 0;
  std::vector<detail::SizeBest> per_size;
  if (options.mode == Mode::exact) {
    const double tc = detail::table_cost(n, max_size);
    const double dc = detail::dfs_cost(n, max_size);
    const double cost = std::min(tc, dc);
    if (!(cost <= options.budget)) {
      throw budget_error("exact order ratio refused: " + std::to_string(static_cast<unsigned long long>(
                                                             detail::subset_count(n, max_size))) +
                         " subsets (work " + std::to_string(cost) + ") exceed budget " +
                         std::to_string(options.budget) + "; use sampled mode");
    }
    if (tc <= dc)
      per_size = detail::exact_by_table(dr, n, max_size, options.cyclic, examined);
    else
      per_size = detail::exact_by_dfs(dr, n, max_size, options.cyclic, worker_count(options.workers), examined);
  } else {
    per_size = detail::sampled_search(dr, n, max_size, options.cyclic, options.sampled, examined);
  }

  detail::SizeBest running;
  for (int k = 1; k <= kmax; ++k) {
    const std::size_t s = std::min<std::size_t>(static_cast<std::size_t>(k) + 1, n);
    if (s <= max_size && per_size[s].set && (!running.set || per_size[s].value > running.value)) running = per_size[s];
    ORReport r = base(k);
    r.subsets_examined = examined;
    if (running.set) {
      r.value = running.value;
      for (std::size_t rk : running.ranks) r.witness.push_back(t.at(rk));
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline ORReport order_ratio(const MetricSpace& m, const TotalOrder& t, int k, RatioOptions options = {}) {
  options.cyclic = false;
  return ratio_profile(m, t, k, options).back();
}

inline ORReport order_ratio(const MetricSpace& m, const TotalOrder& t, int k, Mode mode) {
  RatioOptions o;
  o.mode = mode;
  return order_ratio(m, t, k, o);
}

inline ORReport cyclic_order_ratio(const MetricSpace& m, const TotalOrder& t, int k, RatioOptions options = {}) {
  options.cyclic = true;
  return ratio_profile(m, t, k, options).back();
}

inline ORReport cyclic_order_ratio(const MetricSpace& m, const TotalOrder& t, int k, Mode mode) {
  RatioOptions o;
  o.mode = mode;
  return cyclic_order_ratio(m, t, k, o);
}

// ---------------------------------------------------------------------------
// OR_M(k) = inf over orders

struct BestOrderOptions {
  std::size_t exact_max_n = 8;
  std::size_t anneal_steps = 20000;
  double initial_temperature = 0.2;
  double final_temperature = 1e-4;
  std::uint64_t seed = 1;
};

struct BestOrderReport {
  int k = 1;
  double value = 1.0;
  std::vector<TotalOrder> minimizers;  // all minimizing orders (exact); the best order found otherwise
  bool exact = true;
  std::uint64_t orders_examined = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Evaluates OR(k) of many orders of one space against a shared subset table.
class OrderScorer {
 public:
  OrderScorer(const MetricSpace& m, int k)
      : m_(m), n_(m.size()), max_size_(std::min<std::size_t>(static_cast<std::size_t>(k) + 1, m.size())),
        opt_(m.data(), m.size(), max_size_, true, false), orig_(std::size_t{1} << n_), lt_(std::size_t{1} << n_) {}

  double score(const TotalOrder& t) {
    const std::size_t masks = std::size_t{1} << n_;
    double best = 1.0;
    orig_[0] = 0;
    lt_[0] = 0.0;
    for (std::size_t mask = 1; mask < masks; ++mask) {
      const std::size_t hi = static_cast<std::size_t>(std::bit_width(mask) - 1);
      const std::size_t rest = mask ^ (std::size_t{1} << hi);
      const std::size_t p = t.at(hi);
      orig_[mask] = orig_[rest] | (std::size_t{1} << p);
      if (rest == 0) {
        lt_[mask] = 0.0;
        continue;
      }
      const std::size_t prev = t.at(static_cast<std::size_t>(std::bit_width(rest) - 1));
      lt_[mask] = lt_[rest] + m_(prev, p);
      if (static_cast<std::size_t>(std::popcount(mask)) > max_size_) continue;
      best = std::max(best, lt_[mask] / opt_.open[orig_[mask]]);
    }
    return best;
  }

 private:
  const MetricSpace& m_;
  std::size_t n_;
  std::size_t max_size_;
  SubsetOptima opt_;
  std::vector<std::size_t> orig_;
  std::vector<double> lt_;
};

}  // namespace detail

// OR_M(k): exhaustive over all n! orders when n <= exact_max_n, otherwise a
// simulated-annealing search whose result is an upper bound on the infimum.
inline BestOrderReport best_order_ratio(const MetricSpace& m, int k, const BestOrderOptions& options = {}) {
  if (k < 1) throw invalid_input("k must be at least 1");
  const std::size_t n = m.size();
  if (n == 0) throw invalid_input("best order needs a nonempty space");
  BestOrderReport rep;
  rep.k = k;
  if (n == 1) {
    rep.minimizers.push_back(TotalOrder::identity(1));
    rep.orders_examined = 1;
    return rep;
  }
  if (n > kExactCap) throw budget_error("best order search supports at most " + std::to_string(kExactCap) + " points");
  detail::OrderScorer scorer(m, k);
  if (n <= options.exact_max_n) {
    std::vector<std::size_t> seq(n);
    std::iota(seq.begin(), seq.end(), std::size_t{0});
    std::vector<std::pair<double, std::vector<std::size_t>>> cands;
    double best = std::numeric_limits<double>::infinity();
    do {
      const double v = scorer.score(TotalOrder::from_sequence(seq));
      ++rep.orders_examined;
      if (v < best - kTolerance) {
        cands.clear();
        best = v;
      }
      if (v <= best + kTolerance) {
        cands.emplace_back(v, seq);
        best = std::min(best, v);
      }
    } while (std::next_permutation(seq.begin(), seq.end()));
    rep.value = best;
    for (auto& [v, s] : cands)
      if (v <= best + kTolerance) rep.minimizers.push_back(TotalOrder::from_sequence(s));
    rep.exact = true;
    return rep;
  }
  // Annealing over orders with exact scoring of each candidate.
  rep.exact = false;
  rep.seed = options.seed;
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> seq(n);
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  std::shuffle(seq.begin(), seq.end(), rng);
  double cur = scorer.score(TotalOrder::from_sequence(seq));
  double best = cur;
  std::vector<std::size_t> best_seq = seq;
  std::uniform_int_distribution<std::size_t> pos(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ratio = options.anneal_steps > 1
                           ? std::pow(options.final_temperature / options.initial_temperature,
                                      1.0 / double(options.anneal_steps - 1))
                           : 1.0;
  double temp = options.initial_temperature;
  for (std::size_t step = 0; step < options.anneal_steps; ++step, temp *= ratio) {
    const std::size_t a = pos(rng), b = pos(rng);
    if (a == b) continue;
    std::swap(seq[a], seq[b]);
    const double v = scorer.score(TotalOrder::from_sequence(seq));
    ++rep.orders_examined;
    if (v <= cur || unit(rng) < std::exp((cur - v) / temp)) {
      cur = v;
      if (v < best) {
        best = v;
        best_seq = seq;
      }
    } else {
      std::swap(seq[a], seq[b]);
    }
  }
  rep.value = best;
  rep.minimizers.push_back(TotalOrder::from_sequence(best_seq));
  return rep;
}

}  // namespace utsp
