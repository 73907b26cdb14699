#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"

namespace utsp {

// A total order on the points 0..n-1 of a space, stored as a rank bijection.
class TotalOrder {
 public:
  TotalOrder() = default;

  static TotalOrder identity(std::size_t n) {
    std::vector<std::size_t> seq(n);
    std::iota(seq.begin(), seq.end(), std::size_t{0});
    return from_sequence(std::move(seq));
  }

  // `sequence` lists the points in increasing order.
  static TotalOrder from_sequence(std::vector<std::size_t> sequence) {
    TotalOrder t;
    t.rank_.assign(sequence.size(), sequence.size());
    for (std::size_t r = 0; r < sequence.size(); ++r) {
      const std::size_t p = sequence[r];
      if (p >= sequence.size() || t.rank_[p] != sequence.size())
        throw invalid_input("order sequence is not a permutation of 0.." + std::to_string(sequence.size() - 1));
      t.rank_[p] = r;
    }
    t.seq_ = std::move(sequence);
    return t;
  }

  static TotalOrder from_ranks(std::vector<std::size_t> ranks) {
    std::vector<std::size_t> seq(ranks.size(), ranks.size());
    for (std::size_t p = 0; p < ranks.size(); ++p) {
      if (ranks[p] >= ranks.size() || seq[ranks[p]] != ranks.size())
        throw invalid_input("rank array is not a bijection");
      seq[ranks[p]] = p;
    }
    return from_sequence(std::move(seq));
  }

  std::size_t size() const noexcept { return rank_.size(); }
  std::size_t rank(std::size_t point) const { return rank_.at(point); }
  std::size_t at(std::size_t r) const { return seq_.at(r); }
  const std::vector<std::size_t>& ranks() const noexcept { return rank_; }
  const std::vector<std::size_t>& sequence() const noexcept { return seq_; }

  bool less(std::size_t a, std::size_t b) const { return rank_.at(a) < rank_.at(b); }

  TotalOrder reversed() const {
    std::vector<std::size_t> s(seq_.rbegin(), seq_.rend());
    return from_sequence(std::move(s));
  }

  // Points sorted increasingly in this order.
  std::vector<std::size_t> sort(std::span<const std::size_t> points) const {
    std::vector<std::size_t> out(points.begin(), points.end());
    std::sort(out.begin(), out.end(), [this](std::size_t a, std::size_t b) { return rank_[a] < rank_[b]; });
    return out;
  }

  friend bool operator==(const TotalOrder&, const TotalOrder&) = default;

 private:
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> seq_;
};

inline void check_order(const MetricSpace& m, const TotalOrder& t) {
  if (t.size() != m.size())
    throw invalid_input("order has " + std::to_string(t.size()) + " points but the space has " +
                        std::to_string(m.size()));
}

// l_T(X): length of the path visiting X in increasing T-order.
inline double tour_length(const MetricSpace& m, const TotalOrder& t, std::span<const std::size_t> x) {
  for (std::size_t p : x)
    if (p >= m.size()) throw invalid_input("point index out of range");
  const auto sorted = t.sort(x);
  return path_length(m, sorted);
}

// l°_T(X) = l_T(X) + d(T-last, T-first).
inline double cyclic_tour_length(const MetricSpace& m, const TotalOrder& t, std::span<const std::size_t> x) {
  for (std::size_t p : x)
    if (p >= m.size()) throw invalid_input("point index out of range");
  const auto sorted = t.sort(x);
  return cycle_length(m, sorted);
}

// The unique cyclic shift T^x of T in which x is minimal: points >=_T x keep
// their relative order and precede the points <_T x.
inline TotalOrder cyclic_shift(const TotalOrder& t, std::size_t x) {
  const std::size_t n = t.size();
  if (x >= n) throw invalid_input("cyclic shift point out of range");
  const std::size_t base = t.rank(x);
  std::vector<std::size_t> ranks(n);
  for (std::size_t p = 0; p < n; ++p) ranks[p] = (t.rank(p) + n - base) % n;
  return TotalOrder::from_ranks(std::move(ranks));
}

// Pullback of `target` along phi: N -> M. Points of N are compared by the
// rank of their image; points in the same fiber are compared by `tiebreak`.
inline TotalOrder pullback_order(std::span<const std::size_t> phi, const TotalOrder& target,
                                 const TotalOrder& tiebreak) {
  if (tiebreak.size() != phi.size()) throw invalid_input("tiebreak order must cover the domain of phi");
  for (std::size_t y : phi)
    if (y >= target.size()) throw invalid_input("phi maps outside the target space");
  std::vector<std::size_t> seq(phi.size());
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  std::sort(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = target.rank(phi[a]), rb = target.rank(phi[b]);
    if (ra != rb) return ra < rb;
    return tiebreak.rank(a) < tiebreak.rank(b);
  });
  return TotalOrder::from_sequence(std::move(seq));
}

inline TotalOrder pullback_order(std::span<const std::size_t> phi, const TotalOrder& target) {
  return pullback_order(phi, target, TotalOrder::identity(phi.size()));
}

// Convexity: no point outside `set` ranks strictly between two of its points.
inline bool is_convex(const TotalOrder& t, std::span<const std::size_t> set) {
  if (set.empty()) return true;
  std::size_t lo = t.size(), hi = 0;
  for (std::size_t p : set) {
    lo = std::min(lo, t.rank(p));
    hi = std::max(hi, t.rank(p));
  }
  std::vector<char> seen(t.size(), 0);
  std::size_t distinct = 0;
  for (std::size_t p : set)
    if (!seen[p]) {
      seen[p] = 1;
      ++distinct;
    }
  return hi - lo + 1 == distinct;
}

}  // namespace utsp
