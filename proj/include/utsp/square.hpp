#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/laminar.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"

namespace utsp {

inline constexpr int kMaxInterleaveExponent = 16;
// Largest grid exponent for which a dense metric space is materialized.
inline constexpr int kMaxDenseSquareExponent = 6;

// Key whose binary expansion interleaves the bits of the two grid
// coordinates, x-bit first: 0.a1 b1 a2 b2 ... as an integer over 4^m.
inline std::uint64_t interleave_key(std::uint32_t i, std::uint32_t j, int m) {
  if (m < 0 || m > kMaxInterleaveExponent) throw invalid_input("grid exponent must be in 0..16");
  std::uint64_t key = 0;
  for (int bit = m - 1; bit >= 0; --bit) {
    key = (key << 1) | ((i >> bit) & 1u);
    key = (key << 1) | ((j >> bit) & 1u);
  }
  return key;
}

// c(x) as a real in [0,1).
inline double interleave_value(std::uint32_t i, std::uint32_t j, int m) {
  return std::ldexp(static_cast<double>(interleave_key(i, j, m)), -2 * m);
}

struct SquareGrid {
  MetricSpace space;          // point index = i * 2^m + j, coordinates (i/2^m, j/2^m)
  TotalOrder order;           // increasing interleaved key
  int m = 0;
};

inline std::size_t grid_index(std::uint32_t i, std::uint32_t j, int m) { return (std::size_t{i} << m) | j; }

// The 2^m x 2^m grid of the unit square with the Euclidean metric and the
// bit-interleave order.
inline SquareGrid interleave_square_order(int m) {
  if (m < 0 || m > kMaxInterleaveExponent) throw invalid_input("grid exponent must be in 0..16 (key width)");
  if (m > kMaxDenseSquareExponent)
    throw budget_error("grid exponent " + std::to_string(m) + " would need a dense matrix of 16^" +
                       std::to_string(m) + " entries; at most " + std::to_string(kMaxDenseSquareExponent) +
                       " is materialized");
  const std::uint32_t side = 1u << m;
  const std::size_t n = std::size_t{side} * side;
  std::vector<std::string> labels(n);
  std::vector<double> flat(n * n);
  const double h = std::ldexp(1.0, -m);
  for (std::uint32_t i = 0; i < side; ++i)
    for (std::uint32_t j = 0; j < side; ++j) labels[grid_index(i, j, m)] = std::to_string(i) + "," + std::to_string(j);
  for (std::size_t a = 0; a < n; ++a) {
    const double xa = h * double(a >> m), ya = h * double(a & (side - 1));
    for (std::size_t b = 0; b < n; ++b) {
      const double xb = h * double(b >> m), yb = h * double(b & (side - 1));
      flat[a * n + b] = std::hypot(xa - xb, ya - yb);
    }
  }
  std::vector<std::size_t> ranks(n);
  for (std::uint32_t i = 0; i < side; ++i)
    for (std::uint32_t j = 0; j < side; ++j) ranks[grid_index(i, j, m)] = interleave_key(i, j, m);
  return SquareGrid{MetricSpace::from_flat(std::move(labels), std::move(flat)), TotalOrder::from_ranks(std::move(ranks)), m};
}

// All dyadic sub-squares of side 2^-level (0 <= level <= m), as point sets.
inline std::vector<std::vector<std::size_t>> dyadic_squares(int m, int level) {
  if (level < 0 || level > m) throw invalid_input("dyadic level must be in 0..m");
  const std::uint32_t cells = 1u << level, cell = 1u << (m - level);
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t ci = 0; ci < cells; ++ci)
    for (std::uint32_t cj = 0; cj < cells; ++cj) {
      std::vector<std::size_t> s;
      for (std::uint32_t i = ci * cell; i < (ci + 1) * cell; ++i)
        for (std::uint32_t j = cj * cell; j < (cj + 1) * cell; ++j) s.push_back(grid_index(i, j, m));
      out.push_back(std::move(s));
    }
  return out;
}

// The laminar family of all dyadic squares at every scale.
inline LaminarFamily dyadic_family(int m) {
  LaminarFamily f;
  f.ground_size = std::size_t{1} << (2 * m);
  for (int level = 0; level <= m; ++level)
    for (auto& s : dyadic_squares(m, level)) f.sets.push_back(std::move(s));
  return f;
}

}  // namespace utsp
