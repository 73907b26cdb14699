#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "utsp/error.hpp"
#include "utsp/order.hpp"

namespace utsp {

// A family of subsets of {0..ground_size-1} in which any two sets are
// disjoint or nested.
struct LaminarFamily {
  std::size_t ground_size = 0;
  std::vector<std::vector<std::size_t>> sets;
};

namespace detail {

inline std::vector<std::size_t> normalized(std::vector<std::size_t> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

enum class SetRelation { disjoint, first_in_second, second_in_first, crossing };

inline SetRelation relate(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (common.empty()) return SetRelation::disjoint;
  if (common.size() == a.size()) return SetRelation::first_in_second;
  if (common.size() == b.size()) return SetRelation::second_in_first;
  return SetRelation::crossing;
}

}  // namespace detail

// First pair of family indices whose sets cross, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> find_crossing_pair(const LaminarFamily& f) {
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& s : f.sets) sets.push_back(detail::normalized(s));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (detail::relate(sets[i], sets[j]) == detail::SetRelation::crossing) return std::make_pair(i, j);
  return std::nullopt;
}

namespace detail {

// Orders `ground` (ascending) so that every set of `family` (all subsets of
// ground) is an interval: the first maximal proper set goes first, then the
// complement, each ordered recursively.
inline void laminar_recurse(const std::vector<std::size_t>& ground, std::vector<std::vector<std::size_t>> family,
                            std::vector<std::size_t>& out) {
  family.erase(std::remove_if(family.begin(), family.end(),
                              [&](const auto& s) { return s.empty() || s.size() == ground.size(); }),
               family.end());
  if (family.empty()) {
    out.insert(out.end(), ground.begin(), ground.end());
    return;
  }
  std::size_t pick = 0;
  for (std::size_t i = 1; i < family.size(); ++i)
    if (family[i].size() > family[pick].size()) pick = i;
  const std::vector<std::size_t> b1 = family[pick];
  std::vector<std::size_t> b2;
  std::set_difference(ground.begin(), ground.end(), b1.begin(), b1.end(), std::back_inserter(b2));
  std::vector<std::vector<std::size_t>> f1, f2;
  for (auto& s : family) {
    if (std::includes(b1.begin(), b1.end(), s.begin(), s.end()))
      f1.push_back(std::move(s));
    else
      f2.push_back(std::move(s));
  }
  laminar_recurse(b1, std::move(f1), out);
  laminar_recurse(b2, std::move(f2), out);
}

}  // namespace detail

// An order under which every set of a laminar family is convex.
inline TotalOrder laminar_convex_order(const LaminarFamily& f) {
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& s : f.sets) {
    auto n = detail::normalized(s);
    if (!n.empty() && n.back() >= f.ground_size) throw invalid_input("laminar family set has an out-of-range point");
    sets.push_back(std::move(n));
  }
  if (auto cross = find_crossing_pair(f)) {
    throw invalid_input("family is not laminar: sets " + std::to_string(cross->first) + " and " +
                        std::to_string(cross->second) + " cross");
  }
  std::vector<std::size_t> ground(f.ground_size);
  std::iota(ground.begin(), ground.end(), std::size_t{0});
  std::vector<std::size_t> seq;
  seq.reserve(f.ground_size);
  detail::laminar_recurse(ground, std::move(sets), seq);
  return TotalOrder::from_sequence(std::move(seq));
}

}  // namespace utsp
