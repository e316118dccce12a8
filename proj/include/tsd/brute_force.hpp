#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsd/location_graph.hpp"

namespace tsd {

struct BruteForceResult {
  LocationOrder order;
  std::uint64_t turns = 0;
  std::uint64_t orders_checked = 0;
};

inline constexpr std::size_t kBruteForceCap = 10;

/// Enumerates all orders (name-lexicographic over the top-to-bottom sequence)
/// and keeps the first one with the fewest violated restrictions.
inline BruteForceResult solve_brute_force(const RestrictionMultiset& rm, const std::vector<std::string>& names,
                                          std::size_t cap = kBruteForceCap) {
  const std::size_t n = rm.ground_size;
  if (names.size() != n) throw std::invalid_argument("location names do not match the ground set");
  if (n > cap) {
    throw std::invalid_argument("brute force is limited to " + std::to_string(cap) + " locations, got " +
                                std::to_string(n));
  }
  struct R {
    LocationId a, m, c;
    std::uint64_t w;
  };
  std::vector<R> rs;
  for (const auto& [t, w] : rm.restrictions) rs.push_back({t.first, t.middle, t.last, w});

  std::vector<LocationId> seq(n);
  for (LocationId p = 0; p < n; ++p) seq[p] = p;
  auto by_name = [&](LocationId a, LocationId b) { return names[a] < names[b]; };
  std::sort(seq.begin(), seq.end(), by_name);

  std::vector<std::uint32_t> pos(n);
  BruteForceResult best;
  std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
  std::vector<LocationId> best_seq = seq;
  do {
    ++best.orders_checked;
    for (std::uint32_t i = 0; i < n; ++i) pos[seq[i]] = i;
    std::uint64_t cost = 0;
    for (const auto& r : rs) {
      if (is_turn(pos[r.a], pos[r.m], pos[r.c])) {
        cost += r.w;
        if (cost >= best_cost) break;
      }
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_seq = seq;
    }
  } while (std::next_permutation(seq.begin(), seq.end(), by_name));
  best.order = LocationOrder::from_sequence(n, best_seq);
  best.turns = n == 0 ? 0 : best_cost;
  return best;
}

}  // namespace tsd
