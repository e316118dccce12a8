#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "tsd/graph.hpp"
#include "tsd/location_graph.hpp"

namespace tsd {

/// Cheap upper-bound order: BFS layering of the restriction graph from a
/// minimum-degree start, then first-improvement single-vertex moves until no
/// move lowers the violated weight. Deterministic; used to seed exact search.
inline LocationOrder heuristic_order(const RestrictionMultiset& rm, const std::vector<std::string>& names,
                                     std::size_t max_passes = 20) {
  const std::size_t n = rm.ground_size;
  struct R {
    LocationId a, m, c;
    std::int64_t w;
  };
  std::vector<R> rs;
  std::vector<std::vector<std::size_t>> touching(n);
  Graph g(n);
  for (const auto& [t, w] : rm.restrictions) {
    touching[t.first].push_back(rs.size());
    touching[t.middle].push_back(rs.size());
    touching[t.last].push_back(rs.size());
    rs.push_back({t.first, t.middle, t.last, static_cast<std::int64_t>(w)});
    g.add_edge(t.first, t.middle);
    g.add_edge(t.middle, t.last);
  }

  std::vector<LocationId> by_name(n);
  for (LocationId p = 0; p < n; ++p) by_name[p] = p;
  std::sort(by_name.begin(), by_name.end(), [&](LocationId a, LocationId b) { return names[a] < names[b]; });
  std::vector<LocationId> seq;
  std::vector<bool> seen(n, false);
  for (;;) {
    LocationId start = 0;
    std::size_t best_deg = std::numeric_limits<std::size_t>::max();
    for (auto p : by_name) {
      if (!seen[p] && g.degree(p) < best_deg) {
        best_deg = g.degree(p);
        start = p;
      }
    }
    if (best_deg == std::numeric_limits<std::size_t>::max()) break;
    std::queue<LocationId> q;
    q.push(start);
    seen[start] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      seq.push_back(v);
      for (auto w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
  }

  std::vector<std::uint32_t> pos(n);
  for (std::uint32_t i = 0; i < n; ++i) pos[seq[i]] = i;
  // Weight of v's violated restrictions when v is reinserted at index `at`.
  auto cost_at = [&](LocationId v, std::uint32_t at) {
    std::int64_t c = 0;
    auto key = [&](LocationId x) -> std::uint64_t {
      if (x == v) return 2ull * at;
      const std::uint32_t p = pos[x] > pos[v] ? pos[x] - 1 : pos[x];
      return 2ull * p + 1;
    };
    for (auto i : touching[v]) {
      const auto& r = rs[i];
      const auto ka = key(r.a), km = key(r.m), kc = key(r.c);
      if ((km < ka && km < kc) || (km > ka && km > kc)) c += r.w;
    }
    return c;
  };
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool improved = false;
    for (auto v : by_name) {
      const std::uint32_t cur = pos[v];
      const auto base = cost_at(v, cur);
      std::int64_t best = base;
      std::uint32_t best_at = cur;
      for (std::uint32_t at = 0; at < n; ++at) {
        const auto c = cost_at(v, at);
        if (c < best) {
          best = c;
          best_at = at;
        }
      }
      if (best_at == cur) continue;
      seq.erase(seq.begin() + cur);
      seq.insert(seq.begin() + best_at, v);
      for (std::uint32_t i = 0; i < n; ++i) pos[seq[i]] = i;
      improved = true;
    }
    if (!improved) break;
  }
  return LocationOrder::from_sequence(n, std::move(seq));
}

}  // namespace tsd
