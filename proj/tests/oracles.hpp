#pragma once

// Test-only oracles. They share no code with the library's solvers: turns
// are recounted from raw train events and every optimum comes from plain
// enumeration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tsd/event_graph.hpp"
#include "tsd/graph.hpp"

namespace oracle {

/// Turns of `seq` (top to bottom) recomputed from the raw event lists.
inline std::uint64_t turns(const tsd::EventGraph& g, const std::vector<tsd::LocationId>& seq) {
  std::vector<int> height(g.location_count());
  for (std::size_t i = 0; i < seq.size(); ++i) height[seq[i]] = static_cast<int>(seq.size() - i);
  std::uint64_t count = 0;
  for (const auto& train : g.trains()) {
    std::vector<tsd::LocationId> w;
    for (const auto& e : train.events) {
      if (w.empty() || w.back() != e.loc) w.push_back(e.loc);
    }
    for (std::size_t i = 0; i + 2 < w.size(); ++i) {
      const int a = height[w[i]], b = height[w[i + 1]], c = height[w[i + 2]];
      if (w[i] == w[i + 2]) continue;
      if ((b > a && b > c) || (b < a && b < c)) ++count;
    }
  }
  return count;
}

/// Minimum turns over all Y! orders.
inline std::uint64_t min_turns(const tsd::EventGraph& g) {
  std::vector<tsd::LocationId> seq(g.location_count());
  for (tsd::LocationId i = 0; i < seq.size(); ++i) seq[i] = i;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  do {
    best = std::min(best, turns(g, seq));
  } while (std::next_permutation(seq.begin(), seq.end()));
  return seq.empty() ? 0 : best;
}

/// Largest cut by enumerating all 2^n sides (vertex 0 fixed).
inline std::size_t max_cut(const tsd::Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0;
  std::size_t best = 0;
  const auto edges = g.edges();
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    const std::uint32_t side = mask << 1;
    std::size_t cut = 0;
    for (auto [u, v] : edges) cut += ((side >> u) & 1u) != ((side >> v) & 1u);
    best = std::max(best, cut);
  }
  return best;
}

/// Exact treewidth by the subset recurrence over elimination prefixes.
inline std::size_t treewidth(const tsd::Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0;
  // q(S, v): vertices outside S + v reachable from v through S.
  auto q = [&](std::uint32_t S, tsd::Vertex v) {
    std::uint32_t seen = 1u << v, frontier = 1u << v, reach = 0;
    while (frontier) {
      std::uint32_t next = 0;
      for (tsd::Vertex u = 0; u < n; ++u) {
        if (!((frontier >> u) & 1u)) continue;
        for (auto w : g.neighbors(u)) {
          if ((seen >> w) & 1u) continue;
          seen |= 1u << w;
          if ((S >> w) & 1u) {
            next |= 1u << w;
          } else {
            reach |= 1u << w;
          }
        }
      }
      frontier = next;
    }
    return static_cast<std::size_t>(__builtin_popcount(reach));
  };
  std::vector<std::size_t> tw(1u << n, std::numeric_limits<std::size_t>::max());
  tw[0] = 0;
  for (std::uint32_t S = 1; S < (1u << n); ++S) {
    for (tsd::Vertex v = 0; v < n; ++v) {
      if (!((S >> v) & 1u)) continue;
      const std::uint32_t rest = S & ~(1u << v);
      tw[S] = std::min(tw[S], std::max(tw[rest], q(rest, v)));
    }
  }
  return tw[(1u << n) - 1];
}

/// Pairs {s,t} whose removal leaves at least two components (plain BFS).
inline std::set<std::pair<tsd::Vertex, tsd::Vertex>> separating_pairs(const tsd::Graph& g) {
  std::set<std::pair<tsd::Vertex, tsd::Vertex>> out;
  const std::size_t n = g.vertex_count();
  for (tsd::Vertex s = 0; s < n; ++s) {
    for (tsd::Vertex t = s + 1; t < n; ++t) {
      std::vector<int> comp(n, -1);
      comp[s] = comp[t] = -2;
      int count = 0;
      for (tsd::Vertex r = 0; r < n; ++r) {
        if (comp[r] != -1) continue;
        std::vector<tsd::Vertex> stack{r};
        comp[r] = count;
        while (!stack.empty()) {
          auto v = stack.back();
          stack.pop_back();
          for (auto w : g.neighbors(v)) {
            if (comp[w] == -1) {
              comp[w] = count;
              stack.push_back(w);
            }
          }
        }
        ++count;
      }
      if (count >= 2) out.insert({s, t});
    }
  }
  return out;
}

/// Directed cycle in the relation adj[p][q] (plain DFS colouring).
inline bool has_cycle(const std::vector<std::vector<bool>>& adj) {
  const std::size_t n = adj.size();
  std::vector<int> colour(n, 0);
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    colour[v] = 1;
    for (std::size_t w = 0; w < n; ++w) {
      if (!adj[v][w]) continue;
      if (colour[w] == 1) return true;
      if (colour[w] == 0 && dfs(w)) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (colour[v] == 0 && dfs(v)) return true;
  }
  return false;
}

/// All connected simple graphs on n vertices (every labelled edge subset).
inline std::vector<tsd::Graph> connected_graphs(std::size_t n) {
  std::vector<tsd::Edge> all;
  for (tsd::Vertex u = 0; u < n; ++u) {
    for (tsd::Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
  }
  std::vector<tsd::Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    tsd::Graph g(n);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if ((mask >> i) & 1u) g.add_edge(all[i].first, all[i].second);
    }
    if (tsd::is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace oracle
