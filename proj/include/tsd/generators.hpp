#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsd/event_graph.hpp"
#include "tsd/graph.hpp"
#include "tsd/random.hpp"

namespace tsd {

struct BetweennessInstance {
  std::vector<std::string> ground;
  std::vector<std::array<std::string, 3>> triples;  // (outer, middle, outer)
};

struct SatisfiableBetweenness {
  BetweennessInstance instance;
  std::vector<std::string> hidden_order;
};

/// Generated graph plus the facts an oracle needs (hidden order, k_chain, source graph).
struct GeneratedInstance {
  EventGraph graph;
  nlohmann::json meta;
};

namespace detail {

/// `count` strictly increasing times in a private window starting at `cursor`;
/// advances `cursor` past the window so trains never share a time.
inline std::vector<Time> window_times(Rng& rng, Time& cursor, std::size_t count) {
  const Time width = static_cast<Time>(std::max<std::size_t>(count, 1) * 4);
  const Time base = cursor;
  cursor += width;
  auto sample = rng.sorted_sample(base, base + width - 1, count);
  return {sample.begin(), sample.end()};
}

inline std::string padded(const std::string& prefix, std::size_t i, std::size_t n) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::to_string(n == 0 ? 0 : n - 1).size();
  return prefix + std::string(width - std::min(width, digits.size()), '0') + digits;
}

}  // namespace detail

/// One 3-event train per triple, in a window of its own.
inline EventGraph from_betweenness(const BetweennessInstance& bi, std::uint64_t seed) {
  Rng rng(seed);
  Time cursor = 0;
  EventGraphBuilder b;
  for (const auto& s : bi.ground) b.location(s);
  for (std::size_t i = 0; i < bi.triples.size(); ++i) {
    const auto& t = bi.triples[i];
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw std::invalid_argument("triple " + std::to_string(i) + " repeats an element");
    }
    auto times = detail::window_times(rng, cursor, 3);
    b.add_train(static_cast<TrainId>(i + 1), {{t[0], times[0]}, {t[1], times[1]}, {t[2], times[2]}});
  }
  return b.build();
}

/// Locations v0..v{n-1} plus hub z; one train (u, z, v) per edge, direction seeded.
inline EventGraph from_maxcut(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  Time cursor = 0;
  EventGraphBuilder b;
  for (Vertex v = 0; v < g.vertex_count(); ++v) b.location("v" + std::to_string(v));
  b.location("z");
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (rng.chance(0.5)) std::swap(u, v);
    auto times = detail::window_times(rng, cursor, 3);
    b.add_train(static_cast<TrainId>(i + 1),
                {{"v" + std::to_string(u), times[0]}, {"z", times[1]}, {"v" + std::to_string(v), times[2]}});
  }
  return b.build();
}

/// Triples drawn consistent with a hidden permutation of s0..s{n-1}.
inline SatisfiableBetweenness gen_satisfiable_betweenness(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("betweenness generator needs n >= 3");
  Rng rng(seed);
  SatisfiableBetweenness out;
  for (std::size_t i = 0; i < n; ++i) out.instance.ground.push_back(detail::padded("s", i, n));
  out.hidden_order = out.instance.ground;
  rng.shuffle(out.hidden_order);
  for (std::size_t k = 0; k < m; ++k) {
    auto pos = rng.sorted_sample(0, static_cast<std::int64_t>(n) - 1, 3);
    std::array<std::string, 3> t{out.hidden_order[pos[0]], out.hidden_order[pos[1]], out.hidden_order[pos[2]]};
    if (rng.chance(0.5)) std::swap(t[0], t[2]);
    out.instance.triples.push_back(std::move(t));
  }
  return out;
}

/// G(n, p) with vertices 0..n-1.
inline Graph gen_random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.chance(p)) g.add_edge(u, v);
    }
  }
  return g;
}

/// Random walks over a random connected location graph (spanning tree plus
/// about n/2 extra edges). Train lengths are uniform in [1, max_len].
inline EventGraph gen_random_event_graph(std::size_t n_loc, std::size_t n_trains, std::size_t max_len,
                                         std::uint64_t seed) {
  if (n_loc == 0 || n_trains == 0 || max_len == 0) throw std::invalid_argument("parameters must be positive");
  Rng rng(seed);
  Time cursor = 0;
  Graph lg(n_loc);
  for (Vertex v = 1; v < n_loc; ++v) lg.add_edge(v, static_cast<Vertex>(rng.index(v)));
  if (n_loc >= 3) {
    for (std::size_t k = 0; k < n_loc / 2; ++k) {
      lg.add_edge(static_cast<Vertex>(rng.index(n_loc)), static_cast<Vertex>(rng.index(n_loc)));
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_loc; ++i) names.push_back(detail::padded("L", i, n_loc));
  std::vector<TrainLine> trains;
  for (std::size_t i = 0; i < n_trains; ++i) {
    std::size_t len = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_len)));
    if (n_loc == 1) len = 1;
    auto times = detail::window_times(rng, cursor, len);
    TrainLine line{static_cast<TrainId>(i + 1), {}};
    Vertex at = static_cast<Vertex>(rng.index(n_loc));
    for (std::size_t k = 0; k < len; ++k) {
      line.events.push_back({at, times[k]});
      if (k + 1 == len) break;
      const auto& nb = lg.neighbors(at);
      at = nb[rng.index(nb.size())];
    }
    trains.push_back(std::move(line));
  }
  return EventGraph(std::move(names), std::move(trains));
}

/// Monotone trains on a path. Of the n_loc path locations, k_chain are
/// injected pass-through locations (no train starts or stops there); every
/// other location ("station") is a train endpoint. The train count is raised
/// when needed so that every station is an endpoint.
inline GeneratedInstance gen_corridor(std::size_t n_loc, std::size_t n_trains, std::size_t k_chain,
                                      std::uint64_t seed) {
  if (n_loc < 2) throw std::invalid_argument("corridor needs at least 2 locations");
  if (k_chain + 2 > n_loc) throw std::invalid_argument("k_chain must leave at least 2 stations");
  Rng rng(seed);
  Time cursor = 0;
  const std::size_t stations = n_loc - k_chain;
  // distribute the chain vertices over the station gaps
  std::vector<std::size_t> gap(stations - 1, 0);
  for (std::size_t k = 0; k < k_chain; ++k) ++gap[rng.index(gap.size())];
  std::vector<std::string> path;
  std::vector<std::size_t> station_pos;
  std::vector<std::string> chain_names;
  for (std::size_t s = 0; s < stations; ++s) {
    station_pos.push_back(path.size());
    path.push_back(detail::padded("C", path.size(), n_loc));
    if (s + 1 < stations) {
      for (std::size_t k = 0; k < gap[s]; ++k) {
        path.push_back(detail::padded("C", path.size(), n_loc));
        chain_names.push_back(path.back());
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> spans;  // station indices (from, to)
  spans.emplace_back(0, stations - 1);
  std::vector<std::size_t> uncovered;
  for (std::size_t s = 1; s + 1 < stations; ++s) uncovered.push_back(s);
  rng.shuffle(uncovered);
  for (std::size_t i = 0; i < uncovered.size(); i += 2) {
    const std::size_t a = uncovered[i];
    const std::size_t b = i + 1 < uncovered.size() ? uncovered[i + 1] : 0;
    spans.emplace_back(a, b);
  }
  while (spans.size() < n_trains) {
    std::size_t a = rng.index(stations), b = rng.index(stations - 1);
    if (b >= a) ++b;
    spans.emplace_back(a, b);
  }
  std::vector<TrainLine> trains;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    auto [a, b] = spans[i];
    if (rng.chance(0.5)) std::swap(a, b);
    std::vector<LocationId> walk;
    const auto pa = station_pos[a], pb = station_pos[b];
    if (pa < pb) {
      for (auto p = pa; p <= pb; ++p) walk.push_back(static_cast<LocationId>(p));
    } else {
      for (auto p = pa + 1; p-- > pb;) walk.push_back(static_cast<LocationId>(p));
    }
    auto times = detail::window_times(rng, cursor, walk.size());
    TrainLine line{static_cast<TrainId>(i + 1), {}};
    for (std::size_t k = 0; k < walk.size(); ++k) line.events.push_back({walk[k], times[k]});
    trains.push_back(std::move(line));
  }
  nlohmann::json meta = {{"family", "corridor"},         {"seed", seed},
                         {"n_loc", n_loc},               {"n_trains_requested", n_trains},
                         {"n_trains", trains.size()},    {"k_chain", k_chain},
                         {"chain_locations", chain_names}, {"path_order", path}};
  return {EventGraph(path, std::move(trains)), std::move(meta)};
}

}  // namespace tsd
