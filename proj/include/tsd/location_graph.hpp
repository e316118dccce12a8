#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsd/event_graph.hpp"
#include "tsd/graph.hpp"

namespace tsd {

/// Undirected location graph; w({p,q}) counts same-train arcs between p and q.
struct LocationGraph {
  std::size_t location_count = 0;
  std::map<Edge, std::uint64_t> weights;  // key (p, q) with p < q

  Graph graph() const {
    Graph g(location_count);
    for (const auto& [e, w] : weights) g.add_edge(e.first, e.second);
    return g;
  }

  std::uint64_t total_weight() const {
    std::uint64_t s = 0;
    for (const auto& [e, w] : weights) s += w;
    return s;
  }
};

struct AugmentedLocationGraph {
  LocationGraph base;
  std::set<Edge> extra_edges;  // {first, third} of consecutive triplets, p < q

  Graph graph() const {
    Graph g = base.graph();
    for (auto [u, v] : extra_edges) g.add_edge(u, v);
    return g;
  }
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline LocationGraph build_location_graph(const EventGraph& g) {
  require_normalized(g, "build_location_graph");
  LocationGraph lg;
  lg.location_count = g.location_count();
  for (const auto& train : g.trains()) {
    for (std::size_t i = 1; i < train.events.size(); ++i) {
      ++lg.weights[make_edge(train.events[i - 1].loc, train.events[i].loc)];
    }
  }
  return lg;
}

inline AugmentedLocationGraph build_augmented(const EventGraph& g) {
  AugmentedLocationGraph aug{build_location_graph(g), {}};
  for (const auto& train : g.trains()) {
    const auto& ev = train.events;
    for (std::size_t i = 2; i < ev.size(); ++i) {
      if (ev[i - 2].loc != ev[i].loc) aug.extra_edges.insert(make_edge(ev[i - 2].loc, ev[i].loc));
    }
  }
  return aug;
}

/// Ordered restriction (first, middle, last): satisfied iff middle lies between.
struct Triple {
  LocationId first = 0;
  LocationId middle = 0;
  LocationId last = 0;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Maximum-Betweenness instance (S, R) with multiplicities.
struct RestrictionMultiset {
  std::size_t ground_size = 0;
  std::map<Triple, std::uint64_t> restrictions;
  std::uint64_t excluded_reversals = 0;  // consecutive triplets with first == last

  std::uint64_t total_multiplicity() const {
    std::uint64_t s = 0;
    for (const auto& [t, m] : restrictions) s += m;
    return s;
  }
};

inline RestrictionMultiset extract_restrictions(const EventGraph& g) {
  require_normalized(g, "extract_restrictions");
  RestrictionMultiset rm;
  rm.ground_size = g.location_count();
  for (const auto& train : g.trains()) {
    const auto& ev = train.events;
    for (std::size_t i = 2; i < ev.size(); ++i) {
      if (ev[i - 2].loc == ev[i].loc) {
        ++rm.excluded_reversals;
      } else {
        ++rm.restrictions[{ev[i - 2].loc, ev[i - 1].loc, ev[i].loc}];
      }
    }
  }
  return rm;
}

/// Bijection from locations to levels 1..Y, stored as a top-to-bottom sequence:
/// sequence[0] sits at level Y.
class LocationOrder {
 public:
  LocationOrder() = default;

  static LocationOrder from_sequence(std::size_t n, std::vector<LocationId> sequence) {
    if (sequence.size() != n) {
      throw std::invalid_argument("order has " + std::to_string(sequence.size()) +
                                  " locations, expected " + std::to_string(n));
    }
    LocationOrder o;
    o.position_.assign(n, kUnset);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (sequence[i] >= n || o.position_[sequence[i]] != kUnset) {
        throw std::invalid_argument("order is not a bijection onto the locations");
      }
      o.position_[sequence[i]] = i;
    }
    o.sequence_ = std::move(sequence);
    return o;
  }

  static LocationOrder from_levels(const std::vector<std::uint32_t>& level) {
    const std::size_t n = level.size();
    std::vector<LocationId> seq(n, 0);
    std::vector<bool> seen(n, false);
    for (LocationId p = 0; p < n; ++p) {
      if (level[p] < 1 || level[p] > n || seen[level[p] - 1]) {
        throw std::invalid_argument("levels are not a bijection onto 1..Y");
      }
      seen[level[p] - 1] = true;
      seq[n - level[p]] = p;
    }
    return from_sequence(n, std::move(seq));
  }

  static LocationOrder from_names(const EventGraph& g, const std::vector<std::string>& names) {
    std::vector<LocationId> seq;
    seq.reserve(names.size());
    for (const auto& n : names) seq.push_back(g.id(n));
    return from_sequence(g.location_count(), std::move(seq));
  }

  static LocationOrder identity(std::size_t n) {
    std::vector<LocationId> seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    return from_sequence(n, std::move(seq));
  }

  std::size_t size() const { return sequence_.size(); }
  const std::vector<LocationId>& sequence() const { return sequence_; }

  /// 0-based rank from the top.
  std::uint32_t position(LocationId p) const { return position_.at(p); }

  /// Level y(p) in 1..Y, Y at the top.
  std::uint32_t level(LocationId p) const {
    return static_cast<std::uint32_t>(sequence_.size()) - position_.at(p);
  }

  LocationOrder reversed() const {
    return from_sequence(size(), {sequence_.rbegin(), sequence_.rend()});
  }

  std::vector<std::string> names(const EventGraph& g) const {
    std::vector<std::string> out;
    out.reserve(sequence_.size());
    for (auto p : sequence_) out.push_back(g.name(p));
    return out;
  }

  friend bool operator==(const LocationOrder& a, const LocationOrder& b) {
    return a.sequence_ == b.sequence_;
  }

 private:
  static constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<LocationId> sequence_;
  std::vector<std::uint32_t> position_;
};

/// True when the middle position is strictly outside the other two.
inline bool is_turn(std::uint32_t first, std::uint32_t middle, std::uint32_t last) {
  return (middle < first && middle < last) || (middle > first && middle > last);
}

inline void require_order_for(const EventGraph& g, const LocationOrder& y) {
  if (y.size() != g.location_count()) {
    throw std::invalid_argument("order covers " + std::to_string(y.size()) + " locations, graph has " +
                                std::to_string(g.location_count()));
  }
}

/// Turns over consecutive triplets with pairwise-distinct locations. Repeated
/// same-location events are skipped, so un-normalized graphs count the same.
inline std::uint64_t count_turns(const EventGraph& g, const LocationOrder& y) {
  require_order_for(g, y);
  std::uint64_t turns = 0;
  for (const auto& train : g.trains()) {
    auto walk = compressed_walk(train);
    for (std::size_t i = 2; i < walk.size(); ++i) {
      if (walk[i - 2] == walk[i]) continue;
      turns += is_turn(y.position(walk[i - 2]), y.position(walk[i - 1]), y.position(walk[i]));
    }
  }
  return turns;
}

inline std::uint64_t violated_restrictions(const RestrictionMultiset& rm, const LocationOrder& y) {
  if (y.size() != rm.ground_size) throw std::invalid_argument("order does not cover the ground set");
  std::uint64_t violated = 0;
  for (const auto& [t, mult] : rm.restrictions) {
    if (is_turn(y.position(t.first), y.position(t.middle), y.position(t.last))) violated += mult;
  }
  return violated;
}

namespace detail {

inline int orientation(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by,
                       std::int64_t cx, std::int64_t cy) {
  __int128 v = static_cast<__int128>(bx - ax) * (cy - ay) - static_cast<__int128>(by - ay) * (cx - ax);
  return (v > 0) - (v < 0);
}

}  // namespace detail

/// Proper crossings between segments of distinct trains in the drawing
/// (t, level). Touching endpoints and collinear overlaps are not counted.
inline std::uint64_t count_crossings(const EventGraph& g, const LocationOrder& y) {
  require_order_for(g, y);
  struct Segment {
    std::size_t train;
    std::int64_t x1, y1, x2, y2;
  };
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < g.train_count(); ++i) {
    const auto& ev = g.trains()[i].events;
    for (std::size_t j = 1; j < ev.size(); ++j) {
      segs.push_back({i, ev[j - 1].t, static_cast<std::int64_t>(y.level(ev[j - 1].loc)), ev[j].t,
                      static_cast<std::int64_t>(y.level(ev[j].loc))});
    }
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
    return std::min(a.x1, a.x2) < std::min(b.x1, b.x2);
  });
  std::uint64_t crossings = 0;
  for (std::size_t a = 0; a < segs.size(); ++a) {
    const auto& s = segs[a];
    const auto s_max = std::max(s.x1, s.x2);
    for (std::size_t b = a + 1; b < segs.size(); ++b) {
      const auto& r = segs[b];
      if (std::min(r.x1, r.x2) > s_max) break;
      if (r.train == s.train) continue;
      int o1 = detail::orientation(s.x1, s.y1, s.x2, s.y2, r.x1, r.y1);
      int o2 = detail::orientation(s.x1, s.y1, s.x2, s.y2, r.x2, r.y2);
      int o3 = detail::orientation(r.x1, r.y1, r.x2, r.y2, s.x1, s.y1);
      int o4 = detail::orientation(r.x1, r.y1, r.x2, r.y2, s.x2, s.y2);
      if (o1 * o2 < 0 && o3 * o4 < 0) ++crossings;
    }
  }
  return crossings;
}

}  // namespace tsd
