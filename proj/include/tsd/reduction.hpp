#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsd/event_graph.hpp"
#include "tsd/event_graph_json.hpp"
#include "tsd/graph.hpp"
#include "tsd/location_graph.hpp"

namespace tsd {

/// Locations where some train starts or ends, sorted.
inline std::vector<LocationId> find_terminals(const EventGraph& g) {
  std::set<LocationId> out;
  for (const auto& train : g.trains()) {
    if (train.events.empty()) continue;
    out.insert(train.events.front().loc);
    out.insert(train.events.back().loc);
  }
  return {out.begin(), out.end()};
}

/// Maximal path of degree-2 vertices.
struct Chain {
  std::vector<Vertex> vertices;  // in path order
  bool has_terminal = false;
  bool is_cycle = false;  // the whole connected component is a cycle
  Vertex end_a = 0;       // neighbour of vertices.front() outside the chain
  Vertex end_b = 0;       // neighbour of vertices.back() outside the chain
};

inline std::vector<Chain> find_chains(const Graph& g, const std::vector<LocationId>& terminals) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> is_terminal(n, false);
  for (auto t : terminals) {
    if (t < n) is_terminal[t] = true;
  }
  std::vector<bool> seen(n, false);
  std::vector<Chain> chains;
  for (Vertex v = 0; v < n; ++v) {
    if (seen[v] || g.degree(v) != 2) continue;
    Chain chain;
    // Walk away from v in both directions; `prev` prevents stepping back.
    auto walk = [&](Vertex from, Vertex next, std::vector<Vertex>& out) -> std::pair<Vertex, bool> {
      Vertex prev = from;
      Vertex cur = next;
      while (g.degree(cur) == 2 && cur != v) {
        out.push_back(cur);
        const auto& nb = g.neighbors(cur);
        Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
      }
      return {cur, cur == v};
    };
    std::vector<Vertex> right, left;
    auto [end_r, cycle] = walk(v, g.neighbors(v)[1], right);
    if (cycle) {
      chain.is_cycle = true;
      chain.vertices.push_back(v);
      chain.vertices.insert(chain.vertices.end(), right.begin(), right.end());
    } else {
      auto [end_l, unused] = walk(v, g.neighbors(v)[0], left);
      (void)unused;
      chain.vertices.assign(left.rbegin(), left.rend());
      chain.vertices.push_back(v);
      chain.vertices.insert(chain.vertices.end(), right.begin(), right.end());
      chain.end_a = end_l;
      chain.end_b = end_r;
      if (chain.vertices.back() < chain.vertices.front()) {
        std::reverse(chain.vertices.begin(), chain.vertices.end());
        std::swap(chain.end_a, chain.end_b);
      }
    }
    for (auto c : chain.vertices) {
      seen[c] = true;
      chain.has_terminal |= is_terminal[c];
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

struct BlockCutTree {
  std::vector<std::vector<Vertex>> blocks;  // each sorted; listed by smallest vertex
  std::vector<Vertex> cut_vertices;         // sorted
  // (block index, cut vertex) for every block containing the cut vertex.
  std::vector<std::pair<std::size_t, Vertex>> edges;

  std::size_t node_count() const { return blocks.size() + cut_vertices.size(); }
};

/// Biconnected blocks and cut vertices of a connected graph (Hopcroft-Tarjan).
inline BlockCutTree block_cut_tree(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (!is_connected(g)) throw std::invalid_argument("block_cut_tree requires a connected graph");
  BlockCutTree tree;
  if (n == 0) return tree;
  if (n == 1) {
    tree.blocks.push_back({0});
    return tree;
  }
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::uint32_t timer = 0;
  std::vector<Edge> edge_stack;
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0, 0});
  disc[0] = low[0] = ++timer;
  while (!stack.empty()) {
    auto& f = stack.back();
    const auto& nb = g.neighbors(f.v);
    if (f.next < nb.size()) {
      Vertex w = nb[f.next++];
      if (disc[w] == 0) {
        edge_stack.emplace_back(f.v, w);
        disc[w] = low[w] = ++timer;
        stack.push_back({w, f.v, 0});
      } else if (w != f.parent && disc[w] < disc[f.v]) {
        edge_stack.emplace_back(f.v, w);
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    Frame done = f;
    stack.pop_back();
    if (stack.empty()) break;
    Vertex v = stack.back().v;
    low[v] = std::min(low[v], low[done.v]);
    if (low[done.v] >= disc[v]) {
      std::set<Vertex> block;
      while (!edge_stack.empty()) {
        Edge e = edge_stack.back();
        edge_stack.pop_back();
        block.insert(e.first);
        block.insert(e.second);
        if (e.first == v && e.second == done.v) break;
      }
      tree.blocks.emplace_back(block.begin(), block.end());
    }
  }
  std::sort(tree.blocks.begin(), tree.blocks.end());
  std::vector<int> membership(n, 0);
  for (const auto& b : tree.blocks) {
    for (auto v : b) ++membership[v];
  }
  for (Vertex v = 0; v < n; ++v) {
    if (membership[v] > 1) tree.cut_vertices.push_back(v);
  }
  for (std::size_t i = 0; i < tree.blocks.size(); ++i) {
    for (auto v : tree.blocks[i]) {
      if (membership[v] > 1) tree.edges.emplace_back(i, v);
    }
  }
  return tree;
}

struct SeparatingPair {
  Vertex s = 0;
  Vertex t = 0;
  std::vector<std::vector<Vertex>> components;  // of L - {s, t}
};

/// All pairs {s,t} whose removal disconnects a connected graph. Pairs of two
/// non-cut vertices from different blocks never separate, so only pairs inside
/// a block or involving a cut vertex are tested.
inline std::vector<SeparatingPair> find_separating_pairs(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (!is_connected(g)) throw std::invalid_argument("find_separating_pairs requires a connected graph");
  std::vector<SeparatingPair> out;
  if (n < 4) return out;
  const auto bct = block_cut_tree(g);
  std::vector<bool> is_cut(n, false);
  for (auto c : bct.cut_vertices) is_cut[c] = true;
  std::set<Edge> candidates;
  for (const auto& block : bct.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      for (std::size_t j = i + 1; j < block.size(); ++j) candidates.insert({block[i], block[j]});
    }
  }
  for (auto c : bct.cut_vertices) {
    for (Vertex v = 0; v < n; ++v) {
      if (v != c) candidates.insert(make_edge(c, v));
    }
  }
  std::vector<bool> removed(n, false);
  for (auto [s, t] : candidates) {
    removed[s] = removed[t] = true;
    auto comps = components(g, removed);
    removed[s] = removed[t] = false;
    if (comps.size() >= 2) out.push_back({s, t, std::move(comps)});
  }
  return out;
}

enum class CandidateClass { not_transit, transit_not_contractible, contractible };

inline const char* to_string(CandidateClass c) {
  switch (c) {
    case CandidateClass::not_transit: return "not-transit";
    case CandidateClass::transit_not_contractible: return "transit-not-contractible";
    case CandidateClass::contractible: return "contractible";
  }
  return "?";
}

/// Maximal stretch of one train inside the component, entering at `from_s`'s pole.
struct TransitRun {
  std::size_t train = 0;  // index into EventGraph::trains()
  std::size_t first = 0;  // first event index inside the component
  std::size_t last = 0;   // last event index inside the component
  bool from_s = true;
};

struct ContractionCandidate {
  LocationId s = 0;
  LocationId t = 0;
  std::vector<LocationId> component;  // sorted
  CandidateClass classification = CandidateClass::not_transit;
  std::string reason;
  std::vector<TransitRun> runs;
  std::vector<LocationId> topological_order;  // directs every run from s to t
  std::optional<bool> any_orientation_acyclic;
};

struct ClassifyOptions {
  /// Also try every per-run direction assignment (diagnostic only; <= 15 runs).
  bool exhaustive_orientation = false;
};

namespace detail {

/// Kahn's algorithm on the component with name-ordered tie-breaking.
inline std::optional<std::vector<LocationId>> topological_order(
    const EventGraph& g, const std::vector<LocationId>& vertices,
    const std::set<std::pair<LocationId, LocationId>>& arcs) {
  std::map<LocationId, int> indeg;
  std::map<LocationId, std::vector<LocationId>> out;
  for (auto v : vertices) indeg[v] = 0;
  for (auto [a, b] : arcs) {
    out[a].push_back(b);
    ++indeg[b];
  }
  auto by_name = [&](LocationId a, LocationId b) { return g.name(a) > g.name(b); };
  std::priority_queue<LocationId, std::vector<LocationId>, decltype(by_name)> ready(by_name);
  for (auto [v, d] : indeg) {
    if (d == 0) ready.push(v);
  }
  std::vector<LocationId> order;
  while (!ready.empty()) {
    auto v = ready.top();
    ready.pop();
    order.push_back(v);
    for (auto w : out[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (order.size() != vertices.size()) return std::nullopt;
  return order;
}

inline bool acyclic(const std::vector<LocationId>& vertices,
                    const std::vector<std::pair<LocationId, LocationId>>& arcs) {
  std::map<LocationId, int> indeg;
  std::map<LocationId, std::vector<LocationId>> out;
  for (auto v : vertices) indeg[v] = 0;
  for (auto [a, b] : arcs) {
    out[a].push_back(b);
    ++indeg[b];
  }
  std::vector<LocationId> ready;
  for (auto [v, d] : indeg) {
    if (d == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto w : out[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  return seen == vertices.size();
}

}  // namespace detail

/// Classifies component C of L - {s,t}: (i) no terminal in C, (ii) every
/// train stretch through C enters at one pole and leaves at the other, and
/// contraction creates no pole reversal (t,s,t); contractible when the
/// stretches, all directed from s to t, form an acyclic digraph.
inline ContractionCandidate classify_candidate(const EventGraph& g, LocationId s, LocationId t,
                                               std::vector<LocationId> component,
                                               const ClassifyOptions& options = {}) {
  require_normalized(g, "classify_candidate");
  if (s == t) throw std::invalid_argument("candidate poles must differ");
  if (g.name(t) < g.name(s)) std::swap(s, t);
  std::sort(component.begin(), component.end());
  ContractionCandidate cand;
  cand.s = s;
  cand.t = t;
  cand.component = component;

  std::vector<bool> in_c(g.location_count(), false);
  for (auto c : component) {
    if (c == s || c == t) throw std::invalid_argument("component contains a pole");
    in_c[c] = true;
  }
  for (auto term : find_terminals(g)) {
    if (in_c[term]) {
      cand.reason = "component contains terminal '" + g.name(term) + "'";
      return cand;
    }
  }

  const auto& trains = g.trains();
  for (std::size_t i = 0; i < trains.size(); ++i) {
    const auto& ev = trains[i].events;
    for (std::size_t j = 0; j < ev.size(); ++j) {
      if (!in_c[ev[j].loc]) continue;
      std::size_t k = j;
      while (k + 1 < ev.size() && in_c[ev[k + 1].loc]) ++k;
      // Endpoints of a train are terminals, hence outside C.
      LocationId prev = ev[j - 1].loc;
      LocationId next = ev[k + 1].loc;
      if ((prev != s && prev != t) || (next != s && next != t)) {
        cand.reason = "component touches a location other than its poles";
        return cand;
      }
      if (prev == next) {
        cand.reason = "train " + std::to_string(trains[i].id) + " enters and leaves through '" +
                      g.name(prev) + "'";
        return cand;
      }
      cand.runs.push_back({i, j, k, prev == s});
      j = k;
    }
  }
  if (cand.runs.empty()) {
    cand.reason = "no train traverses the component";
    return cand;
  }

  // Contraction must not create a reversal (s,t,s) or (t,s,t) next to a new arc.
  for (std::size_t i = 0; i < trains.size(); ++i) {
    struct Kept {
      LocationId loc;
      bool contracted_in;  // arc from the previous kept event replaces a stretch
    };
    std::vector<Kept> kept;
    bool skipped = false;
    for (const auto& e : trains[i].events) {
      if (in_c[e.loc]) {
        skipped = true;
        continue;
      }
      kept.push_back({e.loc, skipped});
      skipped = false;
    }
    for (std::size_t j = 2; j < kept.size(); ++j) {
      if ((kept[j - 1].contracted_in || kept[j].contracted_in) && kept[j - 2].loc == kept[j].loc) {
        cand.reason = "train " + std::to_string(trains[i].id) + " would reverse at pole '" +
                      g.name(kept[j - 1].loc) + "'";
        return cand;
      }
    }
  }

  std::set<std::pair<LocationId, LocationId>> arcs;
  for (const auto& run : cand.runs) {
    const auto& ev = trains[run.train].events;
    for (std::size_t j = run.first; j < run.last; ++j) {
      if (run.from_s) {
        arcs.insert({ev[j].loc, ev[j + 1].loc});
      } else {
        arcs.insert({ev[j + 1].loc, ev[j].loc});
      }
    }
  }
  if (options.exhaustive_orientation && cand.runs.size() <= 15) {
    bool found = false;
    const std::size_t r = cand.runs.size();
    for (std::uint32_t mask = 0; mask < (1u << r) && !found; ++mask) {
      std::vector<std::pair<LocationId, LocationId>> a;
      for (std::size_t k = 0; k < r; ++k) {
        const auto& run = cand.runs[k];
        const auto& ev = trains[run.train].events;
        for (std::size_t j = run.first; j < run.last; ++j) {
          if (mask >> k & 1u) {
            a.emplace_back(ev[j + 1].loc, ev[j].loc);
          } else {
            a.emplace_back(ev[j].loc, ev[j + 1].loc);
          }
        }
      }
      found = detail::acyclic(component, a);
    }
    cand.any_orientation_acyclic = found;
  }
  auto order = detail::topological_order(g, component, arcs);
  if (!order) {
    cand.classification = CandidateClass::transit_not_contractible;
    cand.reason = "stretches directed from s to t form a cycle";
    return cand;
  }
  cand.classification = CandidateClass::contractible;
  cand.topological_order = std::move(*order);
  return cand;
}

struct RemovedStretch {
  TrainId train = 0;
  std::vector<std::pair<std::string, Time>> events;
};

struct ContractionStep {
  std::string s;
  std::string t;
  std::vector<std::string> topological_order;  // contracted locations, s side first
  std::vector<RemovedStretch> removed;
};

struct ContractionReport {
  std::vector<std::string> original_locations;
  std::vector<std::string> reduced_locations;
  std::vector<ContractionStep> steps;

  std::size_t location_count_before() const { return original_locations.size(); }
  std::size_t location_count_after() const { return reduced_locations.size(); }
};

enum class ReduceMode { chain, full };

struct ReductionResult {
  EventGraph graph;
  ContractionReport report;
};

namespace detail {

/// Removes the candidate's stretches; contracted locations stay in the
/// location list (now unused) so indices remain stable during a fixpoint loop.
inline EventGraph contract_in_place(const EventGraph& g, const ContractionCandidate& cand,
                                    ContractionStep& step) {
  std::vector<bool> in_c(g.location_count(), false);
  for (auto c : cand.component) in_c[c] = true;
  step.s = g.name(cand.s);
  step.t = g.name(cand.t);
  for (auto c : cand.topological_order) step.topological_order.push_back(g.name(c));
  for (const auto& run : cand.runs) {
    const auto& train = g.trains()[run.train];
    RemovedStretch rs{train.id, {}};
    for (std::size_t j = run.first; j <= run.last; ++j) {
      rs.events.emplace_back(g.name(train.events[j].loc), train.events[j].t);
    }
    step.removed.push_back(std::move(rs));
  }
  std::vector<TrainLine> trains;
  for (const auto& train : g.trains()) {
    TrainLine line{train.id, {}};
    for (const auto& e : train.events) {
      if (!in_c[e.loc]) line.events.push_back(e);
    }
    trains.push_back(std::move(line));
  }
  return EventGraph(g.locations(), std::move(trains));
}

inline EventGraph drop_locations(const EventGraph& g, const std::vector<bool>& drop) {
  std::vector<std::string> names;
  std::vector<LocationId> remap(g.location_count(), 0);
  for (LocationId p = 0; p < g.location_count(); ++p) {
    if (drop[p]) continue;
    remap[p] = static_cast<LocationId>(names.size());
    names.push_back(g.name(p));
  }
  std::vector<TrainLine> trains;
  for (const auto& train : g.trains()) {
    TrainLine line{train.id, {}};
    for (const auto& e : train.events) {
      if (drop[e.loc]) throw std::logic_error("dropping a location that still has events");
      line.events.push_back({remap[e.loc], e.t});
    }
    trains.push_back(std::move(line));
  }
  return EventGraph(std::move(names), std::move(trains));
}

/// Terminal-free stretches of chains, each with its two poles.
inline std::vector<std::pair<Edge, std::vector<Vertex>>> chain_segments(
    const Graph& lg, const std::vector<LocationId>& terminals) {
  std::vector<bool> is_terminal(lg.vertex_count(), false);
  for (auto t : terminals) is_terminal[t] = true;
  std::vector<std::pair<Edge, std::vector<Vertex>>> out;
  for (const auto& chain : find_chains(lg, terminals)) {
    if (chain.is_cycle) continue;
    const auto& cv = chain.vertices;
    std::size_t i = 0;
    while (i < cv.size()) {
      if (is_terminal[cv[i]]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < cv.size() && !is_terminal[cv[j + 1]]) ++j;
      Vertex left = i == 0 ? chain.end_a : cv[i - 1];
      Vertex right = j + 1 == cv.size() ? chain.end_b : cv[j + 1];
      if (left != right) out.push_back({{left, right}, {cv.begin() + i, cv.begin() + j + 1}});
      i = j + 1;
    }
  }
  return out;
}

}  // namespace detail

/// Applies transit-component contraction until no candidate is contractible.
/// Chain mode only considers terminal-free chain stretches; full mode tries
/// every pole pair {s,t} (name order) and every component of L - {s,t}
/// adjacent to both poles, recomputing after each contraction.
inline ReductionResult apply_rule_exhaustively(const EventGraph& g, ReduceMode mode,
                                               const ClassifyOptions& options = {}) {
  require_normalized(g, "apply_rule_exhaustively");
  ContractionReport report;
  report.original_locations = g.locations();
  EventGraph cur = g;
  std::vector<bool> contracted(g.location_count(), false);
  auto by_name = [&](Vertex a, Vertex b) { return g.name(a) < g.name(b); };

  auto try_contract = [&](Vertex s, Vertex t, const std::vector<Vertex>& comp) {
    auto cand = classify_candidate(cur, s, t, comp, options);
    if (cand.classification != CandidateClass::contractible) return false;
    ContractionStep step;
    cur = detail::contract_in_place(cur, cand, step);
    for (auto c : cand.component) contracted[c] = true;
    report.steps.push_back(std::move(step));
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    const Graph lg = build_location_graph(cur).graph();
    const auto terminals = find_terminals(cur);
    if (mode == ReduceMode::chain) {
      auto segments = detail::chain_segments(lg, terminals);
      std::sort(segments.begin(), segments.end(), [&](const auto& a, const auto& b) {
        return g.name(*std::min_element(a.second.begin(), a.second.end(), by_name)) <
               g.name(*std::min_element(b.second.begin(), b.second.end(), by_name));
      });
      for (const auto& [poles, seg] : segments) {
        // Earlier contractions in this round may have changed the segment.
        const Graph now = build_location_graph(cur).graph();
        bool still_chain = now.degree(poles.first) > 0 && now.degree(poles.second) > 0;
        for (auto v : seg) still_chain = still_chain && now.degree(v) == 2;
        if (!still_chain) continue;
        changed |= try_contract(poles.first, poles.second, seg);
      }
      continue;
    }
    std::vector<Vertex> active;
    for (Vertex v = 0; v < lg.vertex_count(); ++v) {
      if (lg.degree(v) > 0) active.push_back(v);
    }
    std::sort(active.begin(), active.end(), by_name);
    std::vector<bool> removed(lg.vertex_count(), false);
    for (std::size_t a = 0; a < active.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < active.size() && !changed; ++b) {
        const Vertex s = active[a], t = active[b];
        removed[s] = removed[t] = true;
        auto comps = components(lg, removed);
        removed[s] = removed[t] = false;
        std::vector<std::vector<Vertex>> two_pole;
        for (auto& comp : comps) {
          bool touches_s = false, touches_t = false;
          for (auto v : comp) {
            touches_s |= lg.has_edge(v, s);
            touches_t |= lg.has_edge(v, t);
          }
          if (touches_s && touches_t) two_pole.push_back(std::move(comp));
        }
        std::sort(two_pole.begin(), two_pole.end(), [&](const auto& x, const auto& y) {
          return g.name(*std::min_element(x.begin(), x.end(), by_name)) <
                 g.name(*std::min_element(y.begin(), y.end(), by_name));
        });
        for (const auto& comp : two_pole) {
          if (try_contract(s, t, comp)) {
            changed = true;
            break;
          }
        }
      }
    }
  }
  EventGraph reduced = detail::drop_locations(cur, contracted);
  report.reduced_locations = reduced.locations();
  return {std::move(reduced), std::move(report)};
}

/// Rebuilds the reduced graph from the original by removing each step's locations.
inline EventGraph replay(const EventGraph& original, const ContractionReport& report) {
  std::vector<bool> drop(original.location_count(), false);
  for (const auto& step : report.steps) {
    for (const auto& name : step.topological_order) drop[original.id(name)] = true;
  }
  std::vector<TrainLine> trains;
  for (const auto& train : original.trains()) {
    TrainLine line{train.id, {}};
    for (const auto& e : train.events) {
      if (!drop[e.loc]) line.events.push_back(e);
    }
    trains.push_back(std::move(line));
  }
  return detail::drop_locations(EventGraph(original.locations(), std::move(trains)), drop);
}

/// Extends an order of the reduced graph to the original: each contracted
/// component goes strictly between its poles, in its recorded s-to-t order.
inline LocationOrder lift_order(const ContractionReport& report, const LocationOrder& reduced_order) {
  if (reduced_order.size() != report.reduced_locations.size()) {
    throw std::invalid_argument("order does not match the reduced instance");
  }
  std::vector<std::string> seq;
  for (auto p : reduced_order.sequence()) seq.push_back(report.reduced_locations[p]);
  for (auto it = report.steps.rbegin(); it != report.steps.rend(); ++it) {
    auto ps = std::find(seq.begin(), seq.end(), it->s);
    auto pt = std::find(seq.begin(), seq.end(), it->t);
    if (ps == seq.end() || pt == seq.end()) {
      throw std::invalid_argument("order lacks pole of contraction step");
    }
    if (ps < pt) {
      seq.insert(ps + 1, it->topological_order.begin(), it->topological_order.end());
    } else {
      seq.insert(pt + 1, it->topological_order.rbegin(), it->topological_order.rend());
    }
  }
  std::unordered_map<std::string, LocationId> index;
  for (LocationId i = 0; i < report.original_locations.size(); ++i) {
    index[report.original_locations[i]] = i;
  }
  std::vector<LocationId> ids;
  ids.reserve(seq.size());
  for (const auto& name : seq) {
    auto f = index.find(name);
    if (f == index.end()) throw std::invalid_argument("report/order mismatch at '" + name + "'");
    ids.push_back(f->second);
  }
  return LocationOrder::from_sequence(report.original_locations.size(), std::move(ids));
}

inline json report_to_json(const ContractionReport& report) {
  json steps = json::array();
  for (const auto& step : report.steps) {
    json removed = json::array();
    for (const auto& r : step.removed) {
      json events = json::array();
      for (const auto& [loc, t] : r.events) events.push_back({{"loc", loc}, {"t", t}});
      removed.push_back({{"train", r.train}, {"events", std::move(events)}});
    }
    steps.push_back({{"pair", {step.s, step.t}},
                     {"topological_order", step.topological_order},
                     {"removed", std::move(removed)}});
  }
  return {{"location_count_before", report.location_count_before()},
          {"location_count_after", report.location_count_after()},
          {"original_locations", report.original_locations},
          {"reduced_locations", report.reduced_locations},
          {"steps", std::move(steps)}};
}

inline ContractionReport report_from_json(const json& doc) {
  ContractionReport report;
  report.original_locations = doc.at("original_locations").get<std::vector<std::string>>();
  report.reduced_locations = doc.at("reduced_locations").get<std::vector<std::string>>();
  for (const auto& s : doc.at("steps")) {
    ContractionStep step;
    step.s = s.at("pair").at(0).get<std::string>();
    step.t = s.at("pair").at(1).get<std::string>();
    step.topological_order = s.at("topological_order").get<std::vector<std::string>>();
    for (const auto& r : s.at("removed")) {
      RemovedStretch rs{r.at("train").get<TrainId>(), {}};
      for (const auto& e : r.at("events")) {
        rs.events.emplace_back(e.at("loc").get<std::string>(), e.at("t").get<Time>());
      }
      step.removed.push_back(std::move(rs));
    }
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace tsd
