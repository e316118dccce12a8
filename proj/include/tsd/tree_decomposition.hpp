#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsd/event_graph.hpp"
#include "tsd/graph.hpp"

namespace tsd {

/// Tree of bags over node ids 0..N-1. Bags are sorted.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<Edge> tree_edges;

  std::size_t width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return w == 0 ? 0 : w - 1;
  }
};

/// Min-degree elimination: repeatedly eliminate the vertex of least current
/// degree (ties to the smallest index), turning its neighbourhood into a
/// clique. Bag i is {v_i} + N(v_i) and links to the bag of the neighbour that
/// is eliminated next.
inline TreeDecomposition min_degree_decomposition(const Graph& g) {
  const std::size_t n = g.vertex_count();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.emplace_back();
    return td;
  }
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) queue.insert({adj[v].size(), v});

  std::vector<Vertex> order;
  std::vector<std::size_t> position(n, 0);
  std::vector<std::vector<Vertex>> nbrs_at_elimination(n);
  while (!queue.empty()) {
    Vertex v = queue.begin()->second;
    queue.erase(queue.begin());
    position[v] = order.size();
    order.push_back(v);
    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    nbrs_at_elimination[v] = nb;
    for (auto u : nb) {
      queue.erase({adj[u].size(), u});
      adj[u].erase(v);
    }
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    }
    for (auto u : nb) queue.insert({adj[u].size(), u});
    adj[v].clear();
  }
  td.bags.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = order[i];
    auto bag = nbrs_at_elimination[v];
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags[i] = std::move(bag);
    if (i + 1 == n) break;
    const auto& nb = nbrs_at_elimination[v];
    std::size_t parent = i + 1;
    if (!nb.empty()) {
      parent = n;
      for (auto u : nb) parent = std::min(parent, position[u]);
    }
    td.tree_edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(parent));
  }
  return td;
}

namespace detail {

inline bool is_tree(std::size_t nodes, const std::vector<Edge>& edges) {
  if (nodes == 0) return edges.empty();
  if (edges.size() + 1 != nodes) return false;
  Graph t(nodes);
  for (auto [a, b] : edges) {
    if (a >= nodes || b >= nodes || a == b) return false;
    t.add_edge(a, b);
  }
  return t.edge_count() == edges.size() && is_connected(t);
}

/// (T3) check: for every vertex, the nodes holding it induce a connected subtree.
inline void check_occupancy(std::size_t vertex_count, const std::vector<std::vector<Vertex>>& bags,
                            const std::vector<Edge>& edges, ValidationReport& report) {
  std::vector<std::vector<std::size_t>> holders(vertex_count);
  for (std::size_t i = 0; i < bags.size(); ++i) {
    for (auto v : bags[i]) {
      if (v < vertex_count) holders[v].push_back(i);
    }
  }
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (holders[v].size() <= 1) continue;
    std::vector<bool> has(bags.size(), false);
    for (auto h : holders[v]) has[h] = true;
    std::size_t inner = 0;
    for (auto [a, b] : edges) inner += has[a] && has[b];
    // A vertex set of a tree is connected iff it spans |set| - 1 tree edges.
    if (inner + 1 != holders[v].size()) {
      report.violations.push_back(
          {"T3", "nodes containing vertex " + std::to_string(v) + " are not connected", {}});
    }
  }
}

}  // namespace detail

inline ValidationReport validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  ValidationReport report;
  if (!detail::is_tree(td.bags.size(), td.tree_edges)) {
    report.violations.push_back({"tree", "decomposition edges do not form a tree", {}});
    return report;
  }
  const std::size_t n = g.vertex_count();
  std::vector<bool> covered(n, false);
  for (const auto& bag : td.bags) {
    for (auto v : bag) {
      if (v >= n) {
        report.violations.push_back({"T1", "bag holds unknown vertex " + std::to_string(v), {}});
      } else {
        covered[v] = true;
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!covered[v]) {
      report.violations.push_back({"T1", "vertex " + std::to_string(v) + " is in no bag", {}});
    }
  }
  for (auto [u, v] : g.edges()) {
    bool found = false;
    for (const auto& bag : td.bags) {
      if (std::binary_search(bag.begin(), bag.end(), u) && std::binary_search(bag.begin(), bag.end(), v)) {
        found = true;
        break;
      }
    }
    if (!found) {
      report.violations.push_back(
          {"T2", "edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag", {}});
    }
  }
  detail::check_occupancy(n, td.bags, td.tree_edges, report);
  return report;
}

enum class NiceKind { leaf, introduce, forget, join };

inline const char* to_string(NiceKind k) {
  switch (k) {
    case NiceKind::leaf: return "leaf";
    case NiceKind::introduce: return "introduce";
    case NiceKind::forget: return "forget";
    case NiceKind::join: return "join";
  }
  return "?";
}

struct NiceNode {
  NiceKind kind = NiceKind::leaf;
  Vertex vertex = 0;  // introduced / forgotten vertex
  std::vector<Vertex> bag;
  std::vector<std::size_t> children;
};

/// Rooted nice decomposition. Children always precede their parent, so the
/// node list is a valid bottom-up processing order. The root has an empty bag
/// and is a forget node (or the lone leaf of an empty decomposition).
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  std::size_t root = 0;

  std::size_t width() const {
    std::size_t w = 0;
    for (const auto& n : nodes) w = std::max(w, n.bag.size());
    return w == 0 ? 0 : w - 1;
  }

  TreeDecomposition as_tree_decomposition() const {
    TreeDecomposition td;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      td.bags.push_back(nodes[i].bag);
      for (auto c : nodes[i].children) td.tree_edges.emplace_back(static_cast<Vertex>(c), static_cast<Vertex>(i));
    }
    return td;
  }
};

/// Node-count bound constant: nodes <= kNiceNodeFactor * (width + 1) * max(n, 1).
inline constexpr std::size_t kNiceNodeFactor = 5;

inline NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
  if (!detail::is_tree(td.bags.size(), td.tree_edges) || td.bags.empty()) {
    throw std::invalid_argument("make_nice: decomposition is not a tree");
  }
  for (const auto& bag : td.bags) {
    if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
      throw std::invalid_argument("make_nice: bags must be sorted and duplicate-free");
    }
  }
  Vertex max_vertex = 0;
  for (const auto& bag : td.bags) {
    for (auto v : bag) max_vertex = std::max(max_vertex, v);
  }
  ValidationReport occupancy;
  detail::check_occupancy(static_cast<std::size_t>(max_vertex) + 1, td.bags, td.tree_edges, occupancy);
  if (!occupancy.ok()) throw std::invalid_argument("make_nice: " + occupancy.violations.front().message);

  const std::size_t n_nodes = td.bags.size();
  std::vector<std::vector<std::size_t>> tree(n_nodes);
  for (auto [a, b] : td.tree_edges) {
    tree[a].push_back(b);
    tree[b].push_back(a);
  }
  for (auto& t : tree) std::sort(t.begin(), t.end());

  NiceTreeDecomposition nice;
  auto add = [&](NiceNode node) {
    nice.nodes.push_back(std::move(node));
    return nice.nodes.size() - 1;
  };
  auto forget = [&](std::size_t child, Vertex v) {
    auto bag = nice.nodes[child].bag;
    bag.erase(std::find(bag.begin(), bag.end(), v));
    return add({NiceKind::forget, v, std::move(bag), {child}});
  };
  auto introduce = [&](std::size_t child, Vertex v) {
    auto bag = nice.nodes[child].bag;
    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
    return add({NiceKind::introduce, v, std::move(bag), {child}});
  };
  // Rebuilds `top` (bag `from`) into a chain ending with bag `to`.
  auto morph = [&](std::size_t top, const std::vector<Vertex>& to) {
    std::vector<Vertex> drop, gain;
    const auto from = nice.nodes[top].bag;
    std::set_difference(from.begin(), from.end(), to.begin(), to.end(), std::back_inserter(drop));
    std::set_difference(to.begin(), to.end(), from.begin(), from.end(), std::back_inserter(gain));
    for (auto v : drop) top = forget(top, v);
    for (auto v : gain) top = introduce(top, v);
    return top;
  };

  std::function<std::size_t(std::size_t, std::size_t)> build = [&](std::size_t u, std::size_t parent) {
    std::vector<std::size_t> tops;
    for (auto c : tree[u]) {
      if (c == parent) continue;
      tops.push_back(morph(build(c, u), td.bags[u]));
    }
    if (tops.empty()) return morph(add({NiceKind::leaf, 0, {}, {}}), td.bags[u]);
    std::size_t cur = tops[0];
    for (std::size_t k = 1; k < tops.size(); ++k) {
      cur = add({NiceKind::join, 0, td.bags[u], {cur, tops[k]}});
    }
    return cur;
  };
  std::size_t top = build(0, n_nodes);
  nice.root = morph(top, {});
  return nice;
}

/// Node-kind invariants of a nice decomposition, plus (T1)-(T3) against g.
inline ValidationReport validate_nice(const Graph& g, const NiceTreeDecomposition& ntd) {
  ValidationReport report = validate_decomposition(g, ntd.as_tree_decomposition());
  auto fail = [&](std::size_t i, const std::string& what) {
    report.violations.push_back({"nice", "node " + std::to_string(i) + ": " + what, {}});
  };
  if (ntd.nodes.empty() || ntd.root >= ntd.nodes.size()) {
    fail(0, "missing root");
    return report;
  }
  if (!ntd.nodes[ntd.root].bag.empty()) fail(ntd.root, "root bag is not empty");
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const auto& node = ntd.nodes[i];
    for (auto c : node.children) {
      if (c >= i) fail(i, "child does not precede parent");
    }
    if (node.children.size() > 2) {
      fail(i, "more than two children");
      continue;
    }
    switch (node.kind) {
      case NiceKind::leaf:
        if (!node.children.empty() || !node.bag.empty()) fail(i, "leaf must be childless with empty bag");
        break;
      case NiceKind::introduce: {
        if (node.children.size() != 1) {
          fail(i, "introduce needs one child");
          break;
        }
        auto expect = ntd.nodes[node.children[0]].bag;
        if (std::binary_search(expect.begin(), expect.end(), node.vertex)) fail(i, "vertex already present");
        expect.insert(std::lower_bound(expect.begin(), expect.end(), node.vertex), node.vertex);
        if (expect != node.bag) fail(i, "introduce bag mismatch");
        break;
      }
      case NiceKind::forget: {
        if (node.children.size() != 1) {
          fail(i, "forget needs one child");
          break;
        }
        auto expect = node.bag;
        if (std::binary_search(expect.begin(), expect.end(), node.vertex)) fail(i, "forgotten vertex still present");
        expect.insert(std::lower_bound(expect.begin(), expect.end(), node.vertex), node.vertex);
        if (expect != ntd.nodes[node.children[0]].bag) fail(i, "forget bag mismatch");
        break;
      }
      case NiceKind::join:
        if (node.children.size() != 2 || ntd.nodes[node.children[0]].bag != node.bag ||
            ntd.nodes[node.children[1]].bag != node.bag) {
          fail(i, "join needs two children with identical bags");
        }
        break;
    }
  }
  return report;
}

inline nlohmann::json decomposition_to_json(const TreeDecomposition& td, const std::vector<std::string>& names) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    std::vector<std::string> bag;
    for (auto v : td.bags[i]) bag.push_back(names.at(v));
    nodes.push_back({{"id", i}, {"bag", bag}, {"kind", "bag"}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : td.tree_edges) edges.push_back({a, b});
  return {{"nodes", nodes}, {"edges", edges}, {"root", 0}, {"width", td.width()}};
}

inline nlohmann::json decomposition_to_json(const NiceTreeDecomposition& ntd,
                                            const std::vector<std::string>& names) {
  nlohmann::json nodes = nlohmann::json::array();
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const auto& node = ntd.nodes[i];
    std::vector<std::string> bag;
    for (auto v : node.bag) bag.push_back(names.at(v));
    nlohmann::json j = {{"id", i}, {"bag", bag}, {"kind", to_string(node.kind)}};
    if (node.kind == NiceKind::introduce || node.kind == NiceKind::forget) j["vertex"] = names.at(node.vertex);
    nodes.push_back(std::move(j));
    for (auto c : node.children) edges.push_back({i, c});
  }
  return {{"nodes", nodes}, {"edges", edges}, {"root", ntd.root}, {"width", ntd.width()}};
}

}  // namespace tsd
