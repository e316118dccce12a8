#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tsd {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  std::size_t vertex_count() const { return adj_.size(); }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& a : adj_) m += a.size();
    return m / 2;
  }

  /// Adds {u,v}; self loops and duplicates are ignored.
  void add_edge(Vertex u, Vertex v) {
    if (u >= adj_.size() || v >= adj_.size()) throw std::out_of_range("edge endpoint out of range");
    if (u == v) return;
    auto insert = [](std::vector<Vertex>& list, Vertex x) {
      auto it = std::lower_bound(list.begin(), list.end(), x);
      if (it == list.end() || *it != x) list.insert(it, x);
    };
    insert(adj_[u], v);
    insert(adj_[v], u);
  }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& a = adj_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
};

/// Connected components of g after deleting the vertices flagged in `removed`.
/// Components are listed by smallest vertex; each component is sorted.
inline std::vector<std::vector<Vertex>> components(const Graph& g,
                                                   const std::vector<bool>& removed = {}) {
  const std::size_t n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != -1 || (!removed.empty() && removed[s])) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (comp[w] == -1 && (removed.empty() || !removed[w])) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

inline bool is_connected(const Graph& g) { return components(g).size() <= 1; }

}  // namespace tsd
