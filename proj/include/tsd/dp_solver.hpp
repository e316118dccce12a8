#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsd/location_graph.hpp"
#include "tsd/tree_decomposition.hpp"

namespace tsd {

struct DPStats {
  std::size_t nodes = 0;
  std::size_t width = 0;
  std::size_t max_table = 0;        // largest number of table entries at one node
  std::uint64_t table_entries = 0;  // summed over nodes
  std::int64_t introduce_charges = 0;  // along the optimal witness
  std::int64_t join_corrections = 0;   // along the optimal witness
};

struct DPResult {
  LocationOrder order;
  std::uint64_t turns = 0;
  DPStats stats;
};

/// Largest bag the table-based solver accepts (tables hold |X|! entries).
inline constexpr std::size_t kDPMaxBag = 10;

namespace detail {

inline std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Lehmer rank of a permutation of 0..k-1.
inline std::uint64_t perm_rank(const std::vector<std::uint8_t>& seq) {
  const std::size_t k = seq.size();
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < k; ++j) smaller += seq[j] < seq[i];
    r = r * (k - i) + smaller;
  }
  return r;
}

inline void perm_unrank(std::uint64_t r, std::size_t k, std::vector<std::uint8_t>& seq) {
  std::vector<std::uint8_t> digits(k);
  for (std::size_t i = k; i-- > 0;) {
    const std::size_t base = k - i;
    digits[i] = static_cast<std::uint8_t>(r % base);
    r /= base;
  }
  std::vector<std::uint8_t> pool(k);
  for (std::size_t i = 0; i < k; ++i) pool[i] = static_cast<std::uint8_t>(i);
  seq.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    seq[i] = pool[digits[i]];
    pool.erase(pool.begin() + digits[i]);
  }
}

/// Restriction weights per unordered location triple, split by middle element.
struct TripleTable {
  std::map<std::array<LocationId, 3>, std::array<std::int64_t, 3>> counts;

  explicit TripleTable(const RestrictionMultiset& rm) {
    for (const auto& [t, w] : rm.restrictions) {
      std::array<LocationId, 3> key{t.first, t.middle, t.last};
      std::sort(key.begin(), key.end());
      const auto mid = static_cast<std::size_t>(std::find(key.begin(), key.end(), t.middle) - key.begin());
      counts[key][mid] += static_cast<std::int64_t>(w);
    }
  }

  const std::array<std::int64_t, 3>* find(LocationId a, LocationId b, LocationId c) const {
    std::array<LocationId, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    auto it = counts.find(key);
    return it == counts.end() ? nullptr : &it->second;
  }
};

/// Local triple of bag slots (i<j<l by vertex id) with its per-middle weights.
struct LocalTriple {
  std::array<std::uint8_t, 3> slot;
  std::array<std::int64_t, 3> w;
};

inline std::int64_t local_cost(const std::vector<LocalTriple>& triples, const std::vector<std::uint8_t>& pos) {
  std::int64_t cost = 0;
  for (const auto& t : triples) {
    const auto a = pos[t.slot[0]], b = pos[t.slot[1]], c = pos[t.slot[2]];
    if (t.w[0] && is_turn(b, a, c)) cost += t.w[0];
    if (t.w[1] && is_turn(a, b, c)) cost += t.w[1];
    if (t.w[2] && is_turn(a, c, b)) cost += t.w[2];
  }
  return cost;
}

}  // namespace detail

/// Exact dynamic program over a nice tree decomposition of the augmented
/// location graph L'. Each table maps an order of the bag to the fewest
/// restrictions, among those with all three locations introduced, violated by
/// a compatible order of everything below.
inline DPResult solve_dp(const RestrictionMultiset& rm, const Graph& augmented, const NiceTreeDecomposition& ntd,
                         const std::vector<std::string>& names) {
  const std::size_t n = rm.ground_size;
  if (names.size() != n || augmented.vertex_count() != n) {
    throw std::invalid_argument("location names / graph do not match the ground set");
  }
  auto report = validate_nice(augmented, ntd);
  if (!report.ok()) {
    throw std::invalid_argument("not a nice decomposition of the augmented location graph: " +
                                report.violations.front().message);
  }
  for (const auto& node : ntd.nodes) {
    if (node.bag.size() > kDPMaxBag) {
      throw std::invalid_argument("bag of size " + std::to_string(node.bag.size()) + " exceeds the limit of " +
                                  std::to_string(kDPMaxBag));
    }
  }
  const detail::TripleTable triples(rm);
  const std::size_t count = ntd.nodes.size();
  std::vector<std::vector<std::int64_t>> table(count);
  std::vector<std::vector<std::uint8_t>> argmin(count);
  std::vector<std::vector<detail::LocalTriple>> charged(count);  // introduce: new triples; join: all triples

  DPResult res;
  res.stats.nodes = count;
  res.stats.width = ntd.width();

  auto slot_of = [](const std::vector<Vertex>& bag, Vertex v) {
    return static_cast<std::uint8_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
  };
  auto bag_triples = [&](const std::vector<Vertex>& bag, int required_slot) {
    std::vector<detail::LocalTriple> out;
    const std::size_t k = bag.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        for (std::size_t l = j + 1; l < k; ++l) {
          if (required_slot >= 0 && static_cast<int>(i) != required_slot && static_cast<int>(j) != required_slot &&
              static_cast<int>(l) != required_slot) {
            continue;
          }
          if (const auto* w = triples.find(bag[i], bag[j], bag[l])) {
            out.push_back({{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j), static_cast<std::uint8_t>(l)},
                           *w});
          }
        }
      }
    }
    return out;
  };

  std::vector<std::uint8_t> seq, child_seq, pos;
  for (std::size_t u = 0; u < count; ++u) {
    const auto& node = ntd.nodes[u];
    const std::size_t k = node.bag.size();
    const std::uint64_t size = detail::factorial(k);
    auto& D = table[u];
    D.assign(size, 0);
    res.stats.max_table = std::max<std::size_t>(res.stats.max_table, size);
    res.stats.table_entries += size;
    switch (node.kind) {
      case NiceKind::leaf:
        break;
      case NiceKind::introduce: {
        const auto& Dc = table[node.children[0]];
        const std::uint8_t ps = slot_of(node.bag, node.vertex);
        charged[u] = bag_triples(node.bag, ps);
        for (std::uint64_t r = 0; r < size; ++r) {
          detail::perm_unrank(r, k, seq);
          pos.assign(k, 0);
          for (std::size_t i = 0; i < k; ++i) pos[seq[i]] = static_cast<std::uint8_t>(i);
          child_seq.clear();
          for (auto s : seq) {
            if (s != ps) child_seq.push_back(static_cast<std::uint8_t>(s > ps ? s - 1 : s));
          }
          D[r] = Dc[detail::perm_rank(child_seq)] + detail::local_cost(charged[u], pos);
        }
        break;
      }
      case NiceKind::forget: {
        const auto& child = ntd.nodes[node.children[0]];
        const auto& Dc = table[node.children[0]];
        const std::uint8_t ps = slot_of(child.bag, node.vertex);
        argmin[u].assign(size, 0);
        for (std::uint64_t r = 0; r < size; ++r) {
          detail::perm_unrank(r, k, seq);
          std::int64_t best = std::numeric_limits<std::int64_t>::max();
          for (std::size_t at = 0; at <= k; ++at) {
            child_seq.clear();
            for (std::size_t i = 0; i <= k; ++i) {
              if (i == at) child_seq.push_back(ps);
              if (i < k) child_seq.push_back(static_cast<std::uint8_t>(seq[i] >= ps ? seq[i] + 1 : seq[i]));
            }
            const auto v = Dc[detail::perm_rank(child_seq)];
            if (v < best) {
              best = v;
              argmin[u][r] = static_cast<std::uint8_t>(at);
            }
          }
          D[r] = best;
        }
        break;
      }
      case NiceKind::join: {
        const auto& D1 = table[node.children[0]];
        const auto& D2 = table[node.children[1]];
        charged[u] = bag_triples(node.bag, -1);
        for (std::uint64_t r = 0; r < size; ++r) {
          detail::perm_unrank(r, k, seq);
          pos.assign(k, 0);
          for (std::size_t i = 0; i < k; ++i) pos[seq[i]] = static_cast<std::uint8_t>(i);
          D[r] = D1[r] + D2[r] - detail::local_cost(charged[u], pos);
        }
        break;
      }
    }
    // Backtracking only needs the forget argmins.
    for (auto c : node.children) std::vector<std::int64_t>().swap(table[c]);
  }

  // Backtrack from the root (empty bag, single entry).
  std::vector<std::uint64_t> chosen(count, 0);
  std::vector<std::pair<LocationId, LocationId>> above;  // (a, b): a drawn above b
  for (std::size_t u = count; u-- > 0;) {
    const auto& node = ntd.nodes[u];
    const std::size_t k = node.bag.size();
    detail::perm_unrank(chosen[u], k, seq);
    for (std::size_t i = 1; i < k; ++i) above.emplace_back(node.bag[seq[i - 1]], node.bag[seq[i]]);
    switch (node.kind) {
      case NiceKind::leaf:
        break;
      case NiceKind::introduce: {
        const std::uint8_t ps = slot_of(node.bag, node.vertex);
        pos.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) pos[seq[i]] = static_cast<std::uint8_t>(i);
        res.stats.introduce_charges += detail::local_cost(charged[u], pos);
        child_seq.clear();
        for (auto s : seq) {
          if (s != ps) child_seq.push_back(static_cast<std::uint8_t>(s > ps ? s - 1 : s));
        }
        chosen[node.children[0]] = detail::perm_rank(child_seq);
        break;
      }
      case NiceKind::forget: {
        const auto& child = ntd.nodes[node.children[0]];
        const std::uint8_t ps = slot_of(child.bag, node.vertex);
        const std::size_t at = argmin[u][chosen[u]];
        child_seq.clear();
        for (std::size_t i = 0; i <= k; ++i) {
          if (i == at) child_seq.push_back(ps);
          if (i < k) child_seq.push_back(static_cast<std::uint8_t>(seq[i] >= ps ? seq[i] + 1 : seq[i]));
        }
        chosen[node.children[0]] = detail::perm_rank(child_seq);
        break;
      }
      case NiceKind::join: {
        pos.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) pos[seq[i]] = static_cast<std::uint8_t>(i);
        res.stats.join_corrections += detail::local_cost(charged[u], pos);
        chosen[node.children[0]] = chosen[node.children[1]] = chosen[u];
        break;
      }
    }
  }

  // Bag orders agree on shared pairs; merge them with name-priority Kahn.
  std::vector<std::vector<LocationId>> out(n);
  std::vector<int> indeg(n, 0);
  std::sort(above.begin(), above.end());
  above.erase(std::unique(above.begin(), above.end()), above.end());
  for (auto [a, b] : above) {
    out[a].push_back(b);
    ++indeg[b];
  }
  auto by_name = [&](LocationId a, LocationId b) { return names[a] > names[b]; };
  std::priority_queue<LocationId, std::vector<LocationId>, decltype(by_name)> ready(by_name);
  for (LocationId p = 0; p < n; ++p) {
    if (indeg[p] == 0) ready.push(p);
  }
  std::vector<LocationId> order;
  while (!ready.empty()) {
    auto p = ready.top();
    ready.pop();
    order.push_back(p);
    for (auto q : out[p]) {
      if (--indeg[q] == 0) ready.push(q);
    }
  }
  if (order.size() != n) throw std::logic_error("dp witness bag orders are inconsistent");
  res.order = LocationOrder::from_sequence(n, std::move(order));
  res.turns = static_cast<std::uint64_t>(table[ntd.root][0]);
  const auto check = violated_restrictions(rm, res.order);
  if (check != res.turns) {
    throw std::logic_error("dp witness has " + std::to_string(check) + " turns, table says " +
                           std::to_string(res.turns));
  }
  return res;
}

}  // namespace tsd
