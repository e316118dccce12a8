#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsd/branch_and_bound.hpp"
#include "tsd/ilp_model.hpp"

namespace tsd {

/// Cyclic triples (a, b, c) with a above b, b above c and c above a, where a
/// has the smallest name. Triples are scanned in name-lexicographic order.
inline std::vector<std::array<LocationId, 3>> find_triangle_violations(const Assignment& x,
                                                                       const std::vector<std::string>& names,
                                                                       std::size_t limit = 100) {
  const std::size_t n = x.size();
  std::vector<LocationId> ids(n);
  for (LocationId p = 0; p < n; ++p) ids[p] = p;
  std::sort(ids.begin(), ids.end(), [&](LocationId a, LocationId b) { return names[a] < names[b]; });
  std::vector<std::array<LocationId, 3>> out;
  for (std::size_t i = 0; i < n && out.size() < limit; ++i) {
    for (std::size_t j = i + 1; j < n && out.size() < limit; ++j) {
      const LocationId a = ids[i], b = ids[j];
      if (!x.defined(a, b)) continue;
      for (std::size_t k = j + 1; k < n && out.size() < limit; ++k) {
        const LocationId c = ids[k];
        if (!x.defined(a, c) || !x.defined(b, c)) continue;
        if (x.above(a, b) && x.above(b, c) && x.above(c, a)) out.push_back({a, b, c});
        else if (x.above(a, c) && x.above(c, b) && x.above(b, a)) out.push_back({a, c, b});
      }
    }
  }
  return out;
}

/// Top-to-bottom order consistent with every defined precedence; ties go to
/// the smaller name. Throws if the precedences contain a cycle.
inline LocationOrder order_from_assignment(const Assignment& x, const std::vector<std::string>& names) {
  const std::size_t n = x.size();
  if (names.size() != n) throw std::invalid_argument("location names do not match the assignment");
  std::vector<int> indeg(n, 0);
  for (LocationId p = 0; p < n; ++p) {
    for (LocationId q = 0; q < n; ++q) {
      if (p != q && x.above(p, q)) ++indeg[q];
    }
  }
  auto by_name = [&](LocationId a, LocationId b) { return names[a] > names[b]; };
  std::priority_queue<LocationId, std::vector<LocationId>, decltype(by_name)> ready(by_name);
  for (LocationId p = 0; p < n; ++p) {
    if (indeg[p] == 0) ready.push(p);
  }
  std::vector<LocationId> seq;
  while (!ready.empty()) {
    auto p = ready.top();
    ready.pop();
    seq.push_back(p);
    for (LocationId q = 0; q < n; ++q) {
      if (q != p && x.above(p, q) && --indeg[q] == 0) ready.push(q);
    }
  }
  if (seq.size() != n) throw std::invalid_argument("assignment is cyclic; no consistent order exists");
  return LocationOrder::from_sequence(n, std::move(seq));
}

struct CutPlaneOptions {
  std::size_t cuts_per_round = 100;  // triangles added per round
  double time_limit_s = 0;
  std::optional<LocationOrder> hint;
};

struct CutPlaneResult {
  BBStatus status = BBStatus::infeasible;
  Assignment assignment;
  std::int64_t objective = 0;
  std::size_t rounds = 0;
  std::size_t cuts = 0;  // transitivity rows added
  std::uint64_t nodes = 0;
  ILPModel model;  // final model, including the added rows
};

/// Solves the model without transitivity rows, adds the rows of up to
/// `cuts_per_round` cyclic triangles, and repeats until the solution is
/// transitive. Every round solves its relaxation exactly.
inline CutPlaneResult solve_cutting_plane(const RestrictionMultiset& rm, const std::vector<std::string>& names,
                                          const CutPlaneOptions& options = {}) {
  if (options.cuts_per_round == 0) throw std::invalid_argument("cuts_per_round must be positive");
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  CutPlaneResult res;
  res.model = build_ilp_naive(rm, names, false);
  for (;;) {
    BBOptions bo;
    bo.hint = options.hint;
    if (options.time_limit_s > 0) {
      std::chrono::duration<double> el = clock::now() - start;
      bo.time_limit_s = options.time_limit_s - el.count();
      if (bo.time_limit_s <= 0) {
        res.status = BBStatus::time_limit;
        return res;
      }
    }
    auto r = bb_solve(res.model, bo);
    ++res.rounds;
    res.nodes += r.nodes;
    res.status = r.status;
    if (!r.has_solution || r.status != BBStatus::optimal) return res;
    res.assignment = r.assignment;
    res.objective = r.objective;
    auto triangles = find_triangle_violations(r.assignment, names, options.cuts_per_round);
    if (triangles.empty()) return res;
    for (const auto& [a, b, c] : triangles) {
      // all three transitivity rows of the triple; together they exclude both cyclic orientations
      res.cuts += res.model.add_transitivity(a, b, c);
      res.cuts += res.model.add_transitivity(b, c, a);
      res.cuts += res.model.add_transitivity(c, a, b);
    }
  }
}

}  // namespace tsd
