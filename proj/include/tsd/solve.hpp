#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "tsd/branch_and_bound.hpp"
#include "tsd/brute_force.hpp"
#include "tsd/cutting_plane.hpp"
#include "tsd/dp_solver.hpp"
#include "tsd/event_graph.hpp"
#include "tsd/heuristic.hpp"
#include "tsd/ilp_model.hpp"
#include "tsd/location_graph.hpp"
#include "tsd/reduction.hpp"
#include "tsd/tree_decomposition.hpp"

namespace tsd {

enum class Method { brute, dp, ilp, ilp_tw, cutplane };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::brute: return "brute";
    case Method::dp: return "dp";
    case Method::ilp: return "ilp";
    case Method::ilp_tw: return "ilp-tw";
    case Method::cutplane: return "cutplane";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  for (auto m : {Method::brute, Method::dp, Method::ilp, Method::ilp_tw, Method::cutplane}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown method '" + s + "' (expected brute|dp|ilp|ilp-tw|cutplane)");
}

inline const std::vector<Method>& all_methods() {
  static const std::vector<Method> v{Method::brute, Method::dp, Method::ilp, Method::ilp_tw, Method::cutplane};
  return v;
}

struct SolveStats {
  double wall_ms = 0;
  std::uint64_t nodes = 0;  // branch nodes (ilp, ilp-tw, cutplane), orders (brute), nice nodes (dp)
  std::size_t rounds = 0;
  std::size_t cuts = 0;
  std::size_t locations = 0;
  std::size_t locations_reduced = 0;
  std::size_t reduction_steps = 0;
  std::size_t width = 0;  // decomposition width used (dp, ilp-tw)
  std::size_t max_table = 0;
  std::int64_t introduce_charges = 0;
  std::int64_t join_corrections = 0;
  std::size_t pair_vars = 0;
  std::size_t transitivity_rows = 0;
  std::optional<std::uint64_t> seed;
};

struct SolveResult {
  LocationOrder order;
  std::uint64_t turns = 0;
  Method method = Method::brute;
  bool optimal = true;  // false only when a time limit cut the search short
  SolveStats stats;
};

struct SolveOptions {
  bool reduce = true;
  ReduceMode reduce_mode = ReduceMode::chain;
  double time_limit_s = 0;  // <= 0: unlimited
  std::size_t cuts_per_round = 100;
  std::size_t brute_cap = kBruteForceCap;
  std::optional<std::uint64_t> seed;  // accepted for reproducibility records; all methods are deterministic
};

namespace detail {

/// Solves (rm, names) without reduction. Fills order/turns/optimal and method stats.
inline SolveResult solve_core(const EventGraph& g, const RestrictionMultiset& rm, Method method,
                              const SolveOptions& opt) {
  const auto& names = g.locations();
  SolveResult res;
  res.method = method;
  switch (method) {
    case Method::brute: {
      auto r = solve_brute_force(rm, names, opt.brute_cap);
      res.order = r.order;
      res.turns = r.turns;
      res.stats.nodes = r.orders_checked;
      break;
    }
    case Method::dp: {
      const Graph aug = build_augmented(g).graph();
      const auto ntd = make_nice(min_degree_decomposition(aug));
      auto r = solve_dp(rm, aug, ntd, names);
      res.order = r.order;
      res.turns = r.turns;
      res.stats.nodes = r.stats.nodes;
      res.stats.width = r.stats.width;
      res.stats.max_table = r.stats.max_table;
      res.stats.introduce_charges = r.stats.introduce_charges;
      res.stats.join_corrections = r.stats.join_corrections;
      break;
    }
    case Method::ilp:
    case Method::ilp_tw: {
      ILPModel m;
      if (method == Method::ilp) {
        m = build_ilp_naive(rm, names);
      } else {
        const Graph lg = build_location_graph(g).graph();
        const auto td = min_degree_decomposition(lg);
        res.stats.width = td.width();
        m = build_ilp_tw(rm, lg, td, names);
      }
      res.stats.pair_vars = m.pair_var_count();
      res.stats.transitivity_rows = m.transitivity_count();
      BBOptions bo;
      bo.time_limit_s = opt.time_limit_s;
      bo.hint = heuristic_order(rm, names);
      auto r = bb_solve(m, bo);
      res.stats.nodes = r.nodes;
      if (r.status == BBStatus::infeasible) throw std::logic_error("ordering model reported infeasible");
      if (r.has_solution) {
        res.order = order_from_assignment(r.assignment, names);
      } else {
        res.order = *bo.hint;
      }
      res.optimal = r.status == BBStatus::optimal;
      res.turns = violated_restrictions(rm, res.order);
      if (res.optimal && res.turns != static_cast<std::uint64_t>(r.objective)) {
        throw std::logic_error("extracted order has " + std::to_string(res.turns) + " turns, model objective " +
                               std::to_string(r.objective));
      }
      break;
    }
    case Method::cutplane: {
      CutPlaneOptions co;
      co.cuts_per_round = opt.cuts_per_round;
      co.time_limit_s = opt.time_limit_s;
      co.hint = heuristic_order(rm, names);
      auto r = solve_cutting_plane(rm, names, co);
      res.stats.nodes = r.nodes;
      res.stats.rounds = r.rounds;
      res.stats.cuts = r.cuts;
      res.stats.pair_vars = r.model.pair_var_count();
      res.stats.transitivity_rows = r.model.transitivity_count();
      if (r.status == BBStatus::infeasible) throw std::logic_error("ordering model reported infeasible");
      res.optimal = r.status == BBStatus::optimal;
      res.order = res.optimal ? order_from_assignment(r.assignment, names) : *co.hint;
      res.turns = violated_restrictions(rm, res.order);
      if (res.optimal && res.turns != static_cast<std::uint64_t>(r.objective)) {
        throw std::logic_error("cutting-plane order disagrees with its objective");
      }
      break;
    }
  }
  return res;
}

}  // namespace detail

/// End to end: optional reduction, the chosen exact method, then lifting the
/// order back to the original locations.
inline SolveResult solve(const EventGraph& g, Method method, const SolveOptions& opt = {}) {
  require_normalized(g, "solve");
  const auto start = std::chrono::steady_clock::now();
  SolveResult res;
  if (opt.reduce) {
    auto reduced = apply_rule_exhaustively(g, opt.reduce_mode);
    res = detail::solve_core(reduced.graph, extract_restrictions(reduced.graph), method, opt);
    res.stats.reduction_steps = reduced.report.steps.size();
    res.stats.locations_reduced = reduced.graph.location_count();
    res.order = lift_order(reduced.report, res.order);
    const auto lifted = count_turns(g, res.order);
    if (lifted != res.turns) {
      throw std::logic_error("lifted order has " + std::to_string(lifted) + " turns, reduced optimum " +
                             std::to_string(res.turns));
    }
  } else {
    res = detail::solve_core(g, extract_restrictions(g), method, opt);
    res.stats.locations_reduced = g.location_count();
  }
  res.stats.locations = g.location_count();
  res.stats.seed = opt.seed;
  res.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

/// Whole-instance brute force (no reduction).
inline SolveResult solve_brute_force(const EventGraph& g, std::size_t cap = kBruteForceCap) {
  SolveOptions opt;
  opt.reduce = false;
  opt.brute_cap = cap;
  return solve(g, Method::brute, opt);
}

/// DP over a caller-supplied nice decomposition of L'.
inline SolveResult solve_dp(const EventGraph& g, const NiceTreeDecomposition& ntd) {
  require_normalized(g, "solve_dp");
  const auto start = std::chrono::steady_clock::now();
  auto r = solve_dp(extract_restrictions(g), build_augmented(g).graph(), ntd, g.locations());
  SolveResult res;
  res.method = Method::dp;
  res.order = r.order;
  res.turns = r.turns;
  res.stats.nodes = r.stats.nodes;
  res.stats.width = r.stats.width;
  res.stats.max_table = r.stats.max_table;
  res.stats.introduce_charges = r.stats.introduce_charges;
  res.stats.join_corrections = r.stats.join_corrections;
  res.stats.locations = res.stats.locations_reduced = g.location_count();
  res.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

/// Timing fields are excluded so that repeated runs serialize identically.
inline nlohmann::json result_to_json(const EventGraph& g, const SolveResult& r, bool include_timing = false) {
  nlohmann::json stats = {{"nodes", r.stats.nodes},
                          {"rounds", r.stats.rounds},
                          {"cuts", r.stats.cuts},
                          {"locations", r.stats.locations},
                          {"locations_reduced", r.stats.locations_reduced},
                          {"reduction_steps", r.stats.reduction_steps},
                          {"width", r.stats.width},
                          {"max_table", r.stats.max_table},
                          {"introduce_charges", r.stats.introduce_charges},
                          {"join_corrections", r.stats.join_corrections},
                          {"pair_vars", r.stats.pair_vars},
                          {"transitivity_rows", r.stats.transitivity_rows},
                          {"optimal", r.optimal}};
  if (r.stats.seed) stats["seed"] = *r.stats.seed;
  if (include_timing) stats["wall_ms"] = r.stats.wall_ms;
  return {{"order", r.order.names(g)}, {"turns", r.turns}, {"method", to_string(r.method)}, {"stats", stats}};
}

}  // namespace tsd
