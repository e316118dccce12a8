#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "tsd/graph.hpp"
#include "tsd/location_graph.hpp"
#include "tsd/tree_decomposition.hpp"

namespace tsd {

enum class VarKind { pair, violation };

/// x_pq (p before q, i.e. p drawn higher) with name(p) < name(q); x_qp is
/// represented as 1 - x_pq. Or b_i, the violation flag of restriction i.
struct Variable {
  VarKind kind = VarKind::pair;
  LocationId p = 0;
  LocationId q = 0;
  std::size_t restriction = 0;
};

struct Term {
  std::uint32_t var = 0;
  std::int64_t coef = 0;
};

enum class RowKind { transitivity, violation, user };

/// sum(coef * var) >= rhs
struct Constraint {
  std::vector<Term> terms;
  std::int64_t rhs = 0;
  RowKind kind = RowKind::user;
};

struct ILPModel {
  std::vector<std::string> location_names;
  std::vector<Variable> vars;
  std::vector<Constraint> constraints;
  std::vector<std::int64_t> objective;  // per variable; nonzero only on b_i
  std::vector<std::pair<Triple, std::uint64_t>> restrictions;  // b_i <-> restrictions[i]
  std::map<Edge, std::uint32_t> pair_index;  // key (min id, max id)
  std::set<std::pair<std::uint32_t, LocationId>> transitivity_rows;  // ({p,r} var, middle q)

  std::size_t location_count() const { return location_names.size(); }
  std::size_t pair_var_count() const { return pair_index.size(); }
  std::size_t violation_var_count() const { return restrictions.size(); }
  std::size_t transitivity_count() const { return transitivity_rows.size(); }

  bool has_pair(LocationId a, LocationId b) const { return pair_index.count(make_edge(a, b)) != 0; }

  /// (var, negated): x_ab == var when !negated, 1 - var otherwise.
  std::pair<std::uint32_t, bool> literal(LocationId a, LocationId b) const {
    auto it = pair_index.find(make_edge(a, b));
    if (it == pair_index.end()) {
      throw std::out_of_range("no pair variable for {" + location_names.at(a) + "," + location_names.at(b) + "}");
    }
    return {it->second, vars[it->second].p != a};
  }

  std::uint32_t add_pair(LocationId a, LocationId b) {
    auto key = make_edge(a, b);
    auto it = pair_index.find(key);
    if (it != pair_index.end()) return it->second;
    if (location_names.at(b) < location_names.at(a)) std::swap(a, b);
    vars.push_back({VarKind::pair, a, b, 0});
    objective.push_back(0);
    auto id = static_cast<std::uint32_t>(vars.size() - 1);
    pair_index.emplace(key, id);
    return id;
  }

  /// Row x_pr >= x_pq + x_qr - 1 for pair {p,r} (oriented as its variable) and middle q.
  bool add_transitivity(LocationId a, LocationId q, LocationId c) {
    auto [pr, neg] = literal(a, c);
    (void)neg;
    if (!transitivity_rows.insert({pr, q}).second) return false;
    const LocationId p = vars[pr].p, r = vars[pr].q;
    Expr e;
    e.add(*this, p, r, 1);
    e.add(*this, p, q, -1);
    e.add(*this, q, r, -1);
    e.constant += 1;
    constraints.push_back(e.row(RowKind::transitivity));
    return true;
  }

  /// Forces the literal x_ab to `value` (a user row; used for experiments and tests).
  void fix(LocationId a, LocationId b, bool value) {
    Expr e;
    e.add(*this, a, b, value ? 1 : -1);
    e.constant += value ? -1 : 0;
    constraints.push_back(e.row(RowKind::user));
  }

  /// Linear expression over literals; `row()` yields expr >= 0.
  struct Expr {
    std::map<std::uint32_t, std::int64_t> coefs;
    std::int64_t constant = 0;

    void add(const ILPModel& m, LocationId a, LocationId b, std::int64_t coef) {
      auto [v, negated] = m.literal(a, b);
      if (negated) {
        constant += coef;
        coefs[v] -= coef;
      } else {
        coefs[v] += coef;
      }
    }

    Constraint row(RowKind kind) const {
      Constraint c{{}, -constant, kind};
      for (auto [v, k] : coefs) {
        if (k != 0) c.terms.push_back({v, k});
      }
      return c;
    }
  };
};

namespace detail {

inline void add_violation_rows(ILPModel& m, const RestrictionMultiset& rm) {
  for (const auto& [t, mult] : rm.restrictions) {
    const std::size_t i = m.restrictions.size();
    m.restrictions.emplace_back(t, mult);
    m.vars.push_back({VarKind::violation, 0, 0, i});
    m.objective.push_back(static_cast<std::int64_t>(mult));
    const auto b = static_cast<std::uint32_t>(m.vars.size() - 1);
    // b_i >= x_qp + x_qr - 1  and  b_i >= x_pq + x_rq - 1
    for (int side = 0; side < 2; ++side) {
      ILPModel::Expr e;
      e.coefs[b] += 1;
      if (side == 0) {
        e.add(m, t.middle, t.first, -1);
        e.add(m, t.middle, t.last, -1);
      } else {
        e.add(m, t.first, t.middle, -1);
        e.add(m, t.last, t.middle, -1);
      }
      e.constant += 1;
      m.constraints.push_back(e.row(RowKind::violation));
    }
  }
}

inline void check_names(const RestrictionMultiset& rm, const std::vector<std::string>& names) {
  if (names.size() != rm.ground_size) throw std::invalid_argument("location names do not match the ground set");
}

/// Pair variables in (name p, name q) order so ids are independent of insertion.
inline void add_pairs_sorted(ILPModel& m, std::vector<Edge> pairs) {
  const auto& nm = m.location_names;
  for (auto& e : pairs) {
    if (nm[e.second] < nm[e.first]) std::swap(e.first, e.second);
  }
  std::sort(pairs.begin(), pairs.end(), [&](const Edge& a, const Edge& b) {
    return std::tie(nm[a.first], nm[a.second]) < std::tie(nm[b.first], nm[b.second]);
  });
  for (auto [a, b] : pairs) m.add_pair(a, b);
}

inline void add_transitivity_for(ILPModel& m, const std::vector<LocationId>& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      for (auto q : set) {
        if (q != set[i] && q != set[j]) m.add_transitivity(set[i], q, set[j]);
      }
    }
  }
}

}  // namespace detail

/// Full linear-ordering model: one variable per unordered pair, all C(n,2)(n-2)
/// transitivity rows, two violation rows per distinct restriction.
inline ILPModel build_ilp_naive(const RestrictionMultiset& rm, const std::vector<std::string>& names,
                                bool with_transitivity = true) {
  detail::check_names(rm, names);
  ILPModel m;
  m.location_names = names;
  const auto n = static_cast<LocationId>(names.size());
  std::vector<Edge> pairs;
  for (LocationId a = 0; a < n; ++a) {
    for (LocationId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  detail::add_pairs_sorted(m, std::move(pairs));
  if (with_transitivity) {
    std::vector<LocationId> all(n);
    for (LocationId a = 0; a < n; ++a) all[a] = a;
    std::sort(all.begin(), all.end(), [&](LocationId a, LocationId b) { return names[a] < names[b]; });
    detail::add_transitivity_for(m, all);
  }
  detail::add_violation_rows(m, rm);
  return m;
}

/// Bag-restricted model: pair variables only for pairs sharing a bag and
/// transitivity rows only for triples inside one bag.
inline ILPModel build_ilp_tw(const RestrictionMultiset& rm, const Graph& location_graph,
                             const TreeDecomposition& td, const std::vector<std::string>& names) {
  detail::check_names(rm, names);
  if (location_graph.vertex_count() != names.size()) {
    throw std::invalid_argument("location graph does not match the ground set");
  }
  auto report = validate_decomposition(location_graph, td);
  if (!report.ok()) {
    throw std::invalid_argument("tree decomposition is invalid for the location graph: " +
                                report.violations.front().message);
  }
  ILPModel m;
  m.location_names = names;
  std::set<Edge> pairs;
  for (const auto& bag : td.bags) {
    for (std::size_t i = 0; i < bag.size(); ++i) {
      for (std::size_t j = i + 1; j < bag.size(); ++j) pairs.insert(make_edge(bag[i], bag[j]));
    }
  }
  detail::add_pairs_sorted(m, {pairs.begin(), pairs.end()});
  for (const auto& bag : td.bags) {
    std::vector<LocationId> sorted(bag.begin(), bag.end());
    std::sort(sorted.begin(), sorted.end(), [&](LocationId a, LocationId b) { return names[a] < names[b]; });
    detail::add_transitivity_for(m, sorted);
  }
  for (const auto& [t, mult] : rm.restrictions) {
    if (!m.has_pair(t.first, t.middle) || !m.has_pair(t.middle, t.last)) {
      throw std::invalid_argument("restriction uses a pair that shares no bag; decomposition is not of this instance");
    }
  }
  detail::add_violation_rows(m, rm);
  return m;
}

namespace detail {

inline std::string lp_sanitize(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out;
}

inline std::vector<std::string> lp_names(const ILPModel& m) {
  auto build = [&](bool by_index) {
    std::vector<std::string> out;
    for (const auto& v : m.vars) {
      if (v.kind == VarKind::violation) {
        out.push_back("b_" + std::to_string(v.restriction));
      } else if (by_index) {
        out.push_back("x_" + std::to_string(v.p) + "_" + std::to_string(v.q));
      } else {
        out.push_back("x_" + lp_sanitize(m.location_names[v.p]) + "_" + lp_sanitize(m.location_names[v.q]));
      }
    }
    return out;
  };
  auto names = build(false);
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size()) names = build(true);
  return names;
}

inline void lp_terms(std::ostream& os, const std::vector<Term>& terms, const std::vector<std::string>& names) {
  bool first = true;
  for (const auto& t : terms) {
    if (t.coef == 0) continue;
    const std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
    if (first) {
      os << (t.coef < 0 ? "- " : "");
    } else {
      os << (t.coef < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag << ' ';
    os << names[t.var];
    first = false;
  }
  if (first) os << "0 " << (names.empty() ? "" : names.front());
}

}  // namespace detail

/// CPLEX-LP text. Violation rows list b_i first. Deterministic byte output.
inline std::string export_lp(const ILPModel& m) {
  const auto names = detail::lp_names(m);
  std::ostringstream os;
  os << "\\ turn minimization model: " << m.location_count() << " locations, " << m.pair_var_count()
     << " pair variables, " << m.violation_var_count() << " violation variables\n";
  os << "Minimize\n obj:";
  std::vector<Term> obj;
  for (std::uint32_t v = 0; v < m.vars.size(); ++v) {
    if (m.objective[v] != 0) obj.push_back({v, m.objective[v]});
  }
  if (!obj.empty()) {
    os << ' ';
    detail::lp_terms(os, obj, names);
  }
  os << "\nSubject To\n";
  std::size_t tr = 0, vi = 0, us = 0;
  for (const auto& c : m.constraints) {
    std::vector<Term> terms = c.terms;
    std::stable_partition(terms.begin(), terms.end(),
                          [&](const Term& t) { return m.vars[t.var].kind == VarKind::violation; });
    switch (c.kind) {
      case RowKind::transitivity: os << " tr_" << tr++ << ": "; break;
      case RowKind::violation: os << " vi_" << vi++ << ": "; break;
      case RowKind::user: os << " us_" << us++ << ": "; break;
    }
    detail::lp_terms(os, terms, names);
    os << " >= " << c.rhs << '\n';
  }
  os << "Binary\n";
  for (const auto& n : names) os << ' ' << n << '\n';
  os << "End\n";
  return os.str();
}

}  // namespace tsd
