#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsd/ilp_model.hpp"

namespace tsd {

/// Pairwise precedence read off a model solution. rel(p,q) is 1 when p is
/// above q, 0 when below, -1 when the model has no variable for {p,q}.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t n) : n_(n), rel_(n * n, -1) {}

  std::size_t size() const { return n_; }
  int rel(LocationId p, LocationId q) const { return rel_.at(static_cast<std::size_t>(p) * n_ + q); }
  bool defined(LocationId p, LocationId q) const { return rel(p, q) >= 0; }
  bool above(LocationId p, LocationId q) const { return rel(p, q) == 1; }

  void set(LocationId p, LocationId q, bool p_above) {
    rel_.at(static_cast<std::size_t>(p) * n_ + q) = p_above ? 1 : 0;
    rel_.at(static_cast<std::size_t>(q) * n_ + p) = p_above ? 0 : 1;
  }

  static Assignment from_model(const ILPModel& m, const std::vector<std::int8_t>& values) {
    Assignment a(m.location_count());
    for (std::uint32_t v = 0; v < m.vars.size(); ++v) {
      if (m.vars[v].kind == VarKind::pair) a.set(m.vars[v].p, m.vars[v].q, values.at(v) == 1);
    }
    return a;
  }

  static Assignment from_order(const LocationOrder& y) {
    Assignment a(y.size());
    const auto& s = y.sequence();
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) a.set(s[i], s[j], true);
    }
    return a;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::int8_t> rel_;
};

enum class BBStatus { optimal, infeasible, time_limit };

inline std::string to_string(BBStatus s) {
  switch (s) {
    case BBStatus::optimal: return "optimal";
    case BBStatus::infeasible: return "infeasible";
    case BBStatus::time_limit: return "time_limit";
  }
  return "?";
}

struct BBOptions {
  double time_limit_s = 0;  // <= 0: unlimited
  std::optional<LocationOrder> hint;  // guides branching order and preferred values
};

struct BBResult {
  BBStatus status = BBStatus::infeasible;
  bool has_solution = false;
  std::int64_t objective = 0;
  std::vector<std::int8_t> values;  // per model variable
  Assignment assignment;
  std::uint64_t nodes = 0;
};

namespace detail {

class BBSearch {
 public:
  BBSearch(const ILPModel& m, const BBOptions& opt) : m_(m), opt_(opt) {
    const std::size_t nv = m.vars.size();
    value_.assign(nv, -1);
    b_row_.resize(m.constraints.size(), kNone);
    occurs_.resize(nv);
    for (std::size_t c = 0; c < m.constraints.size(); ++c) {
      for (const auto& t : m.constraints[c].terms) {
        if (m.vars[t.var].kind == VarKind::violation) {
          if (b_row_[c] != kNone || t.coef <= 0) {
            throw std::invalid_argument("constraint " + std::to_string(c) +
                                        " needs at most one violation variable with positive coefficient");
          }
          b_row_[c] = t.var;
        } else {
          occurs_[t.var].push_back(static_cast<std::uint32_t>(c));
        }
      }
    }
    for (std::uint32_t v = 0; v < nv; ++v) {
      if (m.vars[v].kind == VarKind::violation && m.objective[v] < 0) {
        throw std::invalid_argument("violation weights must be non-negative");
      }
    }
    build_groups();
    order_branching();
  }

  BBResult run() {
    start_ = std::chrono::steady_clock::now();
    BBResult res;
    std::int64_t threshold = kInf;
    const auto incumbent = hint_solution();
    if (incumbent) threshold = objective_of(*incumbent) + 1;

    best_ = threshold;
    for (std::uint32_t c = 0; c < m_.constraints.size(); ++c) queue_.push_back(c);
    scope_ = &branch_;
    best_changed_ = true;
    Solution sol;
    std::optional<std::int64_t> found;
    if (propagate()) {
      for (auto v : trail_) sol.push_back({v, value_[v]});
      found = solve_all(split(branch_), threshold, sol);
    }
    res.nodes = nodes_;
    if (found) {
      res.values = value_;
      for (auto [v, val] : sol) res.values[v] = val;
      res.has_solution = true;
    } else if (incumbent) {
      res.values = *incumbent;  // nothing below the hint's objective
      res.has_solution = true;
    }
    if (res.has_solution) {
      res.objective = objective_of(res.values);
      res.assignment = Assignment::from_model(m_, res.values);
    }
    if (timed_out_) {
      res.status = BBStatus::time_limit;
    } else {
      res.status = res.has_solution ? BBStatus::optimal : BBStatus::infeasible;
    }
    return res;
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  const ILPModel& m_;
  const BBOptions& opt_;
  std::vector<std::int8_t> value_;     // pair vars: -1/0/1; violation vars: 0 or 1 (forced)
  std::vector<std::uint32_t> b_row_;   // violation var of each row, or kNone
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::vector<std::uint32_t> branch_;
  std::vector<std::int8_t> hint_value_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::uint32_t> queue_;
  std::int64_t lb_ = 0;     // weight of violation vars forced to 1
  std::int64_t extra_ = 0;  // sum of Group::extra
  std::int64_t best_ = kInf;
  bool best_changed_ = false;
  std::vector<std::int8_t> saved_;  // last value in a solution (hint at first)
  const std::vector<std::uint32_t>* scope_ = nullptr;  // pair vars of the component being searched
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::uint32_t> uf_parent_, uf_stamp_;
  std::uint32_t uf_generation_ = 0;

  using Solution = std::vector<std::pair<std::uint32_t, std::int8_t>>;

  // Restrictions over one location triple whose three transitivity rows are
  // present. Only one location of the triple can lie between the other two, so
  // every restriction whose middle is another location is violated.
  struct Middle {
    LocationId loc;
    std::int64_t weight;
    std::pair<std::uint32_t, bool> lit1, lit2;  // x(loc, o1), x(loc, o2)
  };
  struct Group {
    std::vector<Middle> middles;
    std::vector<std::uint32_t> bs;
    std::int64_t total = 0;
    std::int64_t extra = 0;  // bound minus the forced weight inside the group
  };
  std::vector<Group> groups_;
  std::vector<std::vector<std::uint32_t>> groups_of_;  // per variable

  void build_groups() {
    groups_of_.resize(m_.vars.size());
    std::map<std::array<LocationId, 3>, std::uint32_t> index;
    for (std::uint32_t v = 0; v < m_.vars.size(); ++v) {
      if (m_.vars[v].kind != VarKind::violation || m_.objective[v] == 0) continue;
      const auto& t = m_.restrictions.at(m_.vars[v].restriction).first;
      std::array<LocationId, 3> key{t.first, t.middle, t.last};
      std::sort(key.begin(), key.end());
      if (!closed_triangle(key)) continue;
      auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(groups_.size()));
      if (fresh) groups_.emplace_back();
      auto& g = groups_[it->second];
      g.bs.push_back(v);
      g.total += m_.objective[v];
      auto mid = std::find_if(g.middles.begin(), g.middles.end(), [&](const Middle& x) { return x.loc == t.middle; });
      if (mid == g.middles.end()) {
        g.middles.push_back({t.middle, 0, m_.literal(t.middle, t.first), m_.literal(t.middle, t.last)});
        mid = g.middles.end() - 1;
      }
      mid->weight += m_.objective[v];
    }
    for (std::uint32_t gi = 0; gi < groups_.size(); ++gi) {
      std::set<std::uint32_t> vars(groups_[gi].bs.begin(), groups_[gi].bs.end());
      for (const auto& mid : groups_[gi].middles) {
        vars.insert(mid.lit1.first);
        vars.insert(mid.lit2.first);
      }
      for (auto v : vars) groups_of_[v].push_back(gi);
      refresh(gi);
    }
  }

  bool closed_triangle(const std::array<LocationId, 3>& k) const {
    for (int i = 0; i < 3; ++i) {
      const LocationId a = k[(i + 1) % 3], c = k[(i + 2) % 3];
      if (!m_.has_pair(a, c) || !m_.has_pair(k[i], a) || !m_.has_pair(k[i], c)) return false;
      if (m_.transitivity_rows.count({m_.literal(a, c).first, k[i]}) == 0) return false;
    }
    return true;
  }

  int literal_value(std::pair<std::uint32_t, bool> lit) const {
    const auto v = value_[lit.first];
    if (v < 0) return -1;
    return lit.second ? 1 - v : v;
  }

  void refresh(std::uint32_t gi) {
    auto& g = groups_[gi];
    std::int64_t best_mid = -1;
    for (const auto& mid : g.middles) {
      const int a = literal_value(mid.lit1), b = literal_value(mid.lit2);
      if (a >= 0 && a == b) continue;  // mid is above or below both others
      best_mid = std::max(best_mid, mid.weight);
    }
    std::int64_t forced = 0;
    for (auto b : g.bs) forced += value_[b] == 1 ? m_.objective[b] : 0;
    const std::int64_t bound = best_mid < 0 ? g.total : g.total - best_mid;
    const std::int64_t extra = std::max<std::int64_t>(0, bound - forced);
    extra_ += extra - g.extra;
    if (extra > g.extra) best_changed_ = true;
    g.extra = extra;
  }

  std::int64_t group_extra(std::uint32_t v) const {
    std::int64_t e = 0;
    for (auto gi : groups_of_[v]) e += groups_[gi].extra;
    return e;
  }

  void order_branching() {
    const std::size_t n = m_.location_count();
    std::vector<std::uint32_t> rank(n);
    for (std::uint32_t p = 0; p < n; ++p) rank[p] = p;
    hint_value_.assign(m_.vars.size(), 1);
    if (opt_.hint) {
      if (opt_.hint->size() != n) throw std::invalid_argument("hint order does not match the model");
      for (std::uint32_t p = 0; p < n; ++p) rank[p] = opt_.hint->position(p);
    }
    for (std::uint32_t v = 0; v < m_.vars.size(); ++v) {
      if (m_.vars[v].kind != VarKind::pair) continue;
      branch_.push_back(v);
      hint_value_[v] = rank[m_.vars[v].p] < rank[m_.vars[v].q] ? 1 : 0;
    }
    auto key = [&](std::uint32_t v) {
      auto a = rank[m_.vars[v].p], b = rank[m_.vars[v].q];
      return std::pair{std::max(a, b), std::min(a, b)};
    };
    std::stable_sort(branch_.begin(), branch_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    for (std::uint32_t v = 0; v < m_.vars.size(); ++v) {
      if (m_.vars[v].kind == VarKind::violation) value_[v] = 0;
    }
    saved_ = hint_value_;
  }

  std::int8_t preferred(std::uint32_t v) const { return saved_[v]; }

  bool assign(std::uint32_t v, std::int8_t val) {
    value_[v] = val;
    trail_.push_back(v);
    for (auto gi : groups_of_[v]) refresh(gi);
    if (m_.vars[v].kind == VarKind::violation) {
      lb_ += m_.objective[v];
      if (lb_ + extra_ >= best_) return false;
      best_changed_ = true;  // budget shrank; more b rows may have become hard
      return true;
    }
    for (auto c : occurs_[v]) queue_.push_back(c);
    return true;
  }

  void undo(std::size_t size) {
    while (trail_.size() > size) {
      const auto v = trail_.back();
      trail_.pop_back();
      if (m_.vars[v].kind == VarKind::violation) {
        lb_ -= m_.objective[v];
        value_[v] = 0;
      } else {
        value_[v] = -1;
      }
      for (auto gi : groups_of_[v]) refresh(gi);
    }
    queue_.clear();
  }

  bool propagate() {
    for (;;) {
      if (lb_ + extra_ >= best_) {
        queue_.clear();
        return false;
      }
      while (!queue_.empty()) {
        const auto c = queue_.back();
        queue_.pop_back();
        if (lb_ + extra_ >= best_ || !visit(c)) {
          queue_.clear();
          return false;
        }
      }
      if (!best_changed_) return true;
      best_changed_ = false;
      for (auto v : *scope_) {
        if (value_[v] != -1) continue;
        for (auto c : occurs_[v]) {
          const auto b = b_row_[c];
          if (b != kNone && value_[b] == 0 && hard(b)) queue_.push_back(c);
        }
      }
      if (queue_.empty()) return true;
    }
  }

  bool visit(std::uint32_t c) {
    const auto& row = m_.constraints[c];
    std::int64_t reach = 0;  // largest achievable value of the pair part
    std::int64_t b_coef = 0;
    for (const auto& t : row.terms) {
      if (t.var == b_row_[c]) {
        b_coef = t.coef;
        continue;
      }
      const auto v = value_[t.var];
      if (v >= 0) {
        reach += t.coef * v;
      } else if (t.coef > 0) {
        reach += t.coef;
      }
    }
    const auto b = b_row_[c];
    if (b != kNone) {
      if (value_[b] == 1) return reach + b_coef >= row.rhs;
      if (reach < row.rhs) {
        if (reach + b_coef < row.rhs) return false;
        return assign(b, 1);
      }
      if (!hard(b)) return true;
    } else if (reach < row.rhs) {
      return false;
    }
    const std::int64_t slack = reach - row.rhs;
    for (const auto& t : row.terms) {
      if (t.var == b || value_[t.var] != -1) continue;
      const std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
      if (mag > slack) assign(t.var, t.coef > 0 ? 1 : 0);
    }
    return true;
  }

  // Setting b to 1 would reach the incumbent. Its own group's extra may drop
  // by at most the weight b adds, so only the other groups' extra is counted.
  bool hard(std::uint32_t b) const { return lb_ + extra_ - group_extra(b) + m_.objective[b] >= best_; }

  std::int64_t objective_of(const std::vector<std::int8_t>& values) const {
    std::int64_t z = 0;
    for (std::uint32_t v = 0; v < values.size(); ++v) z += m_.objective[v] * values[v];
    return z;
  }

  // Pair values of the hint with the cheapest consistent b values; none when
  // the hint breaks a row (a user row, say).
  std::optional<std::vector<std::int8_t>> hint_solution() const {
    if (!opt_.hint) return std::nullopt;
    std::vector<std::int8_t> values(m_.vars.size(), 0);
    for (auto v : branch_) values[v] = hint_value_[v];
    for (std::size_t c = 0; c < m_.constraints.size(); ++c) {
      const auto& row = m_.constraints[c];
      std::int64_t lhs = 0, b_coef = 0;
      for (const auto& t : row.terms) {
        if (t.var == b_row_[c]) {
          b_coef = t.coef;
        } else {
          lhs += t.coef * values[t.var];
        }
      }
      if (lhs >= row.rhs) continue;
      if (b_row_[c] == kNone || lhs + b_coef < row.rhs) return std::nullopt;
      values[b_row_[c]] = 1;
    }
    return values;
  }

  bool tick() {
    if (++nodes_ % 4096 == 0 && opt_.time_limit_s > 0) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
      if (el.count() > opt_.time_limit_s) timed_out_ = true;
    }
    return !timed_out_;
  }

  std::uint32_t uf_find(std::uint32_t x) {
    while (uf_parent_[x] != x) x = uf_parent_[x] = uf_parent_[uf_parent_[x]];
    return x;
  }

  void uf_touch(std::uint32_t x) {
    if (uf_stamp_[x] != uf_generation_) {
      uf_stamp_[x] = uf_generation_;
      uf_parent_[x] = x;
    }
  }

  void uf_union(std::uint32_t x, std::uint32_t y) {
    uf_touch(x);
    uf_touch(y);
    uf_parent_[uf_find(x)] = uf_find(y);
  }

  // True when the row holds for every completion of the current values.
  bool entailed(std::uint32_t c) const {
    const auto& row = m_.constraints[c];
    std::int64_t floor = 0;
    for (const auto& t : row.terms) {
      const auto v = value_[t.var];
      if (t.var == b_row_[c]) {
        floor += t.coef * v;
      } else if (v >= 0) {
        floor += t.coef * v;
      } else if (t.coef < 0) {
        floor += t.coef;
      }
    }
    return floor >= row.rhs;
  }

  // Unassigned pair vars of `comp`, grouped by the rows and triple groups
  // that still link them. Nodes: variables, then groups.
  std::vector<std::vector<std::uint32_t>> split(const std::vector<std::uint32_t>& comp) {
    const auto nv = static_cast<std::uint32_t>(m_.vars.size());
    if (uf_parent_.empty()) {
      uf_parent_.resize(nv + groups_.size());
      uf_stamp_.assign(nv + groups_.size(), 0);
    }
    ++uf_generation_;
    std::vector<std::uint32_t> open;
    for (auto v : comp) {
      if (value_[v] != -1) continue;
      open.push_back(v);
      uf_touch(v);
      for (auto c : occurs_[v]) {
        if (entailed(c)) continue;
        for (const auto& t : m_.constraints[c].terms) {
          if (t.var != v && value_[t.var] == -1) uf_union(v, t.var);
        }
        if (b_row_[c] != kNone) uf_union(v, b_row_[c]);
      }
      for (auto gi : groups_of_[v]) uf_union(v, nv + gi);
    }
    std::vector<std::vector<std::uint32_t>> out;
    std::map<std::uint32_t, std::size_t> slot;
    for (auto v : open) {  // comp is in branching order, so each part is too
      auto [it, fresh] = slot.emplace(uf_find(v), out.size());
      if (fresh) out.emplace_back();
      out[it->second].push_back(v);
    }
    return out;
  }

  // Parts are independent: each gets the threshold left by the ones before.
  std::optional<std::int64_t> solve_all(const std::vector<std::vector<std::uint32_t>>& parts, std::int64_t threshold,
                                        Solution& sol) {
    std::int64_t sum = 0;
    for (const auto& part : parts) {
      auto r = solve_part(part, threshold - sum, sol);
      if (!r) return std::nullopt;
      sum += *r;
    }
    return sum;
  }

  // Least increase of the bound lb_ + extra_ over completions of `part` that
  // stay below `threshold`; appends the completion to `sol`.
  std::optional<std::int64_t> solve_part(const std::vector<std::uint32_t>& part, std::int64_t threshold,
                                         Solution& sol) {
    const std::int64_t base = lb_ + extra_;
    std::uint32_t v = part.front();
    for (auto u : part) {
      if (occurs_[u].size() > occurs_[v].size()) v = u;
    }
    std::optional<std::int64_t> best;
    Solution best_sol;
    const std::int8_t first = preferred(v);
    for (int k = 0; k < 2 && tick(); ++k) {
      const auto val = static_cast<std::int8_t>(k == 0 ? first : 1 - first);
      const std::size_t mark = trail_.size();
      if (threshold < best_) best_changed_ = true;
      best_ = threshold;
      scope_ = &part;
      if (assign(v, val) && propagate()) {
        const std::int64_t here = lb_ + extra_;
        Solution branch;
        for (std::size_t i = mark; i < trail_.size(); ++i) branch.push_back({trail_[i], value_[trail_[i]]});
        auto rest = solve_all(split(part), threshold, branch);
        if (rest) {
          best = here - base + *rest;
          threshold = base + *best;
          best_sol = std::move(branch);
        }
      }
      undo(mark);
    }
    if (best) {
      for (auto [var, value] : best_sol) {
        if (m_.vars[var].kind == VarKind::pair) saved_[var] = value;
        sol.push_back({var, value});
      }
    }
    return best;
  }
};

}  // namespace detail

/// Exact 0/1 branch and bound over the pair variables; violation variables are
/// implied. Rows may hold at most one violation variable (positive coefficient).
inline BBResult bb_solve(const ILPModel& m, const BBOptions& options = {}) {
  detail::BBSearch search(m, options);
  return search.run();
}

}  // namespace tsd
