#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tsd {

/// Dense location index, assigned in first-appearance order.
using LocationId = std::uint32_t;
using TrainId = std::int64_t;
using Time = std::int64_t;

struct Event {
  LocationId loc = 0;
  Time t = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

struct TrainLine {
  TrainId id = 0;
  std::vector<Event> events;

  friend bool operator==(const TrainLine&, const TrainLine&) = default;
};

/// Reference to one event: train position in EventGraph::trains() and event index.
struct EventRef {
  std::size_t train = 0;
  std::size_t event = 0;

  friend bool operator==(const EventRef&, const EventRef&) = default;
};

struct Violation {
  std::string rule;
  std::string message;
  std::vector<EventRef> events;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Trains with time-stamped events over a set of named locations.
///
/// Trains are kept sorted by id (stable), so two graphs built from the same
/// trains in different input order compare equal. Locations keep the index
/// order they were given; the JSON reader assigns indices declared-first,
/// then in document order of first reference.
class EventGraph {
 public:
  EventGraph() = default;

  EventGraph(std::vector<std::string> locations, std::vector<TrainLine> trains)
      : locations_(std::move(locations)), trains_(std::move(trains)) {
    index_.reserve(locations_.size());
    for (LocationId i = 0; i < locations_.size(); ++i) {
      if (!index_.emplace(locations_[i], i).second) {
        throw std::invalid_argument("duplicate location identifier '" + locations_[i] + "'");
      }
    }
    for (const auto& train : trains_) {
      for (const auto& ev : train.events) {
        if (ev.loc >= locations_.size()) {
          throw std::invalid_argument("event references unknown location index");
        }
      }
    }
    std::stable_sort(trains_.begin(), trains_.end(),
                     [](const TrainLine& a, const TrainLine& b) { return a.id < b.id; });
  }

  const std::vector<std::string>& locations() const { return locations_; }
  const std::vector<TrainLine>& trains() const { return trains_; }

  std::size_t location_count() const { return locations_.size(); }
  std::size_t train_count() const { return trains_.size(); }

  std::size_t event_count() const {
    std::size_t n = 0;
    for (const auto& train : trains_) n += train.events.size();
    return n;
  }

  const std::string& name(LocationId loc) const { return locations_.at(loc); }

  LocationId id(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw std::out_of_range("unknown location '" + std::string(name) + "'");
    return it->second;
  }

  bool has_location(std::string_view name) const { return index_.count(std::string(name)) != 0; }

  /// True when no train has two consecutive events at the same location.
  bool is_normalized() const {
    for (const auto& train : trains_) {
      for (std::size_t i = 1; i < train.events.size(); ++i) {
        if (train.events[i].loc == train.events[i - 1].loc) return false;
      }
    }
    return true;
  }

  friend bool operator==(const EventGraph& a, const EventGraph& b) {
    return a.locations_ == b.locations_ && a.trains_ == b.trains_;
  }

 private:
  std::vector<std::string> locations_;
  std::vector<TrainLine> trains_;
  std::unordered_map<std::string, LocationId> index_;
};

/// Incrementally assembles an EventGraph from location names.
class EventGraphBuilder {
 public:
  LocationId location(const std::string& name) {
    auto [it, inserted] = index_.emplace(name, static_cast<LocationId>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }

  void add_train(TrainId id, const std::vector<std::pair<std::string, Time>>& events) {
    TrainLine line{id, {}};
    line.events.reserve(events.size());
    for (const auto& [loc, t] : events) line.events.push_back({location(loc), t});
    trains_.push_back(std::move(line));
  }

  void add_train(TrainLine line) { trains_.push_back(std::move(line)); }

  EventGraph build() const { return EventGraph(names_, trains_); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LocationId> index_;
  std::vector<TrainLine> trains_;
};

inline ValidationReport validate(const EventGraph& g) {
  ValidationReport report;
  const auto& trains = g.trains();

  std::map<TrainId, std::vector<std::size_t>> by_id;
  for (std::size_t i = 0; i < trains.size(); ++i) by_id[trains[i].id].push_back(i);
  for (const auto& [id, positions] : by_id) {
    if (positions.size() > 1) {
      Violation v{"duplicate-train-id", "train id " + std::to_string(id) + " used by " +
                                            std::to_string(positions.size()) + " trains", {}};
      for (auto p : positions) v.events.push_back({p, 0});
      report.violations.push_back(std::move(v));
    }
  }

  for (std::size_t i = 0; i < trains.size(); ++i) {
    const auto& ev = trains[i].events;
    if (ev.empty()) {
      report.violations.push_back(
          {"empty-train", "train " + std::to_string(trains[i].id) + " has no events", {{i, 0}}});
      continue;
    }
    for (std::size_t j = 1; j < ev.size(); ++j) {
      if (ev[j].t <= ev[j - 1].t) {
        report.violations.push_back(
            {"non-increasing-time",
             "train " + std::to_string(trains[i].id) + ": event " + std::to_string(j) + " at t=" +
                 std::to_string(ev[j].t) + " does not follow t=" + std::to_string(ev[j - 1].t),
             {{i, j - 1}, {i, j}}});
      }
    }
  }

  // Two events sharing a time must differ in location; same-train pairs are
  // already reported as non-increasing times.
  std::map<std::pair<Time, LocationId>, std::vector<EventRef>> at;
  for (std::size_t i = 0; i < trains.size(); ++i) {
    for (std::size_t j = 0; j < trains[i].events.size(); ++j) {
      const auto& e = trains[i].events[j];
      at[{e.t, e.loc}].push_back({i, j});
    }
  }
  for (const auto& [key, refs] : at) {
    if (refs.size() < 2) continue;
    bool multi_train = false;
    for (const auto& r : refs) multi_train |= r.train != refs.front().train;
    if (!multi_train) continue;
    report.violations.push_back({"same-time-same-location",
                                 std::to_string(refs.size()) + " events at location '" +
                                     g.name(key.second) + "' at t=" + std::to_string(key.first),
                                 refs});
  }
  return report;
}

class InvalidGraphError : public std::runtime_error {
 public:
  explicit InvalidGraphError(ValidationReport report)
      : std::runtime_error("event graph violates " + std::to_string(report.violations.size()) +
                           " validity rule(s)"),
        report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Merges runs of same-location consecutive events, keeping the earliest.
inline EventGraph normalize(const EventGraph& g) {
  auto report = validate(g);
  if (!report.ok()) throw InvalidGraphError(std::move(report));
  std::vector<TrainLine> trains;
  trains.reserve(g.train_count());
  for (const auto& train : g.trains()) {
    TrainLine line{train.id, {}};
    for (const auto& ev : train.events) {
      if (line.events.empty() || line.events.back().loc != ev.loc) line.events.push_back(ev);
    }
    trains.push_back(std::move(line));
  }
  return EventGraph(g.locations(), std::move(trains));
}

inline void require_normalized(const EventGraph& g, const char* what) {
  if (!g.is_normalized()) {
    throw std::invalid_argument(std::string(what) + " requires a normalized event graph");
  }
}

/// Location sequence of a train with same-location repeats collapsed.
inline std::vector<LocationId> compressed_walk(const TrainLine& train) {
  std::vector<LocationId> walk;
  walk.reserve(train.events.size());
  for (const auto& ev : train.events) {
    if (walk.empty() || walk.back() != ev.loc) walk.push_back(ev.loc);
  }
  return walk;
}

}  // namespace tsd
