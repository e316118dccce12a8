#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tsd/event_graph.hpp"

namespace tsd {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field, const std::string& what)
      : std::runtime_error("schema error at '" + field + "': " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
}

}  // namespace detail

/// Reads the canonical instance format:
/// {"locations": [..]?, "trains": [{"id": int>0, "events": [{"loc": str, "t": int}]}]}
inline EventGraph event_graph_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("$", "document must be an object");
  EventGraphBuilder builder;
  if (doc.contains("locations")) {
    const auto& locs = doc.at("locations");
    if (!locs.is_array()) throw SchemaError("locations", "must be an array of strings");
    for (std::size_t i = 0; i < locs.size(); ++i) {
      if (!locs[i].is_string()) {
        throw SchemaError("locations[" + std::to_string(i) + "]", "must be a string");
      }
      builder.location(locs[i].get<std::string>());
    }
  }
  if (!doc.contains("trains")) throw SchemaError("trains", "missing required field");
  const auto& trains = doc.at("trains");
  if (!trains.is_array()) throw SchemaError("trains", "must be an array");
  for (std::size_t i = 0; i < trains.size(); ++i) {
    const std::string where = "trains[" + std::to_string(i) + "]";
    const auto& tr = trains[i];
    if (!tr.is_object()) throw SchemaError(where, "must be an object");
    if (!tr.contains("id")) throw SchemaError(where + ".id", "missing required field");
    const auto& id = tr.at("id");
    if (!id.is_number_integer()) throw SchemaError(where + ".id", "must be an integer");
    if (id.get<std::int64_t>() <= 0) throw SchemaError(where + ".id", "must be positive");
    if (!tr.contains("events")) throw SchemaError(where + ".events", "missing required field");
    const auto& events = tr.at("events");
    if (!events.is_array()) throw SchemaError(where + ".events", "must be an array");
    TrainLine line{id.get<std::int64_t>(), {}};
    for (std::size_t j = 0; j < events.size(); ++j) {
      const std::string ew = where + ".events[" + std::to_string(j) + "]";
      const auto& ev = events[j];
      if (!ev.is_object()) throw SchemaError(ew, "must be an object");
      if (!ev.contains("loc")) throw SchemaError(ew + ".loc", "missing required field");
      if (!ev.at("loc").is_string()) throw SchemaError(ew + ".loc", "must be a string");
      if (!ev.contains("t")) throw SchemaError(ew + ".t", "missing required field");
      if (!ev.at("t").is_number_integer()) throw SchemaError(ew + ".t", "must be an integer");
      line.events.push_back({builder.location(ev.at("loc").get<std::string>()),
                             ev.at("t").get<std::int64_t>()});
    }
    builder.add_train(std::move(line));
  }
  return builder.build();
}

inline EventGraph parse_event_graph(std::string_view text) {
  return event_graph_from_json(detail::parse_json_text(text));
}

/// Canonical form: explicit location list in index order, trains sorted by id.
inline json event_graph_to_json(const EventGraph& g) {
  json trains = json::array();
  for (const auto& train : g.trains()) {
    json events = json::array();
    for (const auto& ev : train.events) events.push_back({{"loc", g.name(ev.loc)}, {"t", ev.t}});
    trains.push_back({{"id", train.id}, {"events", std::move(events)}});
  }
  return {{"locations", g.locations()}, {"trains", std::move(trains)}};
}

inline std::string serialize_event_graph(const EventGraph& g) {
  return event_graph_to_json(g).dump(2) + "\n";
}

inline json report_to_json(const EventGraph& g, const ValidationReport& report) {
  json list = json::array();
  for (const auto& v : report.violations) {
    json refs = json::array();
    for (const auto& r : v.events) {
      json ref = {{"train_index", r.train}, {"event_index", r.event}};
      if (r.train < g.train_count()) ref["train"] = g.trains()[r.train].id;
      refs.push_back(std::move(ref));
    }
    list.push_back({{"rule", v.rule}, {"message", v.message}, {"events", std::move(refs)}});
  }
  return {{"valid", report.ok()}, {"violations", std::move(list)}};
}

}  // namespace tsd
