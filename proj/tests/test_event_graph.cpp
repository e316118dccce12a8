#include <gtest/gtest.h>

#include "tsd/event_graph.hpp"
#include "tsd/event_graph_json.hpp"

namespace {

tsd::EventGraph two_trains() {
  tsd::EventGraphBuilder b;
  b.add_train(7, {{"A", 0}, {"B", 5}, {"C", 9}});
  b.add_train(3, {{"C", 1}, {"B", 4}});
  return b.build();
}

std::vector<std::string> rules(const tsd::ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& v : r.violations) out.push_back(v.rule);
  return out;
}

}  // namespace

TEST(EventGraph, BuilderAssignsFirstAppearanceIndices) {
  auto g = two_trains();
  ASSERT_EQ(g.location_count(), 3u);
  EXPECT_EQ(g.id("A"), 0u);
  EXPECT_EQ(g.id("C"), 2u);
  EXPECT_EQ(g.name(1), "B");
  EXPECT_EQ(g.event_count(), 5u);
  EXPECT_TRUE(g.has_location("B"));
  EXPECT_FALSE(g.has_location("Z"));
  EXPECT_THROW(g.id("Z"), std::out_of_range);
}

TEST(EventGraph, TrainsSortedById) {
  auto g = two_trains();
  ASSERT_EQ(g.train_count(), 2u);
  EXPECT_EQ(g.trains()[0].id, 3);
  EXPECT_EQ(g.trains()[1].id, 7);
}

TEST(EventGraph, ConstructorRejectsBadInput) {
  EXPECT_THROW(tsd::EventGraph({"A", "A"}, {}), std::invalid_argument);
  EXPECT_THROW(tsd::EventGraph({"A"}, {{1, {{3, 0}}}}), std::invalid_argument);
}

TEST(Validate, AcceptsWellFormedGraph) { EXPECT_TRUE(tsd::validate(two_trains()).ok()); }

TEST(Validate, DuplicateTrainId) {
  tsd::EventGraphBuilder b;
  b.add_train(1, {{"A", 0}, {"B", 1}});
  b.add_train(1, {{"B", 5}, {"C", 6}});
  EXPECT_EQ(rules(tsd::validate(b.build())), std::vector<std::string>{"duplicate-train-id"});
}

TEST(Validate, EmptyTrain) {
  tsd::EventGraphBuilder b;
  b.add_train(2, std::vector<std::pair<std::string, tsd::Time>>{});
  auto r = tsd::validate(b.build());
  ASSERT_EQ(rules(r), std::vector<std::string>{"empty-train"});
  EXPECT_EQ(r.violations[0].events.size(), 1u);
}

TEST(Validate, NonIncreasingTimePerEvent) {
  tsd::EventGraphBuilder b;
  b.add_train(1, {{"A", 3}, {"B", 3}, {"C", 2}});
  auto r = tsd::validate(b.build());
  EXPECT_EQ(rules(r), (std::vector<std::string>{"non-increasing-time", "non-increasing-time"}));
}

TEST(Validate, SameTrainSameTimeIsNotAlsoACollision) {
  tsd::EventGraphBuilder b;
  b.add_train(1, {{"A", 3}, {"A", 3}});
  EXPECT_EQ(rules(tsd::validate(b.build())), std::vector<std::string>{"non-increasing-time"});
}

TEST(Validate, TwoTrainsSameTimeSameLocation) {
  tsd::EventGraphBuilder b;
  b.add_train(1, {{"A", 0}, {"B", 4}});
  b.add_train(2, {{"C", 1}, {"B", 4}});
  auto r = tsd::validate(b.build());
  ASSERT_EQ(rules(r), std::vector<std::string>{"same-time-same-location"});
  EXPECT_EQ(r.violations[0].events.size(), 2u);
}

TEST(Validate, InvalidGraphErrorCarriesReport) {
  tsd::EventGraphBuilder b;
  b.add_train(4, {{"A", 2}, {"B", 1}});
  try {
    tsd::normalize(b.build());
    FAIL() << "normalize accepted an invalid graph";
  } catch (const tsd::InvalidGraphError& e) {
    EXPECT_EQ(e.report().violations.size(), 1u);
  }
}

TEST(Normalize, MergesRepeatedStopsKeepingEarliest) {
  tsd::EventGraphBuilder b;
  b.add_train(1, {{"A", 0}, {"B", 2}, {"B", 3}, {"B", 5}, {"C", 8}});
  auto g = b.build();
  EXPECT_FALSE(g.is_normalized());
  auto n = tsd::normalize(g);
  EXPECT_TRUE(n.is_normalized());
  ASSERT_EQ(n.trains()[0].events.size(), 3u);
  EXPECT_EQ(n.trains()[0].events[1], (tsd::Event{g.id("B"), 2}));
  EXPECT_EQ(n.locations(), g.locations());
  EXPECT_EQ(tsd::normalize(n), n);
}

TEST(Normalize, CompressedWalk) {
  tsd::TrainLine line{1, {{0, 0}, {0, 1}, {2, 2}, {1, 3}, {1, 4}, {0, 5}}};
  EXPECT_EQ(tsd::compressed_walk(line), (std::vector<tsd::LocationId>{0, 2, 1, 0}));
}

TEST(Json, ParsesDeclaredLocationsFirst) {
  auto g = tsd::parse_event_graph(R"({"locations": ["Z", "Y"],
    "trains": [{"id": 5, "events": [{"loc": "X", "t": 0}, {"loc": "Y", "t": 3}]}]})");
  EXPECT_EQ(g.locations(), (std::vector<std::string>{"Z", "Y", "X"}));
  EXPECT_EQ(g.trains()[0].events[0].loc, 2u);
}

TEST(Json, RoundTrip) {
  auto g = two_trains();
  auto text = tsd::serialize_event_graph(g);
  EXPECT_EQ(tsd::parse_event_graph(text), g);
  EXPECT_EQ(tsd::serialize_event_graph(tsd::parse_event_graph(text)), text);
}

TEST(Json, ParseErrorHasPosition) {
  try {
    tsd::parse_event_graph("{\n  \"trains\": [,]\n}");
    FAIL() << "malformed JSON was accepted";
  } catch (const tsd::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(Json, SchemaErrorsNameTheField) {
  auto field_of = [](const std::string& text) {
    try {
      tsd::parse_event_graph(text);
    } catch (const tsd::SchemaError& e) {
      return e.field();
    }
    return std::string("<accepted>");
  };
  EXPECT_EQ(field_of("[]"), "$");
  EXPECT_EQ(field_of("{}"), "trains");
  EXPECT_EQ(field_of(R"({"trains": {}})"), "trains");
  EXPECT_EQ(field_of(R"({"locations": [1], "trains": []})"), "locations[0]");
  EXPECT_EQ(field_of(R"({"trains": [{"events": []}]})"), "trains[0].id");
  EXPECT_EQ(field_of(R"({"trains": [{"id": 0, "events": []}]})"), "trains[0].id");
  EXPECT_EQ(field_of(R"({"trains": [{"id": 1.5, "events": []}]})"), "trains[0].id");
  EXPECT_EQ(field_of(R"({"trains": [{"id": 1}]})"), "trains[0].events");
  EXPECT_EQ(field_of(R"({"trains": [{"id": 1, "events": [{"t": 0}]}]})"), "trains[0].events[0].loc");
  EXPECT_EQ(field_of(R"({"trains": [{"id": 1, "events": [{"loc": "A", "t": "x"}]}]})"),
            "trains[0].events[0].t");
  EXPECT_EQ(field_of(R"({"trains": []})"), "<accepted>");
}

TEST(Json, ReportListsRulesAndTrainIds) {
  tsd::EventGraphBuilder b;
  b.add_train(9, {{"A", 2}, {"B", 1}});
  auto g = b.build();
  auto j = tsd::report_to_json(g, tsd::validate(g));
  EXPECT_FALSE(j["valid"].get<bool>());
  ASSERT_EQ(j["violations"].size(), 1u);
  EXPECT_EQ(j["violations"][0]["rule"], "non-increasing-time");
  EXPECT_EQ(j["violations"][0]["events"][0]["train"], 9);
}
