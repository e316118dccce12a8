#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsd/tsd.hpp"

TEST(Rng, FixedSequenceAndRanges) {
  tsd::Rng a(7), b(7), c(8);
  const auto first = a.next();
  EXPECT_EQ(first, b.next());
  EXPECT_NE(first, c.next());
  tsd::Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const auto u = r.uniform(-3, 4);
    EXPECT_GE(u, -3);
    EXPECT_LE(u, 4);
    const auto x = r.real();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_THROW(r.uniform(2, 1), std::invalid_argument);
  auto s = r.sorted_sample(10, 14, 5);
  EXPECT_EQ(s, (std::vector<std::int64_t>{10, 11, 12, 13, 14}));
  EXPECT_THROW(r.sorted_sample(0, 1, 3), std::invalid_argument);
}

TEST(RandomEventGraph, DeterministicPerSeed) {
  auto a = tsd::gen_random_event_graph(9, 6, 7, 3);
  EXPECT_EQ(a, tsd::gen_random_event_graph(9, 6, 7, 3));
  EXPECT_NE(tsd::serialize_event_graph(a), tsd::serialize_event_graph(tsd::gen_random_event_graph(9, 6, 7, 4)));
}

TEST(RandomEventGraph, ValidNormalizedAndWellShaped) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    tsd::Rng pick(seed);
    const auto n = static_cast<std::size_t>(pick.uniform(1, 12));
    const auto trains = static_cast<std::size_t>(pick.uniform(1, 8));
    const auto max_len = static_cast<std::size_t>(pick.uniform(1, 10));
    auto g = tsd::gen_random_event_graph(n, trains, max_len, seed);
    EXPECT_TRUE(tsd::validate(g).ok()) << "seed " << seed;
    EXPECT_EQ(g.location_count(), n);
    EXPECT_EQ(g.train_count(), trains);
    for (const auto& t : g.trains()) {
      EXPECT_GE(t.events.size(), 1u);
      EXPECT_LE(t.events.size(), max_len);
    }
    EXPECT_TRUE(g.is_normalized() || n == 1) << "seed " << seed;
  }
  EXPECT_THROW(tsd::gen_random_event_graph(0, 1, 1, 1), std::invalid_argument);
}

TEST(RandomGraph, Extremes) {
  EXPECT_EQ(tsd::gen_random_graph(6, 0.0, 1).edge_count(), 0u);
  EXPECT_EQ(tsd::gen_random_graph(6, 1.0, 1).edge_count(), 15u);
  EXPECT_EQ(tsd::gen_random_graph(8, 0.5, 9).edges(), tsd::gen_random_graph(8, 0.5, 9).edges());
}

TEST(Corridor, MetaAndStructure) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto gi = tsd::gen_corridor(14, 4, 5, seed);
    const auto& g = gi.graph;
    ASSERT_TRUE(tsd::validate(g).ok());
    EXPECT_EQ(g.location_count(), 14u);
    EXPECT_EQ(gi.meta["family"], "corridor");
    EXPECT_EQ(gi.meta["k_chain"], 5);
    EXPECT_EQ(gi.meta["n_trains"], g.train_count());
    EXPECT_GE(g.train_count(), 4u);
    auto chain = gi.meta["chain_locations"].get<std::vector<std::string>>();
    ASSERT_EQ(chain.size(), 5u);
    EXPECT_EQ(gi.meta["path_order"].get<std::vector<std::string>>(), g.locations());

    // chain locations are never endpoints; every other location is
    std::set<std::string> ends;
    for (auto t : tsd::find_terminals(g)) ends.insert(g.name(t));
    for (const auto& c : chain) EXPECT_FALSE(ends.count(c)) << c;
    EXPECT_EQ(ends.size(), 9u) << "seed " << seed;

    // the path order is drawn without turns
    auto y = tsd::LocationOrder::from_names(g, g.locations());
    EXPECT_EQ(tsd::count_turns(g, y), 0u);
  }
  EXPECT_THROW(tsd::gen_corridor(4, 1, 3, 1), std::invalid_argument);
  EXPECT_THROW(tsd::gen_corridor(1, 1, 0, 1), std::invalid_argument);
}

TEST(Corridor, Deterministic) {
  auto a = tsd::gen_corridor(10, 3, 2, 5);
  auto b = tsd::gen_corridor(10, 3, 2, 5);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.meta, b.meta);
}

TEST(Betweenness, HiddenOrderSatisfiesEveryTriple) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto sb = tsd::gen_satisfiable_betweenness(7, 9, seed);
    ASSERT_EQ(sb.instance.triples.size(), 9u);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < sb.hidden_order.size(); ++i) pos[sb.hidden_order[i]] = i;
    for (const auto& t : sb.instance.triples) {
      const auto a = pos.at(t[0]), m = pos.at(t[1]), c = pos.at(t[2]);
      EXPECT_TRUE((a < m && m < c) || (c < m && m < a));
    }
    auto g = tsd::from_betweenness(sb.instance, seed);
    ASSERT_TRUE(tsd::validate(g).ok());
    EXPECT_EQ(g.location_count(), 7u);
    EXPECT_EQ(g.train_count(), 9u);
    EXPECT_EQ(tsd::count_turns(g, tsd::LocationOrder::from_names(g, sb.hidden_order)), 0u);
  }
  EXPECT_THROW(tsd::gen_satisfiable_betweenness(2, 1, 1), std::invalid_argument);
}

TEST(Betweenness, EachTripleBecomesOneThreeStopTrain) {
  tsd::BetweennessInstance bi{{"a", "b", "c", "d"}, {{"a", "b", "c"}, {"d", "a", "b"}}};
  auto g = tsd::from_betweenness(bi, 1);
  EXPECT_EQ(g.locations(), (std::vector<std::string>{"a", "b", "c", "d"}));
  ASSERT_EQ(g.train_count(), 2u);
  for (const auto& t : g.trains()) EXPECT_EQ(t.events.size(), 3u);
  auto rm = tsd::extract_restrictions(g);
  EXPECT_EQ(rm.total_multiplicity(), 2u);
  bi.triples.push_back({"a", "b", "a"});
  EXPECT_THROW(tsd::from_betweenness(bi, 1), std::invalid_argument);
}

TEST(Maxcut, HubTrainsAndCutValue) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto graph = tsd::gen_random_graph(6, 0.5, seed);
    auto g = tsd::from_maxcut(graph, seed);
    ASSERT_TRUE(tsd::validate(g).ok());
    EXPECT_EQ(g.location_count(), 7u);
    EXPECT_EQ(g.train_count(), graph.edge_count());
    for (const auto& t : g.trains()) {
      ASSERT_EQ(t.events.size(), 3u);
      EXPECT_EQ(g.name(t.events[1].loc), "z");
    }
    // a turn at z exactly when both ends lie on the same side of the hub
    EXPECT_EQ(oracle::min_turns(g), graph.edge_count() - oracle::max_cut(graph)) << "seed " << seed;
  }
}
