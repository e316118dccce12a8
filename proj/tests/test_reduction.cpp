#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsd/brute_force.hpp"
#include "tsd/generators.hpp"
#include "tsd/reduction.hpp"

namespace {

tsd::EventGraph build(const std::vector<std::vector<std::string>>& walks) {
  tsd::EventGraphBuilder b;
  tsd::TrainId id = 1;
  tsd::Time t = 0;
  for (const auto& w : walks) {
    std::vector<std::pair<std::string, tsd::Time>> ev;
    for (const auto& loc : w) ev.emplace_back(loc, t++);
    b.add_train(id++, ev);
  }
  return b.build();
}

tsd::Graph path(std::size_t n) {
  tsd::Graph g(n);
  for (tsd::Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

std::vector<tsd::LocationId> ids(const tsd::EventGraph& g, const std::vector<std::string>& names) {
  std::vector<tsd::LocationId> out;
  for (const auto& n : names) out.push_back(g.id(n));
  return out;
}

std::uint64_t optimum(const tsd::EventGraph& g) {
  std::vector<std::string> names = g.locations();
  return tsd::solve_brute_force(tsd::extract_restrictions(g), names).turns;
}

}  // namespace

TEST(Terminals, FirstAndLastStops) {
  auto g = build({{"A", "B", "C", "D"}, {"D", "C", "E"}});
  EXPECT_EQ(tsd::find_terminals(g), ids(g, {"A", "D", "E"}));
}

TEST(Chains, PathInteriorIsOneChain) {
  auto chains = tsd::find_chains(path(5), {0, 4});
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains[0].vertices, (std::vector<tsd::Vertex>{1, 2, 3}));
  EXPECT_EQ(chains[0].end_a, 0u);
  EXPECT_EQ(chains[0].end_b, 4u);
  EXPECT_FALSE(chains[0].has_terminal);
  EXPECT_FALSE(chains[0].is_cycle);
}

TEST(Chains, TerminalFlagAndCycle) {
  auto chains = tsd::find_chains(path(5), {0, 2, 4});
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_TRUE(chains[0].has_terminal);

  tsd::Graph cycle(4);
  for (tsd::Vertex v = 0; v < 4; ++v) cycle.add_edge(v, (v + 1) % 4);
  auto c = tsd::find_chains(cycle, {});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(c[0].is_cycle);
  EXPECT_EQ(c[0].vertices.size(), 4u);
}

TEST(BlockCutTree, PathHasTwoNMinusThreeNodes) {
  for (std::size_t n = 2; n <= 9; ++n) {
    auto bct = tsd::block_cut_tree(path(n));
    EXPECT_EQ(bct.blocks.size(), n - 1);
    EXPECT_EQ(bct.cut_vertices.size(), n - 2);
    EXPECT_EQ(bct.node_count(), 2 * n - 3);
    EXPECT_EQ(bct.edges.size(), 2 * (n - 2));
  }
}

TEST(BlockCutTree, TwoTrianglesSharingAVertex) {
  tsd::Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(2, 4);
  auto bct = tsd::block_cut_tree(g);
  EXPECT_EQ(bct.blocks, (std::vector<std::vector<tsd::Vertex>>{{0, 1, 2}, {2, 3, 4}}));
  EXPECT_EQ(bct.cut_vertices, std::vector<tsd::Vertex>{2});
}

TEST(BlockCutTree, RejectsDisconnected) { EXPECT_THROW(tsd::block_cut_tree(tsd::Graph(2)), std::invalid_argument); }

TEST(SeparatingPairs, MatchOracleOnAllSmallGraphs) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& g : oracle::connected_graphs(n)) {
      std::set<std::pair<tsd::Vertex, tsd::Vertex>> got;
      for (const auto& sp : tsd::find_separating_pairs(g)) {
        got.insert({sp.s, sp.t});
        EXPECT_GE(sp.components.size(), 2u);
      }
      EXPECT_EQ(got, oracle::separating_pairs(g));
    }
  }
}

TEST(Classify, ContractibleChain) {
  auto g = build({{"A", "B", "C", "D"}, {"D", "C", "B", "A"}});
  auto cand = tsd::classify_candidate(g, g.id("A"), g.id("D"), ids(g, {"B", "C"}));
  EXPECT_EQ(cand.classification, tsd::CandidateClass::contractible);
  EXPECT_EQ(cand.runs.size(), 2u);
  EXPECT_EQ(cand.topological_order, ids(g, {"B", "C"}));
}

TEST(Classify, TerminalInComponent) {
  auto g = build({{"A", "B", "C"}, {"B", "C"}});
  auto cand = tsd::classify_candidate(g, g.id("A"), g.id("C"), ids(g, {"B"}));
  EXPECT_EQ(cand.classification, tsd::CandidateClass::not_transit);
  EXPECT_NE(cand.reason.find("terminal"), std::string::npos);
}

TEST(Classify, EnterAndLeaveThroughSamePole) {
  auto g = build({{"A", "B", "A", "C"}});
  auto cand = tsd::classify_candidate(g, g.id("A"), g.id("C"), ids(g, {"B"}));
  EXPECT_EQ(cand.classification, tsd::CandidateClass::not_transit);
}

TEST(Classify, PoleLoopIsNotTransit) {
  // t,s,c,t contracts to t,s,t: optimum 1 before, 0 after
  auto g = build({{"T", "S", "C", "T"}, {"S", "T"}});
  ASSERT_EQ(optimum(g), 1u);
  auto cand = tsd::classify_candidate(g, g.id("S"), g.id("T"), ids(g, {"C"}));
  EXPECT_EQ(cand.classification, tsd::CandidateClass::not_transit);
  EXPECT_NE(cand.reason.find("reverse"), std::string::npos);
  EXPECT_TRUE(tsd::apply_rule_exhaustively(g, tsd::ReduceMode::full).report.steps.empty());
}

TEST(Classify, CrossingRunsFormACycle) {
  auto g = build({{"S", "X", "Y", "T"}, {"S", "Y", "X", "T"}});
  tsd::ClassifyOptions opt;
  opt.exhaustive_orientation = true;
  auto cand = tsd::classify_candidate(g, g.id("S"), g.id("T"), ids(g, {"X", "Y"}), opt);
  EXPECT_EQ(cand.classification, tsd::CandidateClass::transit_not_contractible);
  ASSERT_TRUE(cand.any_orientation_acyclic.has_value());
  EXPECT_TRUE(*cand.any_orientation_acyclic);
}

TEST(Classify, RejectsBadArguments) {
  auto g = build({{"A", "B", "C"}});
  EXPECT_THROW(tsd::classify_candidate(g, 0, 0, {1}), std::invalid_argument);
  EXPECT_THROW(tsd::classify_candidate(g, 0, 2, {0, 1}), std::invalid_argument);
}

TEST(Reduce, ChainOfPathCollapses) {
  auto g = build({{"A", "B", "C", "D", "E"}, {"E", "D", "C", "B", "A"}});
  auto r = tsd::apply_rule_exhaustively(g, tsd::ReduceMode::chain);
  EXPECT_EQ(r.graph.locations(), (std::vector<std::string>{"A", "E"}));
  ASSERT_EQ(r.report.steps.size(), 1u);
  EXPECT_EQ(r.report.steps[0].s, "A");
  EXPECT_EQ(r.report.steps[0].t, "E");
  EXPECT_EQ(r.report.steps[0].topological_order, (std::vector<std::string>{"B", "C", "D"}));
  EXPECT_EQ(r.report.steps[0].removed.size(), 2u);
  EXPECT_EQ(tsd::replay(g, r.report), r.graph);

  auto full = tsd::apply_rule_exhaustively(g, tsd::ReduceMode::full);
  EXPECT_EQ(full.graph.locations(), (std::vector<std::string>{"A", "E"}));
  EXPECT_EQ(tsd::replay(g, full.report), full.graph);
}

TEST(Reduce, LiftPlacesComponentBetweenPoles) {
  auto g = build({{"A", "B", "C", "D", "E"}, {"E", "D", "C", "B", "A"}});
  auto r = tsd::apply_rule_exhaustively(g, tsd::ReduceMode::chain);
  auto down = tsd::lift_order(r.report, tsd::LocationOrder::from_names(r.graph, {"A", "E"}));
  EXPECT_EQ(down.names(g), (std::vector<std::string>{"A", "B", "C", "D", "E"}));
  auto up = tsd::lift_order(r.report, tsd::LocationOrder::from_names(r.graph, {"E", "A"}));
  EXPECT_EQ(up.names(g), (std::vector<std::string>{"E", "D", "C", "B", "A"}));
  EXPECT_THROW(tsd::lift_order(r.report, tsd::LocationOrder::identity(3)), std::invalid_argument);
}

TEST(Reduce, PreservesOptimumOnCorridors) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto gi = tsd::gen_corridor(8, 3, 3, seed);
    const auto before = optimum(gi.graph);
    for (auto mode : {tsd::ReduceMode::chain, tsd::ReduceMode::full}) {
      auto r = tsd::apply_rule_exhaustively(gi.graph, mode);
      EXPECT_LE(r.graph.location_count() + 3, gi.graph.location_count());
      std::vector<std::string> names = r.graph.locations();
      auto best = tsd::solve_brute_force(tsd::extract_restrictions(r.graph), names);
      EXPECT_EQ(best.turns, before) << "seed " << seed;
      auto lifted = tsd::lift_order(r.report, best.order);
      EXPECT_EQ(tsd::count_turns(gi.graph, lifted), before) << "seed " << seed;
    }
  }
}

TEST(Reduce, ReportJsonRoundTrip) {
  auto gi = tsd::gen_corridor(9, 2, 4, 11);
  auto r = tsd::apply_rule_exhaustively(gi.graph, tsd::ReduceMode::full);
  ASSERT_FALSE(r.report.steps.empty());
  auto j = tsd::report_to_json(r.report);
  EXPECT_EQ(j["location_count_before"], 9);
  auto back = tsd::report_from_json(j);
  EXPECT_EQ(tsd::report_to_json(back), j);
  EXPECT_EQ(tsd::replay(gi.graph, back), r.graph);
}

TEST(Reduce, NothingToContract) {
  auto g = build({{"A", "B", "C"}, {"B", "D"}});
  auto r = tsd::apply_rule_exhaustively(g, tsd::ReduceMode::full);
  EXPECT_TRUE(r.report.steps.empty());
  EXPECT_EQ(r.graph, g);
  EXPECT_EQ(r.report.location_count_after(), 4u);
}
