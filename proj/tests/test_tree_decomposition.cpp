#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsd/generators.hpp"
#include "tsd/tree_decomposition.hpp"

namespace {

std::vector<std::string> rules(const tsd::ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& v : r.violations) out.push_back(v.rule);
  return out;
}

tsd::Graph complete(std::size_t n) {
  tsd::Graph g(n);
  for (tsd::Vertex u = 0; u < n; ++u) {
    for (tsd::Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

tsd::Graph grid(std::size_t rows, std::size_t cols) {
  tsd::Graph g(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      auto v = static_cast<tsd::Vertex>(r * cols + c);
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, static_cast<tsd::Vertex>(v + cols));
    }
  }
  return g;
}

}  // namespace

TEST(MinDegree, KnownWidths) {
  EXPECT_EQ(tsd::min_degree_decomposition(tsd::Graph(0)).width(), 0u);
  EXPECT_EQ(tsd::min_degree_decomposition(tsd::Graph(3)).width(), 0u);
  EXPECT_EQ(tsd::min_degree_decomposition(complete(2)).width(), 1u);
  EXPECT_EQ(tsd::min_degree_decomposition(complete(5)).width(), 4u);
  tsd::Graph cycle(6);
  for (tsd::Vertex v = 0; v < 6; ++v) cycle.add_edge(v, (v + 1) % 6);
  EXPECT_EQ(tsd::min_degree_decomposition(cycle).width(), 2u);
}

TEST(MinDegree, ValidAndNeverBelowTreewidth) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    tsd::Rng pick(seed);
    auto g = tsd::gen_random_graph(static_cast<std::size_t>(pick.uniform(1, 10)), pick.real(), seed);
    auto td = tsd::min_degree_decomposition(g);
    EXPECT_TRUE(tsd::validate_decomposition(g, td).ok()) << "seed " << seed;
    EXPECT_GE(td.width(), oracle::treewidth(g)) << "seed " << seed;
  }
}

TEST(MinDegree, ExactOnTrees) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    tsd::Rng rng(seed);
    const std::size_t n = 2 + rng.index(12);
    tsd::Graph t(n);
    for (tsd::Vertex v = 1; v < n; ++v) t.add_edge(v, static_cast<tsd::Vertex>(rng.index(v)));
    EXPECT_EQ(tsd::min_degree_decomposition(t).width(), 1u);
  }
}

TEST(MinDegree, GridUpperBound) {
  auto g = grid(3, 4);
  auto td = tsd::min_degree_decomposition(g);
  EXPECT_TRUE(tsd::validate_decomposition(g, td).ok());
  EXPECT_GE(td.width(), 3u);
  EXPECT_EQ(oracle::treewidth(g), 3u);
}

TEST(Validate, ReportsEachBrokenProperty) {
  auto g = complete(3);
  tsd::TreeDecomposition not_tree{{{0, 1, 2}, {0}}, {}};
  EXPECT_EQ(rules(tsd::validate_decomposition(g, not_tree)), std::vector<std::string>{"tree"});

  tsd::TreeDecomposition missing_vertex{{{0, 1}}, {}};
  auto r = rules(tsd::validate_decomposition(g, missing_vertex));
  EXPECT_NE(std::find(r.begin(), r.end(), "T1"), r.end());
  EXPECT_NE(std::find(r.begin(), r.end(), "T2"), r.end());

  tsd::TreeDecomposition unknown{{{0, 1, 2, 7}}, {}};
  EXPECT_EQ(rules(tsd::validate_decomposition(g, unknown)), std::vector<std::string>{"T1"});

  tsd::Graph p(3);
  p.add_edge(0, 1);
  p.add_edge(1, 2);
  tsd::TreeDecomposition split{{{0, 1}, {2}, {1, 2}}, {{0, 1}, {1, 2}}};
  EXPECT_EQ(rules(tsd::validate_decomposition(p, split)), std::vector<std::string>{"T3"});
}

TEST(Nice, StructureAndSize) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    tsd::Rng pick(seed * 3);
    auto g = tsd::gen_random_graph(static_cast<std::size_t>(pick.uniform(1, 14)), 0.3, seed);
    auto td = tsd::min_degree_decomposition(g);
    auto nice = tsd::make_nice(td);
    EXPECT_TRUE(tsd::validate_nice(g, nice).ok()) << "seed " << seed;
    EXPECT_EQ(nice.width(), td.width());
    EXPECT_TRUE(nice.nodes[nice.root].bag.empty());
    EXPECT_LE(nice.nodes.size(), tsd::kNiceNodeFactor * (td.width() + 1) * std::max<std::size_t>(g.vertex_count(), 1));
  }
}

TEST(Nice, EmptyGraph) {
  auto nice = tsd::make_nice(tsd::min_degree_decomposition(tsd::Graph(0)));
  ASSERT_EQ(nice.nodes.size(), 1u);
  EXPECT_EQ(nice.nodes[0].kind, tsd::NiceKind::leaf);
  EXPECT_TRUE(tsd::validate_nice(tsd::Graph(0), nice).ok());
}

TEST(Nice, RejectsBrokenInput) {
  EXPECT_THROW(tsd::make_nice(tsd::TreeDecomposition{{{0}, {1}}, {}}), std::invalid_argument);
  EXPECT_THROW(tsd::make_nice(tsd::TreeDecomposition{{{1, 0}}, {}}), std::invalid_argument);
  EXPECT_THROW(tsd::make_nice(tsd::TreeDecomposition{{{0}, {1}, {0}}, {{0, 1}, {1, 2}}}), std::invalid_argument);
}

TEST(Nice, ValidateCatchesTampering) {
  tsd::Graph g = complete(3);
  auto nice = tsd::make_nice(tsd::min_degree_decomposition(g));
  ASSERT_TRUE(tsd::validate_nice(g, nice).ok());
  auto bad = nice;
  bad.nodes[bad.root].bag.push_back(0);
  EXPECT_FALSE(tsd::validate_nice(g, bad).ok());
  bad = nice;
  for (auto& node : bad.nodes) {
    if (node.kind == tsd::NiceKind::introduce && node.bag.size() >= 2) {
      node.vertex = node.bag.front() == node.vertex ? node.bag.back() : node.bag.front();
      break;
    }
  }
  EXPECT_FALSE(tsd::validate_nice(g, bad).ok());
}

TEST(Json, PlainAndNice) {
  tsd::Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  std::vector<std::string> names{"A", "B", "C"};
  auto td = tsd::min_degree_decomposition(g);
  auto j = tsd::decomposition_to_json(td, names);
  EXPECT_EQ(j["width"], 1);
  EXPECT_EQ(j["nodes"].size(), td.bags.size());
  EXPECT_EQ(j["edges"].size(), td.tree_edges.size());
  EXPECT_EQ(j["nodes"][0]["kind"], "bag");

  auto nj = tsd::decomposition_to_json(tsd::make_nice(td), names);
  EXPECT_EQ(nj["width"], 1);
  std::set<std::string> kinds;
  for (const auto& n : nj["nodes"]) {
    kinds.insert(n["kind"].get<std::string>());
    if (n["kind"] == "introduce" || n["kind"] == "forget") {
      EXPECT_TRUE(n.contains("vertex"));
    }
  }
  EXPECT_TRUE(kinds.count("leaf"));
  EXPECT_TRUE(kinds.count("forget"));
  EXPECT_EQ(nj["nodes"][nj["root"].get<std::size_t>()]["bag"].size(), 0u);
}
