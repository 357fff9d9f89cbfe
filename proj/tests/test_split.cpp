#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "motifae/errors.hpp"
#include "motifae/generators.hpp"
#include "motifae/split.hpp"
#include "oracles.hpp"

namespace motifae {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("motifae_split_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(HideEdges, ZeroFractionHidesNothing) {
  const Graph g = erdos_renyi(20, 0.3, 3);
  const auto s = hide_edges(g, 0.0, 11);
  EXPECT_TRUE(s.positives.empty());
  EXPECT_EQ(s.train_graph, g);
  EXPECT_EQ(s.shortfall, 0u);
}

TEST(HideEdges, TriangleHidesExactlyOne) {
  const Graph k3 = testing::complete_graph(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = hide_edges(k3, 1.0 / 3.0, seed);
    ASSERT_EQ(s.positives.size(), 1u);
    EXPECT_EQ(s.train_graph.num_edges(), 2u);
    for (Vertex v = 0; v < 3; ++v) EXPECT_GE(s.train_graph.degree(v), 1u);
  }
}

TEST(HideEdges, StarCannotLoseAnyEdge) {
  const auto s = hide_edges(testing::star_graph(3), 0.9, 4);
  EXPECT_TRUE(s.positives.empty());
  EXPECT_EQ(s.shortfall, 3u);
}

TEST(HideEdges, RejectsBadFraction) {
  const Graph g = testing::complete_graph(4);
  EXPECT_THROW(hide_edges(g, -0.1, 0), std::invalid_argument);
  EXPECT_THROW(hide_edges(g, 1.0, 0), std::invalid_argument);
}

TEST(SampleNegatives, Examples) {
  const Graph k3 = testing::complete_graph(3);
  EXPECT_TRUE(sample_negatives(k3, 0, 1).empty());
  EXPECT_THROW(sample_negatives(k3, 1, 1), DataError);
  const auto neg = sample_negatives(testing::path_graph(3), 1, 1);
  EXPECT_EQ(neg, (std::vector<Edge>{{0, 2}}));
}

TEST(SampleNegatives, WholePopulationWhenRequested) {
  const Graph g = erdos_renyi(12, 0.5, 8);
  const auto count = static_cast<std::size_t>(non_edge_count(g));
  const auto neg = sample_negatives(g, count, 3);
  std::set<Edge> distinct(neg.begin(), neg.end());
  EXPECT_EQ(distinct.size(), count);
  for (const Edge& e : neg) EXPECT_FALSE(g.has_edge(e.u, e.v));
}

TEST(MakeSplit, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = erdos_renyi(30, 0.1 + 0.01 * static_cast<double>(seed % 10), seed);
    if (g.num_edges() < 5) continue;
    const auto s = make_split(g, 0.2, seed);
    const auto target = static_cast<std::size_t>(std::llround(0.2 * static_cast<double>(g.num_edges())));
    EXPECT_EQ(s.positives.size() + s.shortfall, target);
    EXPECT_EQ(s.negatives.size(), s.positives.size());
    EXPECT_EQ(s.train_graph, g.without(s.positives));
    EXPECT_EQ(s.train_graph.num_edges() + s.positives.size(), g.num_edges());
    for (const Edge& e : s.positives) EXPECT_TRUE(g.has_edge(e.u, e.v));
    std::set<Edge> distinct(s.negatives.begin(), s.negatives.end());
    EXPECT_EQ(distinct.size(), s.negatives.size());
    for (const Edge& e : s.negatives) {
      EXPECT_NE(e.u, e.v);
      EXPECT_FALSE(g.has_edge(e.u, e.v));
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (g.degree(v) > 0) {
        EXPECT_GE(s.train_graph.degree(v), 1u);
      }
    }
  }
}

TEST(MakeSplit, Deterministic) {
  const Graph g = erdos_renyi(40, 0.2, 1);
  const auto a = make_split(g, 0.2, 77);
  const auto b = make_split(g, 0.2, 77);
  EXPECT_EQ(a.positives, b.positives);
  EXPECT_EQ(a.negatives, b.negatives);
  EXPECT_EQ(a.train_graph, b.train_graph);
  EXPECT_NE(make_split(g, 0.2, 78).positives, a.positives);
}

TEST(SplitFiles, RoundTrip) {
  const auto parsed = parse_edge_list("10 11\n11 12\n12 13\n13 10\n10 12\n11 13\n14 10\n14 11\n");
  const auto s = make_split(parsed.graph, 0.3, 5);
  const auto dir = scratch_dir("roundtrip");
  write_split(dir.string(), s, parsed.report.original_ids);
  EXPECT_TRUE(fs::exists(dir / "positives.txt"));
  EXPECT_TRUE(fs::exists(dir / "negatives.txt"));
  EXPECT_TRUE(fs::exists(dir / "split.json"));
  const auto back = read_split(dir.string(), parsed.graph, parsed.report);
  EXPECT_EQ(back.positives, s.positives);
  EXPECT_EQ(back.negatives, s.negatives);
  EXPECT_EQ(back.train_graph, s.train_graph);
  EXPECT_EQ(back.seed, 5u);
  EXPECT_EQ(back.shortfall, s.shortfall);
}

TEST(SplitFiles, InvalidSplitsAreRejected) {
  const auto parsed = parse_edge_list("0 1\n1 2\n2 3\n3 0\n");
  const auto s = make_split(parsed.graph, 0.25, 2);
  const auto dir = scratch_dir("invalid");
  EXPECT_THROW(read_split(dir.string(), parsed.graph, parsed.report), DataError);

  write_split(dir.string(), s, parsed.report.original_ids);
  {
    std::ofstream(dir / "negatives.txt") << "0 1\n";  // an edge, not a non-edge
  }
  EXPECT_THROW(read_split(dir.string(), parsed.graph, parsed.report), DataError);

  write_split(dir.string(), s, parsed.report.original_ids);
  {
    std::ofstream(dir / "positives.txt") << "0 9\n";
  }
  EXPECT_THROW(read_split(dir.string(), parsed.graph, parsed.report), DataError);
}

}  // namespace
}  // namespace motifae
