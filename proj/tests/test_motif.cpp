#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <sstream>

#include "motifae/generators.hpp"
#include "motifae/motif.hpp"
#include "motifae/rng.hpp"
#include "oracles.hpp"

namespace motifae {
namespace {

using testing::as_brute;
using testing::brute_force_instances;

std::vector<Vertex> sorted_members(const MotifInstance& i) {
  return {i.members().begin(), i.members().end()};
}

TEST(MotifType, CodesRoundTrip) {
  for (MotifType t : kAllMotifTypes) EXPECT_EQ(parse_motif_type(motif_code(t)), t);
  EXPECT_EQ(parse_motif_type("m44"), MotifType::M44);
  EXPECT_THROW(parse_motif_type("M47"), std::invalid_argument);
  EXPECT_EQ(parse_motif_types("all").size(), kMotifTypeCount);
  EXPECT_EQ(parse_motif_types("M31, M46"), (std::vector<MotifType>{MotifType::M31, MotifType::M46}));
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(testing::complete_graph(3), std::vector<Vertex>{0, 1, 2}), MotifType::M32);
  EXPECT_EQ(classify(testing::path_graph(3), std::vector<Vertex>{0, 1, 2}), MotifType::M31);
  EXPECT_EQ(classify(testing::complete_graph(4), std::vector<Vertex>{0, 1, 2, 3}), MotifType::M46);
}

TEST(Classify, DisconnectedAndInvalid) {
  const Graph g = testing::make_graph(5, {{0, 1}, {2, 3}});
  EXPECT_EQ(classify(g, std::vector<Vertex>{0, 1, 2}), std::nullopt);
  EXPECT_EQ(classify(g, std::vector<Vertex>{0, 1, 2, 3}), std::nullopt);
  EXPECT_THROW(classify(g, std::vector<Vertex>{0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(classify(g, std::vector<Vertex>{0, 1}), std::invalid_argument);
  EXPECT_THROW(classify(g, std::vector<Vertex>{0, 1, 9}), std::invalid_argument);
}

TEST(Classify, EveryInducedSubgraphMatchesDegreeSequenceOracle) {
  // All 2^3 and 2^6 labelled graphs on 3 and 4 vertices.
  for (int order : {3, 4}) {
    const int pairs = order == 3 ? 3 : 6;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
      std::vector<Edge> edges;
      for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
          if (mask & (1 << pair_bit(order, a, b))) edges.emplace_back(a, b);
      const Graph g(static_cast<std::size_t>(order), edges);
      std::vector<Vertex> vs(static_cast<std::size_t>(order));
      std::iota(vs.begin(), vs.end(), 0);
      EXPECT_EQ(classify(g, vs), testing::degree_sequence_type(g, vs)) << "mask " << mask;
    }
  }
}

TEST(Catalog, OverridesSwapShapes) {
  const auto c = MotifCatalog::with_overrides("M41=star,M42=path");
  EXPECT_EQ(c.shape(MotifType::M41), MotifShape::Star);
  EXPECT_EQ(c.shape(MotifType::M42), MotifShape::Path);
  EXPECT_EQ(classify(testing::star_graph(3), std::vector<Vertex>{0, 1, 2, 3}, c), MotifType::M41);
  EXPECT_EQ(classify(testing::path_graph(4), std::vector<Vertex>{0, 1, 2, 3}, c), MotifType::M42);
  EXPECT_THROW(MotifCatalog::with_overrides("M41=star"), std::invalid_argument);
  EXPECT_THROW(MotifCatalog::with_overrides("M31=star,M42=wedge"), std::invalid_argument);
  EXPECT_THROW(MotifCatalog::with_overrides("M41=hexagon"), std::invalid_argument);
}

TEST(Enumerate, Examples) {
  const auto k3 = enumerate_instances(testing::complete_graph(3), 3);
  ASSERT_EQ(k3.size(), 1u);
  EXPECT_EQ(k3[0].type, MotifType::M32);

  const auto k4 = enumerate_instances(testing::complete_graph(4), 3);
  ASSERT_EQ(k4.size(), 4u);
  for (const auto& i : k4) EXPECT_EQ(i.type, MotifType::M32);

  const Graph star = testing::star_graph(3);
  const auto s3 = enumerate_instances(star, 3);
  ASSERT_EQ(s3.size(), 3u);
  for (const auto& i : s3) EXPECT_EQ(i.type, MotifType::M31);
  const auto s4 = enumerate_instances(star, 4);
  ASSERT_EQ(s4.size(), 1u);
  EXPECT_EQ(s4[0].type, MotifType::M42);
}

TEST(Enumerate, MatchesBruteForceOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Graph g = erdos_renyi(14 + seed % 5, 0.15 + 0.05 * static_cast<double>(seed % 4), seed);
    for (int order : {3, 4}) {
      const auto got = enumerate_instances(g, order);
      EXPECT_EQ(as_brute(got), brute_force_instances(g, order)) << "seed " << seed;
      for (const auto& i : got) {
        const auto m = sorted_members(i);
        EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
      }
    }
  }
}

TEST(Enumerate, RootsConcatenateToFullEnumeration) {
  const Graph g = erdos_renyi(16, 0.3, 21);
  for (int order : {3, 4}) {
    std::vector<MotifInstance> per_root;
    for (Vertex r = 0; r < g.num_vertices(); ++r) {
      enumerate_from_root(g, r, order, [&](const MotifInstance& i) { per_root.push_back(i); });
    }
    EXPECT_EQ(per_root, enumerate_instances(g, order));
  }
}

TEST(Enumerate, RejectsBadOrder) {
  EXPECT_THROW(enumerate_instances(testing::complete_graph(3), 5), std::invalid_argument);
}

TEST(Census, Examples) {
  const Census k4 = census(testing::complete_graph(4));
  EXPECT_EQ(k4.count(MotifType::M32), 4u);
  EXPECT_EQ(k4.count(MotifType::M46), 1u);
  EXPECT_DOUBLE_EQ(k4.avg_participation(MotifType::M32), 3.0);
  EXPECT_DOUBLE_EQ(k4.avg_participation(MotifType::M46), 1.0);
  for (MotifType t : kAllMotifTypes) {
    if (t != MotifType::M32 && t != MotifType::M46) {
      EXPECT_EQ(k4.count(t), 0u);
    }
  }

  const Census p4 = census(testing::path_graph(4));
  EXPECT_EQ(p4.count(MotifType::M31), 2u);
  EXPECT_EQ(p4.count(MotifType::M41), 1u);
  EXPECT_DOUBLE_EQ(p4.avg_participation(MotifType::M31), 1.5);
  std::uint64_t total = 0;
  for (MotifType t : kAllMotifTypes) total += p4.count(t);
  EXPECT_EQ(total, 3u);

  const Census empty = census(Graph(5, std::vector<Edge>{}));
  for (MotifType t : kAllMotifTypes) EXPECT_EQ(empty.count(t), 0u);
}

TEST(Census, ParticipationSumsToOrderTimesCount) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = erdos_renyi(20, 0.25, seed);
    const Census c = census(g);
    ASSERT_EQ(c.participation.size(), g.num_vertices());
    for (MotifType t : kAllMotifTypes) {
      std::uint64_t sum = 0;
      for (const auto& row : c.participation) sum += row[index_of(t)];
      EXPECT_EQ(sum, static_cast<std::uint64_t>(motif_order(t)) * c.count(t));
    }
  }
}

TEST(Census, IsomorphismInvariant) {
  const Graph g = erdos_renyi(15, 0.3, 4);
  std::vector<Vertex> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(99);
  rng.shuffle(std::span<Vertex>(perm));
  std::vector<Edge> relabelled;
  for (const Edge& e : g.edges()) relabelled.emplace_back(perm[e.u], perm[e.v]);
  const Graph h(g.num_vertices(), relabelled);
  EXPECT_EQ(census(g).per_type_count, census(h).per_type_count);
}

TEST(SampleInstances, Examples) {
  const Graph k4 = testing::complete_graph(4);
  const auto all = sample_instances(k4, MotifType::M46, 10, 1);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(sorted_members(all[0]), (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_TRUE(sample_instances(k4, MotifType::M31, 5, 1).empty());
}

TEST(SampleInstances, LargeKReturnsFullFilteredEnumeration) {
  const Graph g = erdos_renyi(18, 0.3, 6);
  for (MotifType t : kAllMotifTypes) {
    auto sampled = sample_instances(g, t, 1'000'000, 3);
    auto full = collect_instances(g, t);
    std::sort(sampled.begin(), sampled.end());
    std::sort(full.begin(), full.end());
    EXPECT_EQ(sampled, full);
  }
}

TEST(SampleInstances, DistinctAndDeterministic) {
  const Graph g = erdos_renyi(20, 0.3, 7);
  const auto a = sample_instances(g, MotifType::M31, 25, 5);
  EXPECT_EQ(a, sample_instances(g, MotifType::M31, 25, 5));
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& i : a) EXPECT_EQ(i.type, MotifType::M31);
}

TEST(SampleInstances, InclusionIsUniform) {
  // Each of N instances is kept with probability k / N.
  const Graph g = testing::star_graph(6);  // C(6, 2) = 15 wedges
  const auto population = collect_instances(g, MotifType::M31);
  ASSERT_EQ(population.size(), 15u);
  const std::size_t k = 5;
  const int trials = 6000;
  std::map<std::vector<Vertex>, int> hits;
  for (int s = 0; s < trials; ++s) {
    for (const auto& i : sample_instances(g, MotifType::M31, k, static_cast<std::uint64_t>(s))) {
      ++hits[sorted_members(i)];
    }
  }
  ASSERT_EQ(hits.size(), population.size());
  const double p = static_cast<double>(k) / 15.0;
  const double mean = trials * p;
  const double sigma = std::sqrt(trials * p * (1.0 - p));
  for (const auto& [members, count] : hits) {
    EXPECT_LT(std::abs(count - mean), 5.0 * sigma);
  }
}

TEST(WriteInstances, Format) {
  std::vector<MotifInstance> inst = enumerate_instances(testing::path_graph(4), 4);
  std::ostringstream out;
  const std::vector<std::int64_t> ids{10, 20, 30, 40};
  write_instances(out, inst, ids);
  EXPECT_EQ(out.str(), "M41 10 20 30 40\n");
}

}  // namespace
}  // namespace motifae
