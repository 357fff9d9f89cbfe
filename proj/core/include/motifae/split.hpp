#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "motifae/graph.hpp"

namespace motifae {

/// Link-prediction test split: hidden true edges (positives), sampled
/// non-edges of the original graph (negatives) and the residual graph
/// used for training.
struct EvalSplit {
  Graph train_graph;
  std::vector<Edge> positives;
  std::vector<Edge> negatives;
  std::uint64_t seed = 0;
  double hide_fraction = 0.0;
  /// Edges that could not be hidden without isolating a vertex.
  std::size_t shortfall = 0;
  std::size_t original_edge_count = 0;
};

/// Hides round(hide_fraction * m) edges visited in a seeded random order.
/// An edge is hidden only if both endpoints keep degree >= 1 in the
/// residual graph; the result's shortfall counts targets that could not be
/// met. Negatives are left empty. Throws std::invalid_argument unless
/// 0 <= hide_fraction < 1.
EvalSplit hide_edges(const Graph& g, double hide_fraction, std::uint64_t seed);

/// Number of unordered vertex pairs that are not edges.
std::uint64_t non_edge_count(const Graph& g) noexcept;

/// Draws `count` distinct non-edges of `original` by rejection sampling.
/// Throws DataError when count exceeds the non-edge population.
std::vector<Edge> sample_negatives(const Graph& original, std::size_t count, std::uint64_t seed);

/// hide_edges followed by sample_negatives with |negatives| = |positives|.
EvalSplit make_split(const Graph& g, double hide_fraction, std::uint64_t seed);

/// Writes positives.txt, negatives.txt (edge-list text in original ids)
/// and split.json into `dir`.
void write_split(const std::string& dir, const EvalSplit& split,
                 const std::vector<std::int64_t>& original_ids);

/// Reads a split written by write_split against the original graph it was
/// drawn from. The train graph is rebuilt as original minus positives.
/// Throws DataError on missing files, unknown ids, or pairs that violate
/// the split invariants.
EvalSplit read_split(const std::string& dir, const Graph& original, const IngestReport& ids);

}  // namespace motifae
