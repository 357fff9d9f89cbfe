#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifae/graph.hpp"
#include "motifae/split.hpp"
#include "motifae/trainer.hpp"

namespace motifae {

/// Cosine similarity; 0 when either vector is all zeros.
double cosine_score(std::span<const double> a, std::span<const double> b);

enum class Baseline { CommonNeighbors, Jaccard, AdamicAdar };

std::string_view baseline_name(Baseline b) noexcept;
/// Accepts "CN", "JC", "AA" (case-insensitive).
Baseline parse_baseline(std::string_view name);
std::vector<Baseline> parse_baselines(std::string_view list);

std::size_t common_neighbors(const Graph& g, Vertex a, Vertex b);

/// Neighbourhood similarity of a vertex pair on `g` (the train graph).
double baseline_score(const Graph& g, Vertex a, Vertex b, Baseline method);

struct ScoredExample {
  Edge pair;
  double score = 0.0;
  bool positive = false;
};

/// Examples in descending score order; rank of examples[i] is i + 1.
struct RankedList {
  std::vector<ScoredExample> examples;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

/// Sorts by descending score. Exact ties are ordered by a seeded shuffle
/// applied before a stable sort. Throws std::invalid_argument on a
/// non-finite score.
RankedList rank_examples(std::vector<ScoredExample> scored, std::uint64_t seed);

/// Probability that a random positive outscores a random negative, ties
/// counting one half. Computed from scores via the rank-sum identity, so
/// independent of tie order. Throws std::invalid_argument if either class
/// is empty.
double auc(const RankedList& r);

/// Share of positives among the top k. Throws std::out_of_range unless
/// 1 <= k <= N.
double precision_at_k(const RankedList& r, std::size_t k);

/// Mean rank of the positives. Throws std::invalid_argument without positives.
double avg_rank(const RankedList& r);

struct WeakTie {
  Edge pair;
  std::size_t common = 0;
};

/// Hidden positives whose endpoints share fewer than `threshold` common
/// neighbours in the train graph.
std::vector<WeakTie> weak_tie_filter(const EvalSplit& split, std::size_t threshold = 3);

/// Named pair scorer.
struct Scorer {
  std::string name;
  std::function<double(Vertex, Vertex)> score;
  /// Set when a score fell back to 0 because a vector was all zeros.
  std::function<bool(Vertex, Vertex)> degenerate;
};

Scorer embedding_scorer(const Embeddings& e, std::string name = "MODEL");
Scorer baseline_scorer(const Graph& train_graph, Baseline method);

struct EvalOptions {
  std::vector<std::size_t> ks;
  bool weak_ties = false;
  std::size_t weak_tie_threshold = 3;
  std::uint64_t seed = 0;
};

struct MetricsReport {
  std::string method;
  double auc = 0.0;
  std::map<std::size_t, double> precision_at;
  double avg_rank = 0.0;
  /// Avg. Rank of weak-tie positives (all strata) against all negatives.
  std::optional<double> weak_tie_avg_rank;
  /// Stratum (common-neighbour count) -> Avg. Rank of its positives
  /// ranked against all negatives. Empty strata are omitted.
  std::map<std::size_t, double> weak_tie;
  std::map<std::size_t, std::size_t> weak_tie_sizes;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t zero_vector_pairs = 0;
  std::uint64_t seed = 0;
};

std::vector<ScoredExample> score_pairs(const Scorer& scorer, std::span<const Edge> positives,
                                       std::span<const Edge> negatives,
                                       std::size_t* zero_vector_pairs = nullptr);

MetricsReport evaluate(const Scorer& scorer, const EvalSplit& split, const EvalOptions& opts);

/// {method, auc, precision: {k: v}, avg_rank, weak_tie: {stratum: v}, seed}
std::string metrics_json(std::span<const MetricsReport> reports);

/// Header for metrics_csv_row, given the precision cutoffs in use.
std::string metrics_csv_header(std::span<const std::size_t> ks, bool weak_ties,
                               std::string_view leading_column = "method");
std::string metrics_csv_row(const MetricsReport& r, std::span<const std::size_t> ks,
                            bool weak_ties, std::string_view leading_value);

}  // namespace motifae
