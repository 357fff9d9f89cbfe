#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "motifae/graph.hpp"
#include "motifae/model.hpp"
#include "motifae/motif.hpp"
#include "motifae/proximity.hpp"
#include "motifae/rng.hpp"

namespace motifae {

struct TrainConfig {
  LossConfig loss;
  std::size_t batch_size = 500;
  double learning_rate = 1e-3;
  std::size_t max_iters = 200;
  std::size_t embed_dim = 128;
  /// Widths of extra encoder layers between the input and the embedding.
  /// Empty means a single-layer encoder n -> d.
  std::vector<std::size_t> hidden_dims;
  std::uint64_t seed = 0;
  InputTransform transform = InputTransform::Saturate;
  RowScaling scaling = RowScaling::None;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;

  void validate() const;
};

/// Draws a vertex outside a motif with probability proportional to its
/// motif participation count.
class NegativeSampler {
 public:
  explicit NegativeSampler(std::span<const std::uint64_t> participation);

  /// Throws std::invalid_argument when no vertex outside `motif` has a
  /// positive participation count.
  Vertex draw(const MotifInstance& motif, Rng& rng) const;

 private:
  std::vector<std::uint64_t> cumulative_;
  std::vector<std::uint64_t> weights_;
};

/// Adam with bias-corrected first and second moment estimates.
class AdamOptimizer {
 public:
  AdamOptimizer(const ModelParams& shape, double learning_rate, double beta1 = 0.9,
                double beta2 = 0.999, double epsilon = 1e-8);

  void step(ModelParams& params, const Gradients& grads);
  std::size_t steps() const noexcept { return t_; }

 private:
  double lr_;
  double beta1_;
  double beta2_;
  double eps_;
  std::size_t t_ = 0;
  ModelParams m_;
  ModelParams v_;
};

/// Row-per-vertex embedding table.
class Embeddings {
 public:
  Embeddings() = default;
  Embeddings(std::size_t n, std::size_t dim) : n_(n), dim_(dim), values_(n * dim, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<double> row(Vertex v) noexcept { return {values_.data() + v * dim_, dim_}; }
  std::span<const double> row(Vertex v) const noexcept { return {values_.data() + v * dim_, dim_}; }

  friend bool operator==(const Embeddings&, const Embeddings&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

/// Encodes every vertex's input vector. Vertices outside every motif get
/// the encoding of the zero vector.
Embeddings embed_all(const ModelParams& p, const TrainingInputs& inputs);

struct TrainResult {
  ModelParams params;
  Embeddings embeddings;
  std::vector<LossBreakdown> history;
  /// Vertices that appear in no instance, so never in a batch.
  std::size_t uncovered_vertices = 0;
};

/// Runs cfg.max_iters Adam steps, each on a seeded batch of
/// min(batch_size, |instances|) distinct motifs with one negative vertex
/// per motif. history[t] is the batch loss evaluated before update t.
/// Throws std::invalid_argument on an empty instance list and
/// DivergenceError when the loss stops being finite.
TrainResult train(const CoOccurrence& c, std::span<const MotifInstance> instances,
                  const TrainConfig& cfg);

/// Header "n d", then one line per vertex: original id and d values.
void write_embeddings(std::ostream& out, const Embeddings& e,
                      std::span<const std::int64_t> original_ids = {});

/// Reads a table written by write_embeddings, mapping ids through `ids`.
/// Throws DataError on a malformed header or row, an unknown or repeated
/// id, or a vertex count that differs from the ingested graph.
Embeddings read_embeddings(std::istream& in, const IngestReport& ids);

/// CSV "iteration,l_2nd,l_1st,l_reg,total".
void write_loss_history(std::ostream& out, std::span<const LossBreakdown> history);

}  // namespace motifae
