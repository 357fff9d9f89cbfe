#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "motifae/motif.hpp"
#include "motifae/proximity.hpp"

namespace motifae {

/// Dense tanh layer: out = tanh(weights * in + bias).
struct Layer {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
};

/// Encoder and mirrored decoder stacks shared by every autoencoder replica.
///
/// dims = [n, h_1, ..., h_{K-1}, d]. Encoder layer k maps dims[k] to
/// dims[k+1]; decoder layer k maps dims[K-k] to dims[K-k-1], so the last
/// decoder layer reconstructs an n-vector.
struct ModelParams {
  std::vector<std::size_t> dims;
  std::vector<Layer> encoder;
  std::vector<Layer> decoder;

  std::size_t depth() const noexcept { return encoder.size(); }
  std::size_t input_dim() const noexcept { return dims.front(); }
  std::size_t embed_dim() const noexcept { return dims.back(); }

  /// Layer `i` of the stacked network: encoder layers first, then decoder.
  Layer& layer(std::size_t i) noexcept { return i < depth() ? encoder[i] : decoder[i - depth()]; }
  const Layer& layer(std::size_t i) const noexcept {
    return i < depth() ? encoder[i] : decoder[i - depth()];
  }
  std::size_t num_layers() const noexcept { return 2 * depth(); }

  /// Total scalar parameter count.
  std::size_t size() const noexcept;
  bool all_finite() const noexcept;

  /// Same shapes, all zeros.
  ModelParams zeros_like() const;
};

/// Gradients share the parameter layout.
using Gradients = ModelParams;

enum class InitMode {
  ScaledUniform,  // U(-a, a), a = sqrt(6 / (fan_in + fan_out)); zero biases
  Zero,           // all parameters zero
};

/// Throws std::invalid_argument on fewer than two dims or a zero-sized layer.
ModelParams init_params(std::span<const std::size_t> dims, std::uint64_t seed,
                        InitMode mode = InitMode::ScaledUniform);

/// Encoder pass. Throws std::invalid_argument on a size mismatch and
/// NumericalError on non-finite input.
Eigen::VectorXd encode(const ModelParams& p, const Eigen::VectorXd& x);
/// Decoder pass from an embedding back to an n-vector.
Eigen::VectorXd decode(const ModelParams& p, const Eigen::VectorXd& y);

/// How raw co-occurrence counts become autoencoder targets.
enum class InputTransform {
  Saturate,  // t -> t / (1 + t), keeps targets inside tanh's range
  Binary,    // t -> 1 if t > 0
  Raw,       // counts unchanged
};

/// Prepared per-vertex targets for the autoencoder.
class TrainingInputs {
 public:
  TrainingInputs(const CoOccurrence& c, InputTransform transform,
                 RowScaling scaling = RowScaling::None);

  std::size_t dim() const noexcept { return rows_.size(); }
  const SparseVector& sparse(Vertex v) const noexcept { return rows_[v]; }
  Eigen::VectorXd dense(Vertex v) const;
  std::span<const std::uint64_t> participation() const noexcept { return participation_; }

 private:
  std::vector<SparseVector> rows_;
  std::vector<std::uint64_t> participation_;
};

/// Loss hyperparameters. Defaults follow the published experimental setup.
struct LossConfig {
  double alpha = 20.0;   // first-order weight
  double beta = 30.0;    // reconstruction penalty on non-zero targets, > 1
  double gamma = 1e-4;   // weight regularization
  double lambda = 30.0;  // hinge margin

  /// Throws std::invalid_argument when a value is out of range.
  void validate() const;
};

/// Hinge balance factor for a motif order: 1 for three nodes, 3/2 for four.
double balance_factor(int order);

struct BatchItem {
  MotifInstance motif;
  Vertex negative = 0;
};

struct LossBreakdown {
  double l_2nd = 0.0;
  double l_1st = 0.0;
  double l_reg = 0.0;
  double total = 0.0;
};

/// sum_j z_j^2 (x_j - x_hat_j)^2 with z_j = beta where x_j > 0, else 1.
double weighted_reconstruction_error(const Eigen::VectorXd& x, const Eigen::VectorXd& x_hat,
                                     double beta);

/// Hinge term for one motif: max(lambda + intra - mu * to_negative, 0),
/// where intra sums squared distances over member pairs and to_negative
/// over member-to-negative pairs.
struct HingeTerms {
  double intra = 0.0;
  double to_negative = 0.0;
  std::size_t intra_terms = 0;
  std::size_t negative_terms = 0;
  double mu = 1.0;
  double value = 0.0;
  bool active = false;
};
HingeTerms hinge(std::span<const Eigen::VectorXd> members, const Eigen::VectorXd& negative,
                 double lambda, double mu);

/// Sum over weight matrices of squared Frobenius norms (biases excluded).
double weight_penalty(const ModelParams& p);

/// Joint batch loss. Throws std::invalid_argument on an empty batch and
/// NumericalError naming the offending term when a value is non-finite.
LossBreakdown batch_loss(const ModelParams& p, std::span<const BatchItem> batch,
                         const TrainingInputs& inputs, const LossConfig& cfg);

/// Batch loss plus its exact gradient with respect to every parameter.
/// A hinge sitting exactly at the kink counts as inactive.
LossBreakdown loss_and_gradients(const ModelParams& p, std::span<const BatchItem> batch,
                                 const TrainingInputs& inputs, const LossConfig& cfg,
                                 Gradients& grads);

}  // namespace motifae
