#include "motifae/model.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "motifae/errors.hpp"
#include "motifae/rng.hpp"

namespace motifae {

std::size_t ModelParams::size() const noexcept {
  std::size_t total = 0;
  for (std::size_t i = 0; i < num_layers(); ++i) {
    total += static_cast<std::size_t>(layer(i).weights.size() + layer(i).bias.size());
  }
  return total;
}

bool ModelParams::all_finite() const noexcept {
  for (std::size_t i = 0; i < num_layers(); ++i) {
    if (!layer(i).weights.allFinite() || !layer(i).bias.allFinite()) return false;
  }
  return true;
}

ModelParams ModelParams::zeros_like() const {
  ModelParams out = *this;
  for (std::size_t i = 0; i < out.num_layers(); ++i) {
    out.layer(i).weights.setZero();
    out.layer(i).bias.setZero();
  }
  return out;
}

ModelParams init_params(std::span<const std::size_t> dims, std::uint64_t seed, InitMode mode) {
  if (dims.size() < 2) throw std::invalid_argument("layer dims need at least input and output size");
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("zero-sized layer");
  }
  ModelParams p;
  p.dims.assign(dims.begin(), dims.end());
  const std::size_t depth = dims.size() - 1;
  Rng rng(seed);

  const auto make = [&](std::size_t fan_in, std::size_t fan_out) {
    Layer l;
    l.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(fan_out),
                                      static_cast<Eigen::Index>(fan_in));
    l.bias = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(fan_out));
    if (mode == InitMode::ScaledUniform) {
      const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
      // Column-major fill order is part of the determinism contract.
      for (Eigen::Index i = 0; i < l.weights.size(); ++i) l.weights.data()[i] = rng.uniform(-a, a);
    }
    return l;
  };

  for (std::size_t k = 0; k < depth; ++k) p.encoder.push_back(make(dims[k], dims[k + 1]));
  for (std::size_t k = 0; k < depth; ++k) {
    p.decoder.push_back(make(dims[depth - k], dims[depth - k - 1]));
  }
  return p;
}

namespace {

Eigen::VectorXd apply(const Layer& l, const Eigen::VectorXd& in) {
  return (l.weights * in + l.bias).array().tanh().matrix();
}

// Activations of every layer: acts[0] is the input, acts[i + 1] the output
// of stacked layer i. `layers` counts how far the pass goes.
struct Trace {
  std::vector<Eigen::VectorXd> acts;
};

Trace forward(const ModelParams& p, Eigen::VectorXd x, std::size_t layers) {
  Trace t;
  t.acts.reserve(layers + 1);
  t.acts.push_back(std::move(x));
  for (std::size_t i = 0; i < layers; ++i) t.acts.push_back(apply(p.layer(i), t.acts.back()));
  return t;
}

// Backpropagates from the top of `trace`. `top` is dLoss/d(last activation);
// `at_embedding` is added to the gradient arriving at the encoder output.
void backward(const ModelParams& p, const Trace& trace, Eigen::VectorXd top,
              const Eigen::VectorXd* at_embedding, Gradients& grads) {
  const std::size_t layers = trace.acts.size() - 1;
  const std::size_t k = p.depth();
  Eigen::VectorXd g = std::move(top);
  if (layers == k && at_embedding != nullptr) g += *at_embedding;
  for (std::size_t i = layers; i-- > 0;) {
    const Eigen::VectorXd& out = trace.acts[i + 1];
    const Eigen::VectorXd dz = (g.array() * (1.0 - out.array().square())).matrix();
    Layer& gl = grads.layer(i);
    gl.weights.noalias() += dz * trace.acts[i].transpose();
    gl.bias += dz;
    if (i == 0) break;
    g = p.layer(i).weights.transpose() * dz;
    if (i == k && at_embedding != nullptr) g += *at_embedding;
  }
}

void require_finite(double value, const char* term) {
  if (!std::isfinite(value)) throw NumericalError(fmt::format("non-finite {} ({})", term, value));
}

}  // namespace

Eigen::VectorXd encode(const ModelParams& p, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != p.input_dim()) {
    throw std::invalid_argument(
        fmt::format("input has length {}, model expects {}", x.size(), p.input_dim()));
  }
  if (!x.allFinite()) throw NumericalError("non-finite encoder input");
  Eigen::VectorXd y = x;
  for (const Layer& l : p.encoder) y = apply(l, y);
  return y;
}

Eigen::VectorXd decode(const ModelParams& p, const Eigen::VectorXd& y) {
  if (static_cast<std::size_t>(y.size()) != p.embed_dim()) {
    throw std::invalid_argument(
        fmt::format("embedding has length {}, model expects {}", y.size(), p.embed_dim()));
  }
  if (!y.allFinite()) throw NumericalError("non-finite decoder input");
  Eigen::VectorXd x = y;
  for (const Layer& l : p.decoder) x = apply(l, x);
  return x;
}

TrainingInputs::TrainingInputs(const CoOccurrence& c, InputTransform transform,
                               RowScaling scaling)
    : participation_(c.participation().begin(), c.participation().end()) {
  rows_.reserve(c.size());
  for (Vertex v = 0; v < c.size(); ++v) {
    SparseVector row = input_vector(c, v, scaling);
    for (auto& e : row) {
      switch (transform) {
        case InputTransform::Saturate: e.value = e.value / (1.0 + e.value); break;
        case InputTransform::Binary:   e.value = e.value > 0.0 ? 1.0 : 0.0; break;
        case InputTransform::Raw:      break;
      }
    }
    rows_.push_back(std::move(row));
  }
}

Eigen::VectorXd TrainingInputs::dense(Vertex v) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim()));
  for (const auto& e : rows_[v]) x[e.index] = e.value;
  return x;
}

void LossConfig::validate() const {
  if (!(beta > 1.0)) throw std::invalid_argument(fmt::format("beta must exceed 1, got {}", beta));
  if (!(alpha >= 0.0)) throw std::invalid_argument(fmt::format("alpha must be >= 0, got {}", alpha));
  if (!(gamma >= 0.0)) throw std::invalid_argument(fmt::format("gamma must be >= 0, got {}", gamma));
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument(fmt::format("lambda must be >= 0, got {}", lambda));
  }
}

double balance_factor(int order) {
  if (order == 3) return 1.0;
  if (order == 4) return 1.5;
  throw std::invalid_argument(fmt::format("no balance factor for motif order {}", order));
}

double weighted_reconstruction_error(const Eigen::VectorXd& x, const Eigen::VectorXd& x_hat,
                                     double beta) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double z = x[j] > 0.0 ? beta : 1.0;
    const double r = (x[j] - x_hat[j]) * z;
    sum += r * r;
  }
  return sum;
}

HingeTerms hinge(std::span<const Eigen::VectorXd> members, const Eigen::VectorXd& negative,
                 double lambda, double mu) {
  HingeTerms h;
  h.mu = mu;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      h.intra += (members[a] - members[b]).squaredNorm();
      ++h.intra_terms;
    }
    h.to_negative += (members[a] - negative).squaredNorm();
    ++h.negative_terms;
  }
  const double inner = lambda + h.intra - mu * h.to_negative;
  h.active = inner > 0.0;
  h.value = h.active ? inner : 0.0;
  return h;
}

double weight_penalty(const ModelParams& p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.num_layers(); ++i) sum += p.layer(i).weights.squaredNorm();
  return sum;
}

namespace {

LossBreakdown run_batch(const ModelParams& p, std::span<const BatchItem> batch,
                        const TrainingInputs& inputs, const LossConfig& cfg, Gradients* grads) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  if (inputs.dim() != p.input_dim()) {
    throw std::invalid_argument(
        fmt::format("inputs have dimension {}, model expects {}", inputs.dim(), p.input_dim()));
  }
  LossBreakdown loss;
  const std::size_t depth = p.depth();
  const std::size_t full = p.num_layers();

  std::vector<Trace> traces;
  std::vector<Eigen::VectorXd> ys;
  for (const BatchItem& item : batch) {
    const auto members = item.motif.members();
    const double mu = balance_factor(item.motif.order);
    traces.clear();
    ys.clear();
    for (Vertex v : members) {
      traces.push_back(forward(p, inputs.dense(v), full));
      ys.push_back(traces.back().acts[depth]);
    }
    Trace neg = forward(p, inputs.dense(item.negative), depth);
    const Eigen::VectorXd& y_neg = neg.acts[depth];

    std::vector<Eigen::VectorXd> top(members.size());
    for (std::size_t a = 0; a < members.size(); ++a) {
      const Eigen::VectorXd& x = traces[a].acts.front();
      const Eigen::VectorXd& x_hat = traces[a].acts.back();
      loss.l_2nd += weighted_reconstruction_error(x, x_hat, cfg.beta);
      if (grads != nullptr) {
        const Eigen::ArrayXd z2 =
            (x.array() > 0.0).select(cfg.beta * cfg.beta, Eigen::ArrayXd::Ones(x.size()));
        top[a] = (-2.0 * z2 * (x - x_hat).array()).matrix();
      }
    }

    const HingeTerms h = hinge(ys, y_neg, cfg.lambda, mu);
    loss.l_1st += h.value;

    if (grads == nullptr) continue;

    std::vector<Eigen::VectorXd> gy(members.size(), Eigen::VectorXd::Zero(ys[0].size()));
    Eigen::VectorXd gy_neg = Eigen::VectorXd::Zero(y_neg.size());
    if (h.active && cfg.alpha != 0.0) {
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = 0; b < members.size(); ++b) {
          if (a != b) gy[a] += 2.0 * cfg.alpha * (ys[a] - ys[b]);
        }
        gy[a] -= 2.0 * cfg.alpha * mu * (ys[a] - y_neg);
        gy_neg += 2.0 * cfg.alpha * mu * (ys[a] - y_neg);
      }
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
      backward(p, traces[a], std::move(top[a]), &gy[a], *grads);
    }
    backward(p, neg, std::move(gy_neg), nullptr, *grads);
  }

  loss.l_reg = weight_penalty(p);
  require_finite(loss.l_2nd, "l_2nd");
  require_finite(loss.l_1st, "l_1st");
  require_finite(loss.l_reg, "l_reg");
  loss.total = loss.l_2nd + cfg.alpha * loss.l_1st + cfg.gamma * loss.l_reg;
  require_finite(loss.total, "total loss");

  if (grads != nullptr && cfg.gamma != 0.0) {
    for (std::size_t i = 0; i < p.num_layers(); ++i) {
      grads->layer(i).weights += 2.0 * cfg.gamma * p.layer(i).weights;
    }
  }
  return loss;
}

}  // namespace

LossBreakdown batch_loss(const ModelParams& p, std::span<const BatchItem> batch,
                         const TrainingInputs& inputs, const LossConfig& cfg) {
  return run_batch(p, batch, inputs, cfg, nullptr);
}

LossBreakdown loss_and_gradients(const ModelParams& p, std::span<const BatchItem> batch,
                                 const TrainingInputs& inputs, const LossConfig& cfg,
                                 Gradients& grads) {
  grads = p.zeros_like();
  return run_batch(p, batch, inputs, cfg, &grads);
}

}  // namespace motifae
