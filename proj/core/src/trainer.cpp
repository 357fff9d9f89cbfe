#include "motifae/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "motifae/errors.hpp"

namespace motifae {

namespace {

constexpr std::uint64_t kInitStage = 10;
constexpr std::uint64_t kBatchStage = 11;

}  // namespace

void TrainConfig::validate() const {
  loss.validate();
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (embed_dim < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument(fmt::format("learning rate must be > 0, got {}", learning_rate));
  }
  for (std::size_t h : hidden_dims) {
    if (h == 0) throw std::invalid_argument("zero-sized hidden layer");
  }
}

NegativeSampler::NegativeSampler(std::span<const std::uint64_t> participation)
    : weights_(participation.begin(), participation.end()) {
  cumulative_.resize(weights_.size());
  std::partial_sum(weights_.begin(), weights_.end(), cumulative_.begin());
}

Vertex NegativeSampler::draw(const MotifInstance& motif, Rng& rng) const {
  const auto members = motif.members();
  const std::uint64_t total = cumulative_.empty() ? 0 : cumulative_.back();
  std::uint64_t excluded = 0;
  for (Vertex v : members) {
    if (v < weights_.size()) excluded += weights_[v];
  }
  if (total <= excluded) {
    throw std::invalid_argument("no vertex outside the motif belongs to any motif instance");
  }
  for (;;) {
    const std::uint64_t r = rng.below(total);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    const auto v = static_cast<Vertex>(it - cumulative_.begin());
    if (std::find(members.begin(), members.end(), v) == members.end()) return v;
  }
}

AdamOptimizer::AdamOptimizer(const ModelParams& shape, double learning_rate, double beta1,
                             double beta2, double epsilon)
    : lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(epsilon),
      m_(shape.zeros_like()),
      v_(shape.zeros_like()) {}

void AdamOptimizer::step(ModelParams& params, const Gradients& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  const auto update = [&](auto& theta, const auto& g, auto& m, auto& v) {
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
    theta.array() -= lr_ * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
  };
  for (std::size_t i = 0; i < params.num_layers(); ++i) {
    update(params.layer(i).weights, grads.layer(i).weights, m_.layer(i).weights,
           v_.layer(i).weights);
    update(params.layer(i).bias, grads.layer(i).bias, m_.layer(i).bias, v_.layer(i).bias);
  }
}

Embeddings embed_all(const ModelParams& p, const TrainingInputs& inputs) {
  Embeddings out(inputs.dim(), p.embed_dim());
  for (Vertex v = 0; v < inputs.dim(); ++v) {
    const Eigen::VectorXd y = encode(p, inputs.dense(v));
    std::copy(y.data(), y.data() + y.size(), out.row(v).begin());
  }
  return out;
}

TrainResult train(const CoOccurrence& c, std::span<const MotifInstance> instances,
                  const TrainConfig& cfg) {
  cfg.validate();
  if (instances.empty()) throw std::invalid_argument("no motif instances to train on");

  std::vector<std::size_t> dims;
  dims.push_back(c.size());
  dims.insert(dims.end(), cfg.hidden_dims.begin(), cfg.hidden_dims.end());
  dims.push_back(cfg.embed_dim);

  TrainResult result;
  result.params = init_params(dims, derive_seed(cfg.seed, kInitStage));
  result.uncovered_vertices = c.uncovered_vertices().size();

  const TrainingInputs inputs(c, cfg.transform, cfg.scaling);
  const NegativeSampler sampler(c.participation());
  AdamOptimizer adam(result.params, cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2,
                     cfg.adam_epsilon);
  Rng rng(derive_seed(cfg.seed, kBatchStage));

  std::vector<std::size_t> order(instances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch_size = std::min(cfg.batch_size, instances.size());

  std::vector<BatchItem> batch(batch_size);
  Gradients grads;
  result.history.reserve(cfg.max_iters);
  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    // Partial Fisher-Yates: a uniform subset of distinct motifs.
    for (std::size_t i = 0; i < batch_size; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(order.size() - i));
      std::swap(order[i], order[j]);
      batch[i].motif = instances[order[i]];
      batch[i].negative = sampler.draw(batch[i].motif, rng);
    }
    LossBreakdown loss;
    try {
      loss = loss_and_gradients(result.params, batch, inputs, cfg.loss, grads);
    } catch (const NumericalError& e) {
      throw DivergenceError(iter + 1, e.what());
    }
    adam.step(result.params, grads);
    if (!result.params.all_finite()) throw DivergenceError(iter + 1, "non-finite parameters");
    result.history.push_back(loss);
  }

  result.embeddings = embed_all(result.params, inputs);
  return result;
}

void write_embeddings(std::ostream& out, const Embeddings& e,
                      std::span<const std::int64_t> original_ids) {
  out << e.size() << ' ' << e.dim() << '\n';
  fmt::memory_buffer line;
  for (Vertex v = 0; v < e.size(); ++v) {
    line.clear();
    fmt::format_to(std::back_inserter(line), "{}",
                   original_ids.empty() ? static_cast<std::int64_t>(v) : original_ids[v]);
    for (double x : e.row(v)) fmt::format_to(std::back_inserter(line), " {:.17g}", x);
    line.push_back('\n');
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

Embeddings read_embeddings(std::istream& in, const IngestReport& ids) {
  std::string header;
  if (!std::getline(in, header)) throw DataError("embedding file is empty");
  std::istringstream hs(header);
  std::size_t n = 0;
  std::size_t d = 0;
  if (!(hs >> n >> d) || d == 0) throw DataError(fmt::format("bad embedding header '{}'", header));
  if (n != ids.original_ids.size()) {
    throw DataError(fmt::format("embedding file has {} vertices, graph has {}", n,
                                ids.original_ids.size()));
  }
  Embeddings e(n, d);
  std::vector<bool> seen(n, false);
  std::string line;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::int64_t id = 0;
    if (!(ls >> id)) throw DataError(fmt::format("embedding line {}: missing vertex id", line_no));
    const Vertex v = ids.dense(id);
    if (seen[v]) throw DataError(fmt::format("embedding line {}: repeated vertex {}", line_no, id));
    seen[v] = true;
    auto row = e.row(v);
    for (std::size_t k = 0; k < d; ++k) {
      if (!(ls >> row[k])) {
        throw DataError(fmt::format("embedding line {}: expected {} values", line_no, d));
      }
    }
    double extra = 0.0;
    if (ls >> extra) {
      throw DataError(fmt::format("embedding line {}: more than {} values", line_no, d));
    }
    ++rows;
  }
  if (rows != n) throw DataError(fmt::format("embedding file lists {} of {} vertices", rows, n));
  return e;
}

void write_loss_history(std::ostream& out, std::span<const LossBreakdown> history) {
  out << "iteration,l_2nd,l_1st,l_reg,total\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto& h = history[i];
    out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g}\n", i + 1, h.l_2nd, h.l_1st, h.l_reg,
                       h.total);
  }
}

}  // namespace motifae
