#include <benchmark/benchmark.h>

#include "motifae/generators.hpp"
#include "motifae/linkpred.hpp"
#include "motifae/motif.hpp"
#include "motifae/trainer.hpp"

namespace {

using namespace motifae;

void BM_Enumerate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  const Graph g = erdos_renyi(n, 8.0 / static_cast<double>(n), 1);
  std::size_t count = 0;
  for (auto _ : state) {
    count = 0;
    enumerate(g, order, [&](const MotifInstance&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.counters["instances"] = static_cast<double>(count);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * count));
}
BENCHMARK(BM_Enumerate)->Args({500, 3})->Args({2000, 3})->Args({500, 4})->Args({2000, 4});

void BM_Census(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = erdos_renyi(n, 8.0 / static_cast<double>(n), 2);
  for (auto _ : state) benchmark::DoNotOptimize(census(g));
}
BENCHMARK(BM_Census)->Arg(500)->Arg(1000);

void BM_LossAndGradients(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const std::vector<std::size_t> sizes{n / 2, n - n / 2};
  const auto bg = stochastic_block_model(sizes, 20.0 / static_cast<double>(n), 2.0 / static_cast<double>(n), 3);
  const auto inst = collect_instances(bg.graph, MotifType::M31);
  const auto c = CoOccurrence::build(inst, n);
  const TrainingInputs in(c, InputTransform::Saturate);
  const NegativeSampler sampler(c.participation());
  Rng rng(4);
  std::vector<BatchItem> batch;
  for (std::size_t i = 0; i < std::min<std::size_t>(500, inst.size()); ++i) {
    batch.push_back({inst[i], sampler.draw(inst[i], rng)});
  }
  const ModelParams p = init_params(std::vector<std::size_t>{n, d}, 5);
  Gradients g;
  for (auto _ : state) benchmark::DoNotOptimize(loss_and_gradients(p, batch, in, LossConfig{}, g));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * batch.size()));
}
BENCHMARK(BM_LossAndGradients)->Args({40, 16})->Args({500, 128})->Unit(benchmark::kMillisecond);

void BM_Auc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(6);
  std::vector<ScoredExample> ex(n);
  for (std::size_t i = 0; i < n; ++i) ex[i] = {{0, 1}, static_cast<double>(rng.below(1000)), i % 2 == 0};
  for (auto _ : state) benchmark::DoNotOptimize(auc(rank_examples(ex, 7)));
}
BENCHMARK(BM_Auc)->Arg(1000)->Arg(100000);

}  // namespace
