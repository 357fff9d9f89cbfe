#include "motifae/generators.hpp"

#include <numeric>

#include "motifae/rng.hpp"

namespace motifae {

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

BlockGraph stochastic_block_model(std::span<const std::size_t> block_sizes, double p_in,
                                  double p_out, std::uint64_t seed) {
  BlockGraph out;
  const std::size_t n = std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
  out.block.reserve(n);
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    out.block.insert(out.block.end(), block_sizes[b], b);
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double p = out.block[u] == out.block[v] ? p_in : p_out;
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  out.graph = Graph(n, edges);
  return out;
}

}  // namespace motifae
