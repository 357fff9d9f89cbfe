#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "motifae/graph.hpp"

namespace motifae {

/// G(n, p): every pair is an edge independently with probability p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

struct BlockGraph {
  Graph graph;
  /// block[v] = index of the block containing v; blocks are contiguous id ranges.
  std::vector<std::size_t> block;
};

/// Planted-partition stochastic block model: pairs inside a block are
/// edges with probability p_in, pairs across blocks with p_out.
BlockGraph stochastic_block_model(std::span<const std::size_t> block_sizes, double p_in,
                                  double p_out, std::uint64_t seed);

}  // namespace motifae
