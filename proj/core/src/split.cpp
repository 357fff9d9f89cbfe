#include "motifae/split.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "motifae/errors.hpp"
#include "motifae/rng.hpp"

namespace motifae {

namespace {

constexpr std::uint64_t kHideStage = 1;
constexpr std::uint64_t kNegativeStage = 2;

// Above this share of the non-edge population, rejection sampling wastes too
// many draws and we sample from the explicit non-edge list instead.
constexpr double kDenseSampleRatio = 0.5;

}  // namespace

EvalSplit hide_edges(const Graph& g, double hide_fraction, std::uint64_t seed) {
  if (!(hide_fraction >= 0.0 && hide_fraction < 1.0)) {
    throw std::invalid_argument(fmt::format("hide fraction {} outside [0, 1)", hide_fraction));
  }
  EvalSplit split;
  split.seed = seed;
  split.hide_fraction = hide_fraction;
  split.original_edge_count = g.num_edges();

  const auto target =
      static_cast<std::size_t>(std::llround(hide_fraction * static_cast<double>(g.num_edges())));
  if (target == 0) {
    split.train_graph = g;
    return split;
  }

  std::vector<Edge> order = g.edges();
  Rng rng(derive_seed(seed, kHideStage));
  rng.shuffle(std::span<Edge>(order));

  std::vector<std::size_t> degree(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) degree[v] = g.degree(v);

  for (const Edge& e : order) {
    if (split.positives.size() == target) break;
    if (degree[e.u] > 1 && degree[e.v] > 1) {
      --degree[e.u];
      --degree[e.v];
      split.positives.push_back(e);
    }
  }
  split.shortfall = target - split.positives.size();
  split.train_graph = g.without(split.positives);
  return split;
}

std::uint64_t non_edge_count(const Graph& g) noexcept {
  const std::uint64_t n = g.num_vertices();
  return n * (n - (n > 0 ? 1 : 0)) / 2 - g.num_edges();
}

std::vector<Edge> sample_negatives(const Graph& original, std::size_t count, std::uint64_t seed) {
  const std::uint64_t population = non_edge_count(original);
  if (count > population) {
    throw DataError(fmt::format("requested {} negative pairs but the graph has only {} non-edges",
                                count, population));
  }
  std::vector<Edge> out;
  if (count == 0) return out;
  out.reserve(count);

  Rng rng(derive_seed(seed, kNegativeStage));
  const std::uint64_t n = original.num_vertices();

  if (static_cast<double>(count) > kDenseSampleRatio * static_cast<double>(population)) {
    std::vector<Edge> pool;
    pool.reserve(population);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (!original.has_edge(u, v)) pool.emplace_back(u, v);
      }
    }
    // Partial Fisher-Yates: the first `count` slots become the sample.
    for (std::size_t i = 0; i < count; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
  }

  std::unordered_set<Edge, EdgeHash> seen;
  while (out.size() < count) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a == b || original.has_edge(a, b)) continue;
    const Edge e(a, b);
    if (seen.insert(e).second) out.push_back(e);
  }
  return out;
}

EvalSplit make_split(const Graph& g, double hide_fraction, std::uint64_t seed) {
  EvalSplit split = hide_edges(g, hide_fraction, seed);
  split.negatives = sample_negatives(g, split.positives.size(), seed);
  return split;
}

namespace {

std::vector<Edge> read_pairs(const std::filesystem::path& path, const IngestReport& ids) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open split file '{}'", path.string()));
  std::vector<Edge> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line[0] == '%') continue;
    std::istringstream fields(line);
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (!(fields >> a >> b)) {
      throw DataError(fmt::format("{}: line {}: expected two vertex ids", path.string(), line_no));
    }
    pairs.emplace_back(ids.dense(a), ids.dense(b));
  }
  return pairs;
}

}  // namespace

void write_split(const std::string& dir, const EvalSplit& split,
                 const std::vector<std::int64_t>& original_ids) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream out(fs::path(dir) / "positives.txt");
    write_pairs(out, split.positives, original_ids);
  }
  {
    std::ofstream out(fs::path(dir) / "negatives.txt");
    write_pairs(out, split.negatives, original_ids);
  }
  nlohmann::ordered_json meta;
  meta["seed"] = split.seed;
  meta["hide_fraction"] = split.hide_fraction;
  meta["shortfall"] = split.shortfall;
  meta["original_edge_count"] = split.original_edge_count;
  std::ofstream out(fs::path(dir) / "split.json");
  out << meta.dump(2) << '\n';
}

EvalSplit read_split(const std::string& dir, const Graph& original, const IngestReport& ids) {
  namespace fs = std::filesystem;
  const fs::path meta_path = fs::path(dir) / "split.json";
  std::ifstream meta_in(meta_path);
  if (!meta_in) throw DataError(fmt::format("cannot open split sidecar '{}'", meta_path.string()));

  EvalSplit split;
  try {
    const auto meta = nlohmann::json::parse(meta_in);
    split.seed = meta.at("seed").get<std::uint64_t>();
    split.hide_fraction = meta.at("hide_fraction").get<double>();
    split.shortfall = meta.at("shortfall").get<std::size_t>();
    split.original_edge_count = meta.at("original_edge_count").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("{}: {}", meta_path.string(), e.what()));
  }
  if (split.original_edge_count != original.num_edges()) {
    throw DataError(fmt::format("split was drawn from a graph with {} edges, input has {}",
                                split.original_edge_count, original.num_edges()));
  }

  split.positives = read_pairs(fs::path(dir) / "positives.txt", ids);
  split.negatives = read_pairs(fs::path(dir) / "negatives.txt", ids);
  for (const Edge& e : split.positives) {
    if (!original.has_edge(e.u, e.v)) {
      throw DataError(fmt::format("positive pair ({}, {}) is not an edge of the input graph",
                                  ids.original_ids[e.u], ids.original_ids[e.v]));
    }
  }
  for (const Edge& e : split.negatives) {
    if (e.u == e.v || original.has_edge(e.u, e.v)) {
      throw DataError(fmt::format("negative pair ({}, {}) is an edge of the input graph",
                                  ids.original_ids[e.u], ids.original_ids[e.v]));
    }
  }
  split.train_graph = original.without(split.positives);
  return split;
}

}  // namespace motifae
