#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace motifae {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with first < second.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) noexcept : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{e.u} << 32) | e.v);
  }
};

/// Immutable undirected simple graph over dense vertex ids 0..n-1 with
/// sorted adjacency lists (CSR layout).
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Self-loops are dropped and duplicates
  /// collapsed; every endpoint must be < n.
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex a, Vertex b) const noexcept;

  /// All edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Returns a copy with the given edges removed. Edges not present are ignored.
  Graph without(std::span<const Edge> removed) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

/// Bookkeeping from edge-list ingestion.
struct IngestReport {
  /// original_ids[dense] = id as written in the input.
  std::vector<std::int64_t> original_ids;
  std::unordered_map<std::int64_t, Vertex> dense_ids;
  std::size_t lines = 0;
  std::size_t comment_lines = 0;
  std::size_t self_loops = 0;
  /// Edge lines that repeated an already-seen undirected edge.
  std::size_t duplicates = 0;

  /// Dense id for an original id; throws DataError if unknown.
  Vertex dense(std::int64_t original) const;
};

struct ParsedGraph {
  Graph graph;
  IngestReport report;
};

/// Parses whitespace-separated integer pairs, one edge per line. Lines
/// starting with '#' or '%' and blank lines are skipped. Vertex ids are
/// remapped densely in ascending order of original id; a vertex whose only
/// edge is a self-loop is not kept. Throws ParseError on malformed tokens
/// and DataError when no usable edge remains.
ParsedGraph parse_edge_list(std::istream& in);
ParsedGraph parse_edge_list(std::string_view text);
ParsedGraph read_edge_list_file(const std::string& path);

/// Writes "u v" lines for every edge (u < v), optionally through an id map.
void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::int64_t> original_ids = {});
void write_pairs(std::ostream& out, std::span<const Edge> pairs,
                 std::span<const std::int64_t> original_ids = {});

}  // namespace motifae
