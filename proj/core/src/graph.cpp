#include "motifae/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "motifae/errors.hpp"

namespace motifae {

Graph::Graph(std::size_t n, std::span<const Edge> edges) {
  std::vector<Edge> clean;
  clean.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw DataError(fmt::format("edge ({}, {}) out of range for {} vertices", e.u, e.v, n));
    }
    if (e.u != e.v) clean.push_back(e);
  }
  std::sort(clean.begin(), clean.end());
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());

  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : clean) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  targets_.resize(offsets_[n]);

  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : clean) {
    targets_[cursor[e.u]++] = e.v;
    targets_[cursor[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

bool Graph::has_edge(Vertex a, Vertex b) const noexcept {
  if (a >= num_vertices() || b >= num_vertices()) return false;
  // Search the shorter list.
  if (degree(a) > degree(b)) std::swap(a, b);
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::without(std::span<const Edge> removed) const {
  std::unordered_set<Edge, EdgeHash> drop(removed.begin(), removed.end());
  std::vector<Edge> kept;
  kept.reserve(num_edges());
  for (const Edge& e : edges()) {
    if (!drop.contains(e)) kept.push_back(e);
  }
  return Graph(num_vertices(), kept);
}

Vertex IngestReport::dense(std::int64_t original) const {
  const auto it = dense_ids.find(original);
  if (it == dense_ids.end()) throw DataError(fmt::format("unknown vertex id {}", original));
  return it->second;
}

namespace {

bool next_token(std::string_view line, std::size_t& pos, std::string_view& token) {
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
  if (pos >= line.size()) return false;
  const std::size_t start = pos;
  while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
  token = line.substr(start, pos - start);
  return true;
}

std::int64_t parse_id(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, fmt::format("expected integer vertex id, got '{}'", token));
  }
  return value;
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in) {
  ParsedGraph result;
  IngestReport& report = result.report;

  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    std::size_t pos = 0;
    std::string_view first;
    if (!next_token(view, pos, first)) continue;
    if (first.front() == '#' || first.front() == '%') {
      ++report.comment_lines;
      continue;
    }
    std::string_view second;
    if (!next_token(view, pos, second)) {
      throw ParseError(line_no, "expected two vertex ids");
    }
    // Trailing columns (weights, timestamps) are tolerated and ignored.
    const std::int64_t a = parse_id(first, line_no);
    const std::int64_t b = parse_id(second, line_no);
    if (a == b) {
      ++report.self_loops;
      continue;
    }
    raw.emplace_back(std::min(a, b), std::max(a, b));
  }
  report.lines = line_no;

  if (raw.empty()) throw DataError("edge list contains no usable edges");

  std::map<std::int64_t, Vertex> ordered;
  for (const auto& [a, b] : raw) {
    ordered.emplace(a, 0);
    ordered.emplace(b, 0);
  }
  Vertex next = 0;
  report.original_ids.reserve(ordered.size());
  for (auto& [original, dense] : ordered) {
    dense = next++;
    report.original_ids.push_back(original);
    report.dense_ids.emplace(original, dense);
  }

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [a, b] : raw) edges.emplace_back(ordered.at(a), ordered.at(b));

  result.graph = Graph(ordered.size(), edges);
  report.duplicates = raw.size() - result.graph.num_edges();
  return result;
}

ParsedGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

ParsedGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open edge list '{}'", path));
  try {
    return parse_edge_list(in);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path, e.what()));
  }
}

namespace {

std::int64_t mapped(Vertex v, std::span<const std::int64_t> ids) {
  return ids.empty() ? static_cast<std::int64_t>(v) : ids[v];
}

}  // namespace

void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::int64_t> original_ids) {
  const auto edges = g.edges();
  write_pairs(out, edges, original_ids);
}

void write_pairs(std::ostream& out, std::span<const Edge> pairs,
                 std::span<const std::int64_t> original_ids) {
  for (const Edge& e : pairs) {
    out << mapped(e.u, original_ids) << ' ' << mapped(e.v, original_ids) << '\n';
  }
}

}  // namespace motifae
