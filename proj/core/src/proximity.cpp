#include "motifae/proximity.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace motifae {

CoOccurrence CoOccurrence::build(std::span<const MotifInstance> instances, std::size_t n) {
  CoOccurrence c;
  c.rows_.resize(n);
  c.participation_.assign(n, 0);
  c.instance_count_ = instances.size();

  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const MotifInstance& inst : instances) {
    const auto members = inst.members();
    for (std::size_t a = 0; a < members.size(); ++a) {
      if (members[a] >= n) {
        throw std::invalid_argument(
            fmt::format("instance vertex {} out of range for {} vertices", members[a], n));
      }
      ++c.participation_[members[a]];
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        pairs.emplace_back(members[a], members[b]);
        pairs.emplace_back(members[b], members[a]);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t k = 0; k < pairs.size();) {
    std::size_t end = k;
    while (end < pairs.size() && pairs[end] == pairs[k]) ++end;
    c.rows_[pairs[k].first].push_back({pairs[k].second, end - k});
    k = end;
  }
  return c;
}

std::uint64_t CoOccurrence::weight(Vertex i, Vertex j) const noexcept {
  const auto& r = rows_[i];
  const auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const Cell& cell, Vertex col) { return cell.column < col; });
  return it != r.end() && it->column == j ? it->count : 0;
}

std::vector<Vertex> CoOccurrence::uncovered_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < participation_.size(); ++v) {
    if (participation_[v] == 0) out.push_back(v);
  }
  return out;
}

SparseVector input_vector(const CoOccurrence& c, Vertex i, RowScaling scaling) {
  if (i >= c.size()) throw std::out_of_range(fmt::format("vertex {} out of range", i));
  SparseVector out;
  const auto row = c.row(i);
  out.reserve(row.size());
  double total = 0.0;
  for (const auto& cell : row) {
    out.push_back({cell.column, static_cast<double>(cell.count)});
    total += static_cast<double>(cell.count);
  }
  if (scaling == RowScaling::RowSum && total > 0.0) {
    for (auto& e : out) e.value /= total;
  }
  return out;
}

void write_coordinates(std::ostream& out, const CoOccurrence& c,
                       std::span<const std::int64_t> original_ids) {
  const auto id = [&](Vertex v) {
    return original_ids.empty() ? static_cast<std::int64_t>(v) : original_ids[v];
  };
  for (Vertex i = 0; i < c.size(); ++i) {
    for (const auto& cell : c.row(i)) {
      if (cell.column > i) out << id(i) << ' ' << id(cell.column) << ' ' << cell.count << '\n';
    }
  }
}

}  // namespace motifae
