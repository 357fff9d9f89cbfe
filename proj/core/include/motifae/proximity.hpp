#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "motifae/graph.hpp"
#include "motifae/motif.hpp"

namespace motifae {

struct SparseEntry {
  Vertex index = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sparse vector with entries sorted by index.
using SparseVector = std::vector<SparseEntry>;

/// Motif co-occurrence matrix: weight(i, j) is the number of selected motif
/// instances containing both i and j. Symmetric with a zero diagonal.
class CoOccurrence {
 public:
  struct Cell {
    Vertex column = 0;
    std::uint64_t count = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
  };

  CoOccurrence() = default;

  /// Accumulates every unordered member pair of every instance. The result
  /// does not depend on the order of `instances`.
  static CoOccurrence build(std::span<const MotifInstance> instances, std::size_t n);

  std::size_t size() const noexcept { return rows_.size(); }
  std::span<const Cell> row(Vertex i) const noexcept { return rows_[i]; }
  std::uint64_t weight(Vertex i, Vertex j) const noexcept;

  /// Number of selected instances containing v.
  std::uint64_t participation(Vertex v) const noexcept { return participation_[v]; }
  std::span<const std::uint64_t> participation() const noexcept { return participation_; }
  std::size_t instance_count() const noexcept { return instance_count_; }

  /// Vertices that belong to no selected instance.
  std::vector<Vertex> uncovered_vertices() const;

  friend bool operator==(const CoOccurrence&, const CoOccurrence&) = default;

 private:
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::uint64_t> participation_;
  std::size_t instance_count_ = 0;
};

enum class RowScaling {
  None,      // raw counts
  RowSum,    // divide by the row total
};

/// Second-order input vector of vertex i: row i of the co-occurrence
/// matrix, entry i excluded (always zero).
SparseVector input_vector(const CoOccurrence& c, Vertex i, RowScaling scaling = RowScaling::None);

/// Coordinate dump "i j w_ij" for i < j, sorted by (i, j).
void write_coordinates(std::ostream& out, const CoOccurrence& c,
                       std::span<const std::int64_t> original_ids = {});

}  // namespace motifae
