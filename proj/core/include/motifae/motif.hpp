#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifae/graph.hpp"

namespace motifae {

/// The connected isomorphism classes on three and four vertices.
enum class MotifType : std::uint8_t { M31, M32, M41, M42, M43, M44, M45, M46 };

inline constexpr std::size_t kMotifTypeCount = 8;
inline constexpr std::array<MotifType, kMotifTypeCount> kAllMotifTypes = {
    MotifType::M31, MotifType::M32, MotifType::M41, MotifType::M42,
    MotifType::M43, MotifType::M44, MotifType::M45, MotifType::M46};

constexpr std::size_t index_of(MotifType t) noexcept { return static_cast<std::size_t>(t); }
constexpr int motif_order(MotifType t) noexcept { return t <= MotifType::M32 ? 3 : 4; }

std::string_view motif_code(MotifType t) noexcept;
/// Parses "M31".."M46" (case-insensitive). Throws std::invalid_argument.
MotifType parse_motif_type(std::string_view code);
/// Parses a comma-separated list of codes; "all" expands to every type.
std::vector<MotifType> parse_motif_types(std::string_view list);

/// Unlabeled connected shapes, independent of the M-code naming.
enum class MotifShape : std::uint8_t {
  Wedge,           // 3-path
  Triangle,
  Path,            // 4-path
  Star,            // 3-star
  Cycle,           // 4-cycle
  TailedTriangle,  // triangle plus a pendant edge
  Diamond,         // K4 minus one edge
  Clique,          // K4
};

std::string_view shape_name(MotifShape s) noexcept;
int shape_order(MotifShape s) noexcept;

/// Bit index of vertex pair (a, b), a < b, within an order-3 or order-4
/// edge mask. Order 3: (0,1)=0 (0,2)=1 (1,2)=2. Order 4: (0,1)=0 (0,2)=1
/// (0,3)=2 (1,2)=3 (1,3)=4 (2,3)=5.
int pair_bit(int order, int a, int b) noexcept;

/// Edge mask of a shape in its canonical labeling.
std::uint8_t canonical_mask(MotifShape s) noexcept;

/// Maps motif codes to shapes and classifies induced edge masks.
///
/// The default assignment is M31=wedge, M32=triangle, M41=path, M42=star,
/// M43=cycle, M44=tailed_triangle, M45=diamond, M46=clique. It can be
/// overridden with a spec such as "M41=star,M42=path"; the result must
/// remain a bijection between codes and shapes of the same order.
class MotifCatalog {
 public:
  MotifCatalog();

  static MotifCatalog with_overrides(std::string_view overrides);

  MotifShape shape(MotifType t) const noexcept { return shapes_[index_of(t)]; }
  std::uint8_t edge_mask(MotifType t) const noexcept { return canonical_mask(shape(t)); }

  /// Class of an induced edge mask, or nullopt when disconnected.
  std::optional<MotifType> lookup(int order, std::uint8_t mask) const noexcept {
    const std::int8_t c = order == 3 ? table3_[mask & 0x7] : table4_[mask & 0x3f];
    if (c < 0) return std::nullopt;
    return static_cast<MotifType>(c);
  }

  /// Flat "M31=wedge,..." rendering of the full mapping.
  std::string describe() const;

 private:
  void rebuild_tables();

  std::array<MotifShape, kMotifTypeCount> shapes_;
  std::array<std::int8_t, 8> table3_{};
  std::array<std::int8_t, 64> table4_{};
};

const MotifCatalog& default_catalog();

/// One occurrence of a motif: sorted member vertices plus the class of the
/// subgraph they induce.
struct MotifInstance {
  std::array<Vertex, 4> vertices{};
  std::uint8_t order = 0;
  MotifType type = MotifType::M31;

  std::span<const Vertex> members() const noexcept { return {vertices.data(), order}; }

  friend bool operator==(const MotifInstance& a, const MotifInstance& b) noexcept {
    return a.order == b.order && a.type == b.type && a.vertices == b.vertices;
  }
  friend bool operator<(const MotifInstance& a, const MotifInstance& b) noexcept {
    if (a.order != b.order) return a.order < b.order;
    return a.vertices < b.vertices;
  }
};

/// Edge mask of the subgraph induced by `vertices` (3 or 4 of them), with
/// bits assigned by position in the given tuple.
std::uint8_t induced_mask(const Graph& g, std::span<const Vertex> vertices);

/// Motif class of the induced subgraph, or nullopt when it is disconnected.
/// Throws std::invalid_argument on a tuple that is not 3 or 4 distinct
/// in-range vertices.
std::optional<MotifType> classify(const Graph& g, std::span<const Vertex> vertices,
                                  const MotifCatalog& catalog = default_catalog());

using InstanceVisitor = std::function<void(const MotifInstance&)>;

/// ESU enumeration of every connected induced subgraph with `order` (3 or
/// 4) vertices, each exactly once. Instances are emitted grouped by their
/// smallest vertex (root) in ascending order; within a root the order is
/// fixed by always extending with the smallest candidate first.
void enumerate(const Graph& g, int order, const InstanceVisitor& visit,
               const MotifCatalog& catalog = default_catalog());

/// Instances rooted at a single vertex; concatenating over roots in
/// ascending order reproduces enumerate().
void enumerate_from_root(const Graph& g, Vertex root, int order, const InstanceVisitor& visit,
                         const MotifCatalog& catalog = default_catalog());

std::vector<MotifInstance> enumerate_instances(const Graph& g, int order,
                                               const MotifCatalog& catalog = default_catalog());

/// All instances of a single type, in enumeration order.
std::vector<MotifInstance> collect_instances(const Graph& g, MotifType type,
                                             const MotifCatalog& catalog = default_catalog());

/// Per-type totals and per-vertex participation.
struct Census {
  std::array<std::uint64_t, kMotifTypeCount> per_type_count{};
  /// participation[v][t] = number of type-t instances containing v.
  std::vector<std::array<std::uint64_t, kMotifTypeCount>> participation;

  std::uint64_t count(MotifType t) const noexcept { return per_type_count[index_of(t)]; }
  /// Mean over all vertices of participation[v][t].
  double avg_participation(MotifType t) const noexcept;
};

Census census(const Graph& g, const MotifCatalog& catalog = default_catalog());

/// Reservoir sample of k instances of `type`, uniform without replacement.
/// Returns every instance when fewer than k exist.
std::vector<MotifInstance> sample_instances(const Graph& g, MotifType type, std::size_t k,
                                            std::uint64_t seed,
                                            const MotifCatalog& catalog = default_catalog());

/// "Mxy v1 v2 v3 [v4]" lines, optionally through an original-id map.
void write_instances(std::ostream& out, std::span<const MotifInstance> instances,
                     std::span<const std::int64_t> original_ids = {});

}  // namespace motifae
