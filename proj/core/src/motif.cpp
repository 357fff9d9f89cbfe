#include "motifae/motif.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "motifae/rng.hpp"

namespace motifae {

namespace {

constexpr std::array<std::string_view, kMotifTypeCount> kCodes = {"M31", "M32", "M41", "M42",
                                                                  "M43", "M44", "M45", "M46"};

constexpr std::array<std::string_view, 8> kShapeNames = {
    "wedge", "triangle", "path", "star", "cycle", "tailed_triangle", "diamond", "clique"};

constexpr std::array<MotifShape, kMotifTypeCount> kDefaultShapes = {
    MotifShape::Wedge, MotifShape::Triangle,       MotifShape::Path,    MotifShape::Star,
    MotifShape::Cycle, MotifShape::TailedTriangle, MotifShape::Diamond, MotifShape::Clique};

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint8_t permute_mask(int order, std::uint8_t mask, std::span<const int> perm) {
  std::uint8_t out = 0;
  for (int a = 0; a < order; ++a) {
    for (int b = a + 1; b < order; ++b) {
      if (mask & (1u << pair_bit(order, a, b))) {
        const int pa = perm[a];
        const int pb = perm[b];
        out |= static_cast<std::uint8_t>(1u << pair_bit(order, std::min(pa, pb), std::max(pa, pb)));
      }
    }
  }
  return out;
}

}  // namespace

std::string_view motif_code(MotifType t) noexcept { return kCodes[index_of(t)]; }

MotifType parse_motif_type(std::string_view code) {
  const std::string upper = [&] {
    std::string s(trim(code));
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }();
  for (std::size_t i = 0; i < kCodes.size(); ++i) {
    if (upper == kCodes[i]) return static_cast<MotifType>(i);
  }
  throw std::invalid_argument(fmt::format("unknown motif type '{}'", code));
}

std::vector<MotifType> parse_motif_types(std::string_view list) {
  std::vector<MotifType> out;
  if (lowercase(trim(list)) == "all") return {kAllMotifTypes.begin(), kAllMotifTypes.end()};
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view item = trim(list.substr(0, comma));
    if (!item.empty()) out.push_back(parse_motif_type(item));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

std::string_view shape_name(MotifShape s) noexcept { return kShapeNames[static_cast<std::size_t>(s)]; }

int shape_order(MotifShape s) noexcept { return s <= MotifShape::Triangle ? 3 : 4; }

int pair_bit(int order, int a, int b) noexcept {
  if (order == 3) return a + b - 1;
  // (0,1)=0 (0,2)=1 (0,3)=2 (1,2)=3 (1,3)=4 (2,3)=5
  static constexpr int kBits[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return kBits[a][b];
}

std::uint8_t canonical_mask(MotifShape s) noexcept {
  switch (s) {
    case MotifShape::Wedge:          return 0b011;     // 0-1, 0-2
    case MotifShape::Triangle:       return 0b111;
    case MotifShape::Path:           return 0b101001;  // 0-1, 1-2, 2-3
    case MotifShape::Star:           return 0b000111;  // 0-1, 0-2, 0-3
    case MotifShape::Cycle:          return 0b101101;  // 0-1, 1-2, 2-3, 0-3
    case MotifShape::TailedTriangle: return 0b101011;  // 0-1, 0-2, 1-2, 2-3
    case MotifShape::Diamond:        return 0b111011;  // all but 0-3
    case MotifShape::Clique:         return 0b111111;
  }
  return 0;
}

MotifCatalog::MotifCatalog() : shapes_(kDefaultShapes) { rebuild_tables(); }

MotifCatalog MotifCatalog::with_overrides(std::string_view overrides) {
  MotifCatalog catalog;
  std::string_view rest = overrides;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument(fmt::format("motif map entry '{}' is not CODE=shape", item));
      }
      const MotifType code = parse_motif_type(item.substr(0, eq));
      const std::string name = lowercase(trim(item.substr(eq + 1)));
      const auto it = std::find(kShapeNames.begin(), kShapeNames.end(), name);
      if (it == kShapeNames.end()) {
        throw std::invalid_argument(fmt::format("unknown motif shape '{}'", name));
      }
      const auto shape = static_cast<MotifShape>(it - kShapeNames.begin());
      if (shape_order(shape) != motif_order(code)) {
        throw std::invalid_argument(
            fmt::format("shape '{}' does not have the order of {}", name, motif_code(code)));
      }
      catalog.shapes_[index_of(code)] = shape;
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  auto sorted = catalog.shapes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(fmt::format("motif map '{}' assigns one shape to two codes", overrides));
  }
  catalog.rebuild_tables();
  return catalog;
}

void MotifCatalog::rebuild_tables() {
  table3_.fill(-1);
  table4_.fill(-1);
  for (MotifType t : kAllMotifTypes) {
    const int order = motif_order(t);
    const std::uint8_t base = edge_mask(t);
    std::array<int, 4> perm = {0, 1, 2, 3};
    do {
      const std::uint8_t m = permute_mask(order, base, std::span<const int>(perm.data(), order));
      if (order == 3) {
        table3_[m] = static_cast<std::int8_t>(index_of(t));
      } else {
        table4_[m] = static_cast<std::int8_t>(index_of(t));
      }
    } while (std::next_permutation(perm.begin(), perm.begin() + order));
  }
}

std::string MotifCatalog::describe() const {
  std::string out;
  for (MotifType t : kAllMotifTypes) {
    if (!out.empty()) out += ',';
    out += fmt::format("{}={}", motif_code(t), shape_name(shape(t)));
  }
  return out;
}

const MotifCatalog& default_catalog() {
  static const MotifCatalog catalog;
  return catalog;
}

std::uint8_t induced_mask(const Graph& g, std::span<const Vertex> vertices) {
  const int order = static_cast<int>(vertices.size());
  std::uint8_t mask = 0;
  for (int a = 0; a < order; ++a) {
    for (int b = a + 1; b < order; ++b) {
      if (g.has_edge(vertices[a], vertices[b])) {
        mask |= static_cast<std::uint8_t>(1u << pair_bit(order, a, b));
      }
    }
  }
  return mask;
}

std::optional<MotifType> classify(const Graph& g, std::span<const Vertex> vertices,
                                  const MotifCatalog& catalog) {
  const std::size_t order = vertices.size();
  if (order != 3 && order != 4) {
    throw std::invalid_argument(fmt::format("motif tuples have 3 or 4 vertices, got {}", order));
  }
  for (std::size_t a = 0; a < order; ++a) {
    if (vertices[a] >= g.num_vertices()) {
      throw std::invalid_argument(fmt::format("vertex {} out of range", vertices[a]));
    }
    for (std::size_t b = a + 1; b < order; ++b) {
      if (vertices[a] == vertices[b]) {
        throw std::invalid_argument(fmt::format("duplicate vertex {} in motif tuple", vertices[a]));
      }
    }
  }
  return catalog.lookup(static_cast<int>(order), induced_mask(g, vertices));
}

namespace {

// ESU state for one root. `members` is the current connected subgraph,
// `extension` the sorted candidate set.
class EsuWalker {
 public:
  EsuWalker(const Graph& g, Vertex root, int order, const InstanceVisitor& visit,
            const MotifCatalog& catalog)
      : g_(g), root_(root), order_(order), visit_(visit), catalog_(catalog) {}

  void run() {
    members_.clear();
    members_.push_back(root_);
    std::vector<Vertex> extension;
    for (Vertex u : g_.neighbors(root_)) {
      if (u > root_) extension.push_back(u);
    }
    extend(std::move(extension));
  }

 private:
  bool adjacent_to_members(Vertex u) const {
    for (Vertex s : members_) {
      if (s == u || g_.has_edge(s, u)) return true;
    }
    return false;
  }

  void emit() {
    MotifInstance inst;
    inst.order = static_cast<std::uint8_t>(order_);
    std::copy(members_.begin(), members_.end(), inst.vertices.begin());
    std::sort(inst.vertices.begin(), inst.vertices.begin() + order_);
    // Connected by construction, so lookup always succeeds.
    inst.type = *catalog_.lookup(order_, induced_mask(g_, inst.members()));
    visit_(inst);
  }

  void extend(std::vector<Vertex> extension) {
    if (static_cast<int>(members_.size()) == order_) {
      emit();
      return;
    }
    for (std::size_t i = 0; i < extension.size(); ++i) {
      const Vertex w = extension[i];
      // Remaining candidates plus w's exclusive neighbourhood above the root.
      std::vector<Vertex> next(extension.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                               extension.end());
      if (static_cast<int>(members_.size()) + 1 < order_) {
        for (Vertex u : g_.neighbors(w)) {
          if (u > root_ && !adjacent_to_members(u)) next.push_back(u);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
      }
      members_.push_back(w);
      extend(std::move(next));
      members_.pop_back();
    }
  }

  const Graph& g_;
  Vertex root_;
  int order_;
  const InstanceVisitor& visit_;
  const MotifCatalog& catalog_;
  std::vector<Vertex> members_;
};

void check_order(int order) {
  if (order != 3 && order != 4) {
    throw std::invalid_argument(fmt::format("motif order must be 3 or 4, got {}", order));
  }
}

}  // namespace

void enumerate_from_root(const Graph& g, Vertex root, int order, const InstanceVisitor& visit,
                         const MotifCatalog& catalog) {
  check_order(order);
  EsuWalker(g, root, order, visit, catalog).run();
}

void enumerate(const Graph& g, int order, const InstanceVisitor& visit,
               const MotifCatalog& catalog) {
  check_order(order);
  for (Vertex root = 0; root < g.num_vertices(); ++root) {
    EsuWalker(g, root, order, visit, catalog).run();
  }
}

std::vector<MotifInstance> enumerate_instances(const Graph& g, int order,
                                               const MotifCatalog& catalog) {
  std::vector<MotifInstance> out;
  enumerate(g, order, [&](const MotifInstance& inst) { out.push_back(inst); }, catalog);
  return out;
}

std::vector<MotifInstance> collect_instances(const Graph& g, MotifType type,
                                             const MotifCatalog& catalog) {
  std::vector<MotifInstance> out;
  enumerate(
      g, motif_order(type),
      [&](const MotifInstance& inst) {
        if (inst.type == type) out.push_back(inst);
      },
      catalog);
  return out;
}

double Census::avg_participation(MotifType t) const noexcept {
  if (participation.empty()) return 0.0;
  std::uint64_t total = 0;
  for (const auto& row : participation) total += row[index_of(t)];
  return static_cast<double>(total) / static_cast<double>(participation.size());
}

Census census(const Graph& g, const MotifCatalog& catalog) {
  Census c;
  c.participation.assign(g.num_vertices(), {});
  const InstanceVisitor tally = [&](const MotifInstance& inst) {
    const std::size_t t = index_of(inst.type);
    ++c.per_type_count[t];
    for (Vertex v : inst.members()) ++c.participation[v][t];
  };
  enumerate(g, 3, tally, catalog);
  enumerate(g, 4, tally, catalog);
  return c;
}

std::vector<MotifInstance> sample_instances(const Graph& g, MotifType type, std::size_t k,
                                            std::uint64_t seed, const MotifCatalog& catalog) {
  std::vector<MotifInstance> reservoir;
  if (k == 0) return reservoir;
  Rng rng(seed);
  std::uint64_t seen = 0;
  enumerate(
      g, motif_order(type),
      [&](const MotifInstance& inst) {
        if (inst.type != type) return;
        if (reservoir.size() < k) {
          reservoir.push_back(inst);
        } else {
          const std::uint64_t j = rng.below(seen + 1);
          if (j < k) reservoir[j] = inst;
        }
        ++seen;
      },
      catalog);
  return reservoir;
}

void write_instances(std::ostream& out, std::span<const MotifInstance> instances,
                     std::span<const std::int64_t> original_ids) {
  for (const MotifInstance& inst : instances) {
    out << motif_code(inst.type);
    for (Vertex v : inst.members()) {
      out << ' ' << (original_ids.empty() ? static_cast<std::int64_t>(v) : original_ids[v]);
    }
    out << '\n';
  }
}

}  // namespace motifae
