#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dkq/coords.hpp"
#include "dkq/field.hpp"

namespace dkq {

/// Vertex id of D(k,q): points occupy [0, q^k), lines [q^k, 2q^k). Within a
/// side the id is sum_j index(coords[j]) * q^(j-1), position 1 least significant.
using VertexId = std::uint32_t;

using Edge = std::pair<VertexId, VertexId>;

inline constexpr std::uint64_t kDefaultVertexBudget = std::uint64_t{1} << 26;

/// Provenance attached to a graph. A graph built from D(k,q) has a field and
/// k set; a component extracted from it additionally carries `origin`, the
/// D(k,q) id of every vertex.
struct GraphInfo {
  std::string kind = "graph";  // "D", "CD" or "graph"
  int k = 0;
  std::optional<Field> field;
  std::optional<std::uint32_t> component;
  std::vector<VertexId> origin;
};

/// Immutable undirected graph in compressed sparse form with neighbor lists
/// sorted ascending. Vertices below point_count() form the point side.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(GraphInfo info, VertexId point_count, std::vector<std::uint64_t> offsets,
                 std::vector<VertexId> adjacency);

  /// Builds from an undirected edge list; each edge is listed once. Throws
  /// FormatError on self loops, duplicates, or out of range ids.
  static BipartiteGraph from_edges(VertexId vertex_count, VertexId point_count, std::span<const Edge> edges,
                                   GraphInfo info = {});

  VertexId vertex_count() const { return static_cast<VertexId>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  VertexId point_count() const { return point_count_; }
  std::uint64_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool is_point(VertexId v) const { return v < point_count_; }
  bool has_edge(VertexId a, VertexId b) const;

  /// Every edge once as (min id, max id), ascending. For D(k,q) that is (point, line).
  std::vector<Edge> edges() const;

  const GraphInfo& info() const { return info_; }

  /// True when every vertex can be decoded to D(k,q) coordinates.
  bool has_coordinates() const;
  /// Coordinates of a vertex; requires has_coordinates().
  Vertex vertex(VertexId v) const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.point_count_ == b.point_count_ && a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  GraphInfo info_;
  VertexId point_count_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> adjacency_;
};

/// q^k, throwing BudgetError when it overflows 64 bits.
std::uint64_t side_size(std::uint32_t q, int k);

VertexId encode(const Vertex& v, std::uint32_t q);
/// Throws std::out_of_range for id >= 2q^k.
Vertex decode(std::uint64_t id, int k, std::uint32_t q);

/// The unique line with first coordinate l1 incident to point p.
Vertex line_through(const Vertex& point, Elem l1, const Field& field);
/// The unique point with first coordinate p1 incident to line l.
Vertex point_on(const Vertex& line, Elem p1, const Field& field);
/// True iff the first k-1 incidence relations hold.
bool incident(const Vertex& point, const Vertex& line, const Field& field);

struct BuildOptions {
  std::uint64_t vertex_budget = kDefaultVertexBudget;
  bool force = false;
};

/// D(k,q). k = 1 is built as k = 2. Throws BudgetError when 2q^k exceeds the
/// budget and force is not set.
BipartiteGraph build(int k, const Field& field, const BuildOptions& options = {});

/// Throws BudgetError if D(k,q) would not fit the options.
void check_budget(int k, std::uint32_t q, const BuildOptions& options);

}  // namespace dkq
