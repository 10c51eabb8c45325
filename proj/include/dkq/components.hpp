#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "dkq/coords.hpp"
#include "dkq/graph.hpp"

namespace dkq {

/// (a_2, ..., a_t); empty when t <= 1.
using InvariantVector = std::vector<Elem>;

/// a_r(u) = sum_{i=0}^{r} (u_{i,i} u'_{r-i,r-i} - u_{i,i+1} u_{r-i,r-i-1}).
/// Throws ParameterError unless 2 <= r <= t_of(k).
Elem invariant_a(const Vertex& u, int r, const Field& field);

InvariantVector invariant_vector(const Vertex& u, const Field& field);

/// Point with p'_{i,i} = -c_i for i = 2..t and every other coordinate zero.
/// Requires t >= 2 and c.size() == t - 1.
Vertex witness_point(std::span<const Elem> c, int k, const Field& field);

struct ComponentInfo {
  std::uint64_t order = 0;
  std::uint64_t size = 0;
  VertexId min_vertex = 0;
  InvariantVector invariant;
};

/// Connected components. Component 0 contains vertex 0 (the all-zero point of
/// D(k,q)); the others follow in ascending order of their smallest vertex.
struct ComponentLabeling {
  std::vector<std::uint32_t> component_of;
  std::vector<ComponentInfo> components;
  /// Whether per-component invariants were computed (needs coordinates).
  bool has_invariants = false;

  std::uint32_t count() const { return static_cast<std::uint32_t>(components.size()); }
};

/// Exact component labeling. When the graph carries coordinates, the
/// invariant vector of every vertex is checked against its component's and a
/// mismatch raises InternalError.
ComponentLabeling components(const BipartiteGraph& g);

struct ExtractedComponent {
  BipartiteGraph graph;
  std::vector<VertexId> new_to_old;
};

/// Induced subgraph on one component, points first, relative order kept.
/// Throws ParameterError for an unknown component id.
ExtractedComponent extract_component(const BipartiteGraph& g, const ComponentLabeling& labeling,
                                     std::uint32_t component_id);

struct ConservationResult {
  std::uint64_t edges_checked = 0;
  std::uint64_t violations = 0;
  bool exhaustive = false;
};

inline constexpr std::uint64_t kExhaustiveConservationLimit = 1'000'000;
inline constexpr std::uint64_t kConservationSamples = 10'000;

/// Compares invariant vectors across edges: every edge when the graph has at
/// most `exhaustive_limit` vertices, otherwise `samples` edges drawn with `rng`.
ConservationResult check_conservation(const BipartiteGraph& g, std::mt19937_64& rng,
                                      std::uint64_t exhaustive_limit = kExhaustiveConservationLimit,
                                      std::uint64_t samples = kConservationSamples);

}  // namespace dkq
