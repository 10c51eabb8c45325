#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dkq/components.hpp"
#include "dkq/graph.hpp"

namespace dkq {

enum class GirthMode { Exact, LowerBoundOnly };

struct GirthResult {
  GirthMode mode = GirthMode::Exact;
  /// Shortest cycle length; empty means acyclic (Exact) or not found within
  /// the probe (LowerBoundOnly, then no cycle of length <= 2 * probed_depth).
  std::optional<std::uint32_t> girth;
  /// Simple cycle of length *girth when requested and found.
  std::vector<VertexId> certificate;
  std::uint32_t probed_depth = 0;

  /// Smallest cycle length still possible.
  std::uint32_t lower_bound() const {
    if (girth) return *girth;
    return mode == GirthMode::LowerBoundOnly ? 2 * probed_depth + 1 : ~std::uint32_t{0};
  }
  friend bool operator==(const GirthResult& a, const GirthResult& b) {
    return a.mode == b.mode && a.girth == b.girth && a.probed_depth == b.probed_depth;
  }
};

struct GirthOptions {
  /// Explore BFS trees only to this depth; cycles up to 2 * max_depth are found.
  std::optional<std::uint32_t> max_depth;
  bool certificate = false;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Exact girth by truncated BFS from every source with best-bound pruning.
/// On graphs whose edges all cross the point/line split only points are used
/// as sources.
GirthResult girth(const BipartiteGraph& g, const GirthOptions& options = {});

/// Girth of every component in one pass; result[i] belongs to component i.
std::vector<GirthResult> component_girths(const BipartiteGraph& g, const ComponentLabeling& labeling,
                                          const GirthOptions& options = {});

struct BipartiteCheck {
  bool bipartite = false;
  /// Every point colored 0 and every line colored 1.
  bool sides_consistent = false;
  std::vector<std::uint8_t> color;
  /// Odd cycle found when coloring fails.
  std::vector<VertexId> odd_cycle;
};

BipartiteCheck check_bipartite(const BipartiteGraph& g);

/// True iff the walk has at least three vertices, all distinct, and
/// consecutive vertices (cyclically) are adjacent.
bool validate_cycle(const BipartiteGraph& g, std::span<const VertexId> walk);

}  // namespace dkq
