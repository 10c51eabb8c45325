#include "dkq/components.hpp"

#include <algorithm>

#include "dkq/error.hpp"

namespace dkq {

Elem invariant_a(const Vertex& u, int r, const Field& f) {
  if (r < 2 || r > t_of(u.k())) {
    throw ParameterError("invariant index r = " + std::to_string(r) + " outside 2.." + std::to_string(t_of(u.k())));
  }
  Elem sum = f.zero();
  for (int i = 0; i <= r; ++i) {
    const Elem diag = f.mul(read_coord(u, CoordLabel::diag(i), f), read_coord(u, CoordLabel::diag_prime(r - i), f));
    const Elem off = f.mul(read_coord(u, CoordLabel::super(i), f), read_coord(u, CoordLabel::sub(r - i - 1), f));
    sum = f.add(sum, f.sub(diag, off));
  }
  return sum;
}

InvariantVector invariant_vector(const Vertex& u, const Field& field) {
  InvariantVector out;
  const int t = t_of(u.k());
  for (int r = 2; r <= t; ++r) out.push_back(invariant_a(u, r, field));
  return out;
}

Vertex witness_point(std::span<const Elem> c, int k, const Field& field) {
  const int t = t_of(k);
  if (t < 2) throw ParameterError("witness points need t >= 2 (k >= 6)");
  if (c.size() != static_cast<std::size_t>(t - 1)) {
    throw ParameterError("witness vector must have length t - 1 = " + std::to_string(t - 1));
  }
  Vertex p{Side::Point, std::vector<Elem>(static_cast<std::size_t>(k), 0)};
  for (int i = 2; i <= t; ++i) {
    const int pos = *position_of(CoordLabel::diag_prime(i), k);
    p.coords[static_cast<std::size_t>(pos - 1)] = field.neg(c[static_cast<std::size_t>(i - 2)]);
  }
  return p;
}

ComponentLabeling components(const BipartiteGraph& g) {
  constexpr auto kUnset = ~std::uint32_t{0};
  const VertexId n = g.vertex_count();
  ComponentLabeling out;
  out.component_of.assign(n, kUnset);
  out.has_invariants = g.has_coordinates();
  const Field* field = out.has_invariants ? &*g.info().field : nullptr;

  std::vector<VertexId> queue;
  queue.reserve(n);
  for (VertexId root = 0; root < n; ++root) {
    if (out.component_of[root] != kUnset) continue;
    const auto id = out.count();
    ComponentInfo info;
    info.min_vertex = root;
    if (field) info.invariant = invariant_vector(g.vertex(root), *field);

    queue.clear();
    queue.push_back(root);
    out.component_of[root] = id;
    std::uint64_t degree_sum = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId x = queue[head];
      degree_sum += g.degree(x);
      for (VertexId w : g.neighbors(x)) {
        if (out.component_of[w] == kUnset) {
          out.component_of[w] = id;
          queue.push_back(w);
        }
      }
      if (field && x != root && invariant_vector(g.vertex(x), *field) != info.invariant) {
        throw InternalError("invariant vector differs inside component " + std::to_string(id) + " at vertex " +
                            std::to_string(x));
      }
    }
    info.order = queue.size();
    info.size = degree_sum / 2;
    out.components.push_back(std::move(info));
  }
  return out;
}

ExtractedComponent extract_component(const BipartiteGraph& g, const ComponentLabeling& labeling,
                                     std::uint32_t component_id) {
  if (component_id >= labeling.count()) {
    throw ParameterError("unknown component id " + std::to_string(component_id) + " (graph has " +
                         std::to_string(labeling.count()) + ")");
  }
  constexpr auto kAbsent = ~VertexId{0};
  std::vector<VertexId> old_to_new(g.vertex_count(), kAbsent);
  ExtractedComponent out;
  VertexId points = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (labeling.component_of[v] == component_id && g.is_point(v)) {
      old_to_new[v] = static_cast<VertexId>(out.new_to_old.size());
      out.new_to_old.push_back(v);
      ++points;
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (labeling.component_of[v] == component_id && !g.is_point(v)) {
      old_to_new[v] = static_cast<VertexId>(out.new_to_old.size());
      out.new_to_old.push_back(v);
    }
  }

  std::vector<std::uint64_t> offsets{0};
  std::vector<VertexId> adj;
  for (VertexId old : out.new_to_old) {
    for (VertexId w : g.neighbors(old)) adj.push_back(old_to_new[w]);
    // relabeling is monotone within each side, and points precede lines on
    // both numberings, so each list stays sorted
    offsets.push_back(adj.size());
  }

  GraphInfo info = g.info();
  if (info.kind == "D") info.kind = "CD";
  info.component = component_id;
  info.origin.clear();
  if (g.has_coordinates()) {
    for (VertexId old : out.new_to_old) info.origin.push_back(g.info().origin.empty() ? old : g.info().origin[old]);
  }
  out.graph = BipartiteGraph(std::move(info), points, std::move(offsets), std::move(adj));
  return out;
}

ConservationResult check_conservation(const BipartiteGraph& g, std::mt19937_64& rng, std::uint64_t exhaustive_limit,
                                      std::uint64_t samples) {
  if (!g.has_coordinates()) throw ParameterError("invariant conservation needs a graph with D(k,q) coordinates");
  const Field& field = *g.info().field;
  ConservationResult out;
  out.exhaustive = g.vertex_count() <= exhaustive_limit;
  if (out.exhaustive) {
    std::vector<InvariantVector> cache(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) cache[v] = invariant_vector(g.vertex(v), field);
    for (VertexId a = 0; a < g.vertex_count(); ++a) {
      for (VertexId b : g.neighbors(a)) {
        if (a >= b) continue;
        ++out.edges_checked;
        if (cache[a] != cache[b]) ++out.violations;
      }
    }
    return out;
  }
  // sample a point uniformly, then one of its neighbors; D(k,q) is regular so
  // this is uniform over edges
  std::uniform_int_distribution<VertexId> pick_point(0, g.point_count() - 1);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const VertexId a = pick_point(rng);
    const auto nb = g.neighbors(a);
    if (nb.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick_edge(0, nb.size() - 1);
    const VertexId b = nb[pick_edge(rng)];
    ++out.edges_checked;
    if (invariant_vector(g.vertex(a), field) != invariant_vector(g.vertex(b), field)) ++out.violations;
  }
  return out;
}

}  // namespace dkq
