#include "dkq/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "dkq/error.hpp"

namespace dkq {
namespace {

// Right-hand side of the incidence relation that determines the coordinate
// at `label`: l - p = rhs. Only coordinates at earlier positions are read.
Elem relation_rhs(CoordLabel label, const Vertex& point, const Vertex& line, const Field& f) {
  using K = CoordLabel::Kind;
  const Elem p1 = point.coords[0];
  const Elem l1 = line.coords[0];
  const int i = label.index;
  switch (label.kind) {
    case K::Diag: return f.mul(l1, read_coord(point, CoordLabel::super(i - 1), f));
    case K::DiagPrime: return f.mul(read_coord(line, CoordLabel::sub(i - 1), f), p1);
    case K::Super: return f.mul(read_coord(line, CoordLabel::diag(i), f), p1);
    case K::Sub: return f.mul(l1, read_coord(point, CoordLabel::diag_prime(i), f));
    case K::First: break;
  }
  throw InternalError("no incidence relation for the first coordinate");
}

}  // namespace

BipartiteGraph::BipartiteGraph(GraphInfo info, VertexId point_count, std::vector<std::uint64_t> offsets,
                               std::vector<VertexId> adjacency)
    : info_(std::move(info)),
      point_count_(point_count),
      offsets_(std::move(offsets)),
      adjacency_(std::move(adjacency)) {}

BipartiteGraph BipartiteGraph::from_edges(VertexId vertex_count, VertexId point_count, std::span<const Edge> edges,
                                          GraphInfo info) {
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(vertex_count) + 1, 0);
  for (const auto& [a, b] : edges) {
    if (a >= vertex_count || b >= vertex_count) {
      throw FormatError("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") references a vertex id >= " +
                        std::to_string(vertex_count));
    }
    if (a == b) throw FormatError("self loop at vertex " + std::to_string(a));
    ++offsets[a + 1];
    ++offsets[b + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) offsets[v + 1] += offsets[v];
  std::vector<VertexId> adj(offsets.back());
  std::vector<std::uint64_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& [a, b] : edges) {
    adj[fill[a]++] = b;
    adj[fill[b]++] = a;
  }
  for (VertexId v = 0; v < vertex_count; ++v) {
    auto first = adj.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
    auto last = adj.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw FormatError("duplicate edge (" + std::to_string(v) + ", " + std::to_string(*dup) + ")");
    }
  }
  return BipartiteGraph(std::move(info), point_count, std::move(offsets), std::move(adj));
}

bool BipartiteGraph::has_edge(VertexId a, VertexId b) const {
  const auto n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), b);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId a = 0; a < vertex_count(); ++a) {
    for (VertexId b : neighbors(a)) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

bool BipartiteGraph::has_coordinates() const {
  if (!info_.field || info_.k < 2) return false;
  if (!info_.origin.empty()) return info_.origin.size() == vertex_count();
  return vertex_count() == 2 * side_size(info_.field->q(), info_.k) && point_count_ * std::uint64_t{2} == vertex_count();
}

Vertex BipartiteGraph::vertex(VertexId v) const {
  const VertexId id = info_.origin.empty() ? v : info_.origin[v];
  return decode(id, info_.k, info_.field->q());
}

std::uint64_t side_size(std::uint32_t q, int k) {
  std::uint64_t n = 1;
  for (int j = 0; j < k; ++j) {
    if (n > std::numeric_limits<std::uint64_t>::max() / q / 2) throw BudgetError("q^k overflows 64 bits");
    n *= q;
  }
  return n;
}

VertexId encode(const Vertex& v, std::uint32_t q) {
  std::uint64_t id = 0;
  for (std::size_t j = v.coords.size(); j-- > 0;) id = id * q + v.coords[j];
  if (v.side == Side::Line) id += side_size(q, v.k());
  return static_cast<VertexId>(id);
}

Vertex decode(std::uint64_t id, int k, std::uint32_t q) {
  const std::uint64_t n = side_size(q, k);
  if (id >= 2 * n) throw std::out_of_range("vertex id " + std::to_string(id) + " out of range for D(k,q)");
  Vertex v;
  v.side = id < n ? Side::Point : Side::Line;
  if (id >= n) id -= n;
  v.coords.resize(static_cast<std::size_t>(k));
  for (auto& c : v.coords) {
    c = static_cast<Elem>(id % q);
    id /= q;
  }
  return v;
}

Vertex line_through(const Vertex& point, Elem l1, const Field& field) {
  Vertex line{Side::Line, std::vector<Elem>(point.coords.size(), 0)};
  line.coords[0] = l1;
  for (int pos = 2; pos <= point.k(); ++pos) {
    const auto j = static_cast<std::size_t>(pos - 1);
    line.coords[j] = field.add(point.coords[j], relation_rhs(label_of(pos), point, line, field));
  }
  return line;
}

Vertex point_on(const Vertex& line, Elem p1, const Field& field) {
  Vertex point{Side::Point, std::vector<Elem>(line.coords.size(), 0)};
  point.coords[0] = p1;
  for (int pos = 2; pos <= line.k(); ++pos) {
    const auto j = static_cast<std::size_t>(pos - 1);
    point.coords[j] = field.sub(line.coords[j], relation_rhs(label_of(pos), point, line, field));
  }
  return point;
}

bool incident(const Vertex& point, const Vertex& line, const Field& field) {
  if (point.k() != line.k()) return false;
  for (int pos = 2; pos <= point.k(); ++pos) {
    const auto j = static_cast<std::size_t>(pos - 1);
    if (field.sub(line.coords[j], point.coords[j]) != relation_rhs(label_of(pos), point, line, field)) return false;
  }
  return true;
}

void check_budget(int k, std::uint32_t q, const BuildOptions& options) {
  if (k < 1) throw ParameterError("k must be >= 1");
  const int ke = effective_k(k);
  std::uint64_t n = 0;
  try {
    n = side_size(q, ke);
  } catch (const BudgetError&) {
    throw BudgetError("D(" + std::to_string(k) + "," + std::to_string(q) + ") is far beyond any vertex budget");
  }
  const std::uint64_t vertices = 2 * n;
  if (!options.force && vertices > options.vertex_budget) {
    throw BudgetError("D(" + std::to_string(k) + "," + std::to_string(q) + ") has " + std::to_string(vertices) +
                      " vertices, exceeding the budget of " + std::to_string(options.vertex_budget) +
                      " (use --force or raise --budget)");
  }
  if (vertices > std::numeric_limits<VertexId>::max()) {
    throw BudgetError("D(" + std::to_string(k) + "," + std::to_string(q) + ") has " + std::to_string(vertices) +
                      " vertices, beyond the 32-bit id range");
  }
}

BipartiteGraph build(int k, const Field& field, const BuildOptions& options) {
  check_budget(k, field.q(), options);
  k = effective_k(k);
  const std::uint32_t q = field.q();
  const auto n = static_cast<VertexId>(side_size(q, k));
  const std::uint64_t total = 2 * static_cast<std::uint64_t>(n);

  std::vector<std::uint64_t> offsets(total + 1);
  for (std::uint64_t v = 0; v <= total; ++v) offsets[v] = v * q;
  std::vector<VertexId> adj(total * q);
  std::vector<std::uint32_t> line_fill(n, 0);

  for (VertexId pid = 0; pid < n; ++pid) {
    const Vertex point = decode(pid, k, q);
    VertexId* slot = adj.data() + static_cast<std::uint64_t>(pid) * q;
    for (Elem l1 = 0; l1 < q; ++l1) {
      const VertexId lid = encode(line_through(point, l1, field), q);
      slot[l1] = lid;
      const VertexId li = lid - n;
      if (line_fill[li] == q) throw InternalError("line degree exceeds q");
      adj[static_cast<std::uint64_t>(lid) * q + line_fill[li]++] = pid;
    }
    std::sort(slot, slot + q);
  }
  for (auto fill : line_fill) {
    if (fill != q) throw InternalError("line degree differs from q");
  }

  GraphInfo info;
  info.kind = "D";
  info.k = k;
  info.field = field;
  return BipartiteGraph(std::move(info), n, std::move(offsets), std::move(adj));
}

}  // namespace dkq
