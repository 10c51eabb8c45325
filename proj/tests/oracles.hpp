#pragma once

// Independent reference implementations used only by tests. None of these
// call the coordinate-position formulas, the unified incidence relations, or
// the BFS routines they are compared against.

#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "dkq/field.hpp"
#include "dkq/graph.hpp"

namespace oracle {

using dkq::Elem;
using dkq::Field;

// ---------------------------------------------------------------- polynomials

inline std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
  std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return out;
}

inline std::vector<std::vector<std::uint32_t>> monic_polys(std::uint32_t p, std::uint32_t degree) {
  std::vector<std::vector<std::uint32_t>> out;
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < degree; ++i) count *= p;
  for (std::uint64_t enc = 0; enc < count; ++enc) {
    std::vector<std::uint32_t> f(degree + 1, 0);
    f[degree] = 1;
    std::uint64_t r = enc;
    for (std::uint32_t i = 0; i < degree; ++i) {
      f[i] = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    out.push_back(f);
  }
  return out;
}

/// Every reducible monic polynomial of degree m, by multiplying all pairs of
/// monic polynomials of degrees d and m - d.
inline std::set<std::vector<std::uint32_t>> reducible_monic(std::uint32_t p, std::uint32_t m) {
  std::set<std::vector<std::uint32_t>> out;
  for (std::uint32_t d = 1; d <= m / 2; ++d) {
    const auto left = monic_polys(p, d);
    const auto right = monic_polys(p, m - d);
    for (const auto& a : left) {
      for (const auto& b : right) out.insert(poly_mul(a, b, p));
    }
  }
  return out;
}

/// Monic irreducible of degree m with the smallest encoding sum c_i p^i.
inline std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t m) {
  const auto reducible = reducible_monic(p, m);
  for (const auto& f : monic_polys(p, m)) {
    if (!reducible.count(f)) return f;
  }
  return {};
}

// ------------------------------------------------------ named coordinates

/// u_{i,j} (prime = false) or u'_{i,i} (prime = true); First is (1, -100).
struct Name {
  int i;
  int j;
  bool prime;
  auto operator<=>(const Name&) const = default;
};

inline constexpr Name kFirst{1, -100, false};

/// Coordinate names in listed order: p_1, p_11, p_12, p_21, then for
/// i = 2, 3, ...: p_ii, p'_ii, p_{i,i+1}, p_{i+1,i}. Generated iteratively.
inline std::vector<Name> listed_names(int k) {
  std::vector<Name> out{kFirst, {1, 1, false}, {1, 2, false}, {2, 1, false}};
  for (int i = 2; static_cast<int>(out.size()) < k; ++i) {
    out.push_back({i, i, false});
    out.push_back({i, i, true});
    out.push_back({i, i + 1, false});
    out.push_back({i + 1, i, false});
  }
  out.resize(static_cast<std::size_t>(k));
  return out;
}

struct Named {
  bool is_line = false;
  std::map<Name, Elem> values;
};

inline Named to_named(const dkq::Vertex& v) {
  Named out;
  out.is_line = v.side == dkq::Side::Line;
  const auto names = listed_names(v.k());
  for (std::size_t n = 0; n < names.size(); ++n) out.values[names[n]] = v.coords[n];
  return out;
}

/// Lookup with the boundary conventions written out case by case.
inline Elem get(const Named& u, Name name, const Field& f) {
  if (auto it = u.values.find(name); it != u.values.end()) return it->second;
  if (name.i == 0 && name.j == 0) return name.prime ? f.one() : f.neg(f.one());
  if (name.i == 0 && name.j == 1 && !name.prime) return u.is_line ? 0 : u.values.at(kFirst);
  if (name.i == 1 && name.j == 0 && !name.prime) return u.is_line ? u.values.at(kFirst) : 0;
  if (name.i == 1 && name.j == 1 && name.prime) return u.values.at({1, 1, false});
  return 0;
}

/// The first k-1 incidence relations, written as "l - p = product" with the
/// three leading relations spelled out and the four-per-block pattern after.
inline bool incident(const dkq::Vertex& point, const dkq::Vertex& line, const Field& f) {
  const Named p = to_named(point), l = to_named(line);
  const Elem p1 = p.values.at(kFirst), l1 = l.values.at(kFirst);
  struct Rel {
    Name target;
    Elem rhs;
  };
  auto P = [&](int i, int j, bool pr = false) { return get(p, {i, j, pr}, f); };
  auto L = [&](int i, int j, bool pr = false) { return get(l, {i, j, pr}, f); };
  std::vector<Rel> rels{
      {{1, 1, false}, f.mul(l1, p1)},
      {{1, 2, false}, f.mul(L(1, 1), p1)},
      {{2, 1, false}, f.mul(l1, P(1, 1))},
  };
  const int k = point.k();
  for (int i = 2; static_cast<int>(rels.size()) < k - 1; ++i) {
    rels.push_back({{i, i, false}, f.mul(l1, P(i - 1, i))});
    rels.push_back({{i, i, true}, f.mul(L(i, i - 1), p1)});
    rels.push_back({{i, i + 1, false}, f.mul(L(i, i), p1)});
    rels.push_back({{i + 1, i, false}, f.mul(l1, P(i, i, true))});
  }
  rels.resize(static_cast<std::size_t>(std::max(k - 1, 0)), Rel{{0, 0, false}, 0});
  for (const auto& r : rels) {
    if (f.sub(get(l, r.target, f), get(p, r.target, f)) != r.rhs) return false;
  }
  return true;
}

/// a_r by the literal sum over i = 0..r.
inline Elem invariant_a(const dkq::Vertex& v, int r, const Field& f) {
  const Named u = to_named(v);
  Elem sum = 0;
  for (int i = 0; i <= r; ++i) {
    const Elem a = f.mul(get(u, {i, i, false}, f), get(u, {r - i, r - i, true}, f));
    const Elem b = f.mul(get(u, {i, i + 1, false}, f), get(u, {r - i, r - i - 1, false}, f));
    sum = f.add(sum, f.sub(a, b));
  }
  return sum;
}

// ------------------------------------------------------------------ graphs

/// Edge set of D(k,q) by testing every point-line pair.
inline std::set<dkq::Edge> brute_force_edges(int k, const Field& f) {
  const std::uint32_t q = f.q();
  std::uint64_t n = 1;
  for (int i = 0; i < k; ++i) n *= q;
  std::vector<dkq::Vertex> points, lines;
  for (std::uint64_t id = 0; id < n; ++id) {
    dkq::Vertex v{dkq::Side::Point, std::vector<Elem>(static_cast<std::size_t>(k))};
    std::uint64_t r = id;
    for (auto& c : v.coords) {
      c = static_cast<Elem>(r % q);
      r /= q;
    }
    points.push_back(v);
    v.side = dkq::Side::Line;
    lines.push_back(v);
  }
  std::set<dkq::Edge> out;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      if (oracle::incident(points[a], lines[b], f)) out.emplace(static_cast<dkq::VertexId>(a), static_cast<dkq::VertexId>(n + b));
    }
  }
  return out;
}

/// Union-find component count and per-vertex root.
struct UnionFind {
  std::vector<dkq::VertexId> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  dkq::VertexId find(dkq::VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(dkq::VertexId a, dkq::VertexId b) { parent[find(a)] = find(b); }
};

inline std::uint32_t count_components(const dkq::BipartiteGraph& g) {
  UnionFind uf(g.vertex_count());
  for (const auto& [a, b] : g.edges()) uf.unite(a, b);
  std::set<dkq::VertexId> roots;
  for (dkq::VertexId v = 0; v < g.vertex_count(); ++v) roots.insert(uf.find(v));
  return static_cast<std::uint32_t>(roots.size());
}

/// Shortest cycle via each edge: BFS between its endpoints with the edge
/// removed, plus the edge itself. 0 means acyclic.
inline std::uint32_t girth_by_edge_removal(const dkq::BipartiteGraph& g) {
  std::uint32_t best = 0;
  std::vector<std::int64_t> dist(g.vertex_count());
  for (const auto& [a, b] : g.edges()) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<dkq::VertexId> queue;
    dist[a] = 0;
    queue.push(a);
    while (!queue.empty() && dist[b] < 0) {
      const auto x = queue.front();
      queue.pop();
      for (auto w : g.neighbors(x)) {
        if ((x == a && w == b) || (x == b && w == a)) continue;
        if (dist[w] < 0) {
          dist[w] = dist[x] + 1;
          queue.push(w);
        }
      }
    }
    if (dist[b] > 0) {
      const auto len = static_cast<std::uint32_t>(dist[b] + 1);
      if (best == 0 || len < best) best = len;
    }
  }
  return best;
}

}  // namespace oracle
