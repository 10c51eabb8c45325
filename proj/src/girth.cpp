#include "dkq/girth.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>
#include <unordered_set>

#include "dkq/error.hpp"

namespace dkq {
namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

struct Hit {
  std::uint32_t length = kInf;
  VertexId x = 0;
  VertexId w = 0;
};

// Reusable BFS state; only touched entries are reset between sources.
class BfsWorkspace {
 public:
  explicit BfsWorkspace(VertexId n) : dist_(n, kInf), parent_(n, 0) { queue_.reserve(1024); }

  // BFS from `source`, expanding vertices at depth < depth_limit while
  // 2*depth + 1 < bound. Returns the shortest closed walk found, which is
  // shorter than the initial bound when one exists.
  template <typename BoundFn>
  Hit run(const BipartiteGraph& g, VertexId source, std::uint32_t depth_limit, BoundFn&& current_bound,
          bool stop_at_first) {
    reset();
    Hit best;
    std::uint32_t bound = current_bound();
    dist_[source] = 0;
    parent_[source] = source;
    queue_.push_back(source);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const VertexId x = queue_[head];
      const std::uint32_t d = dist_[x];
      if (d >= depth_limit) break;
      bound = std::min(bound, current_bound());
      if (2 * static_cast<std::uint64_t>(d) + 1 >= bound) break;
      for (VertexId w : g.neighbors(x)) {
        if (w == parent_[x] && x != source) continue;
        if (dist_[w] == kInf) {
          dist_[w] = d + 1;
          parent_[w] = x;
          max_depth_ = std::max(max_depth_, d + 1);
          queue_.push_back(w);
        } else {
          const std::uint32_t len = d + dist_[w] + 1;
          if (len < bound) {
            bound = len;
            best = {len, x, w};
            if (stop_at_first) return best;
          }
        }
      }
    }
    return best;
  }

  // Closed walk source..x, w..(child of source) from the last run.
  std::vector<VertexId> cycle(const Hit& hit) const {
    std::vector<VertexId> from_x, from_w;
    for (VertexId v = hit.x;; v = parent_[v]) {
      from_x.push_back(v);
      if (dist_[v] == 0) break;
    }
    for (VertexId v = hit.w; dist_[v] != 0; v = parent_[v]) from_w.push_back(v);
    std::vector<VertexId> walk(from_x.rbegin(), from_x.rend());
    walk.insert(walk.end(), from_w.begin(), from_w.end());
    return walk;
  }

  std::uint32_t max_depth() const { return max_depth_; }

 private:
  void reset() {
    for (VertexId v : queue_) dist_[v] = kInf;
    queue_.clear();
  }

  std::vector<std::uint32_t> dist_;
  std::vector<VertexId> parent_;
  std::vector<VertexId> queue_;
  std::uint32_t max_depth_ = 0;
};

bool edges_cross_sides(const BipartiteGraph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId w : g.neighbors(v)) {
      if (g.is_point(v) == g.is_point(w)) return false;
    }
  }
  return true;
}

void atomic_min(std::atomic<std::uint32_t>& target, std::uint32_t value) {
  std::uint32_t cur = target.load(std::memory_order_relaxed);
  while (value < cur && !target.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
  }
}

// Per-group minimum closed-walk length over all sources; group_of maps a
// vertex to its group index.
std::vector<GirthResult> grouped_girth(const BipartiteGraph& g, std::span<const std::uint32_t> group_of,
                                       std::size_t groups, const GirthOptions& options) {
  const VertexId n = g.vertex_count();
  const VertexId source_end = (g.point_count() > 0 && edges_cross_sides(g)) ? g.point_count() : n;
  const std::uint32_t depth_limit = options.max_depth.value_or(kInf);

  std::vector<std::atomic<std::uint32_t>> best(groups);
  for (auto& b : best) b.store(kInf);
  std::atomic<std::uint32_t> probed{0};
  std::atomic<VertexId> next{0};

  auto worker = [&] {
    BfsWorkspace ws(n);
    constexpr VertexId kChunk = 64;
    for (;;) {
      const VertexId begin = next.fetch_add(kChunk);
      if (begin >= source_end) break;
      const VertexId end = std::min<VertexId>(source_end, begin + kChunk);
      for (VertexId s = begin; s < end; ++s) {
        auto& slot = best[group_of[s]];
        const Hit hit = ws.run(g, s, depth_limit, [&] { return slot.load(std::memory_order_relaxed); }, false);
        if (hit.length != kInf) atomic_min(slot, hit.length);
      }
    }
    std::uint32_t seen = ws.max_depth();
    std::uint32_t cur = probed.load();
    while (seen > cur && !probed.compare_exchange_weak(cur, seen)) {
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<VertexId>(1, source_end / 64)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<GirthResult> out(groups);
  for (std::size_t i = 0; i < groups; ++i) {
    const std::uint32_t value = best[i].load();
    auto& r = out[i];
    if (options.max_depth) {
      r.probed_depth = *options.max_depth;
      r.mode = value == kInf ? GirthMode::LowerBoundOnly : GirthMode::Exact;
    } else {
      r.probed_depth = probed.load();
      r.mode = GirthMode::Exact;
    }
    if (value != kInf) r.girth = value;
  }

  if (options.certificate) {
    BfsWorkspace ws(n);
    std::vector<bool> done(groups, false);
    for (VertexId s = 0; s < source_end; ++s) {
      const auto grp = group_of[s];
      if (done[grp] || !out[grp].girth) continue;
      const std::uint32_t target = *out[grp].girth;
      const Hit hit = ws.run(g, s, depth_limit, [&] { return target + 1; }, true);
      if (hit.length != target) continue;
      out[grp].certificate = ws.cycle(hit);
      if (!validate_cycle(g, out[grp].certificate)) throw InternalError("girth certificate is not a simple cycle");
      done[grp] = true;
    }
  }
  return out;
}

}  // namespace

GirthResult girth(const BipartiteGraph& g, const GirthOptions& options) {
  const std::vector<std::uint32_t> group_of(g.vertex_count(), 0);
  return grouped_girth(g, group_of, 1, options).front();
}

std::vector<GirthResult> component_girths(const BipartiteGraph& g, const ComponentLabeling& labeling,
                                          const GirthOptions& options) {
  return grouped_girth(g, labeling.component_of, labeling.count(), options);
}

BipartiteCheck check_bipartite(const BipartiteGraph& g) {
  constexpr std::uint8_t kUncolored = 2;
  const VertexId n = g.vertex_count();
  BipartiteCheck out;
  out.color.assign(n, kUncolored);
  std::vector<VertexId> parent(n, 0), queue;
  queue.reserve(n);

  auto path_to_root = [&](VertexId v) {
    std::vector<VertexId> path{v};
    while (parent[v] != v) {
      v = parent[v];
      path.push_back(v);
    }
    return path;
  };

  for (VertexId root = 0; root < n; ++root) {
    if (out.color[root] != kUncolored) continue;
    out.color[root] = g.is_point(root) ? 0 : 1;
    parent[root] = root;
    queue.clear();
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId x = queue[head];
      for (VertexId w : g.neighbors(x)) {
        if (out.color[w] == kUncolored) {
          out.color[w] = out.color[x] ^ 1;
          parent[w] = x;
          queue.push_back(w);
        } else if (out.color[w] == out.color[x]) {
          auto px = path_to_root(x), pw = path_to_root(w);
          // drop the shared tail above the lowest common ancestor
          while (px.size() > 1 && pw.size() > 1 && px[px.size() - 2] == pw[pw.size() - 2]) {
            px.pop_back();
            pw.pop_back();
          }
          out.odd_cycle.assign(px.begin(), px.end());
          out.odd_cycle.insert(out.odd_cycle.end(), pw.rbegin() + 1, pw.rend());
          out.bipartite = false;
          out.sides_consistent = false;
          return out;
        }
      }
    }
  }
  out.bipartite = true;
  out.sides_consistent = true;
  for (VertexId v = 0; v < n; ++v) {
    if (out.color[v] != (g.is_point(v) ? 0 : 1)) {
      out.sides_consistent = false;
      break;
    }
  }
  return out;
}

bool validate_cycle(const BipartiteGraph& g, std::span<const VertexId> walk) {
  if (walk.size() < 3) return false;
  std::unordered_set<VertexId> seen;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const VertexId a = walk[i];
    if (a >= g.vertex_count() || !seen.insert(a).second) return false;
    const VertexId b = walk[(i + 1) % walk.size()];
    if (b >= g.vertex_count() || !g.has_edge(a, b)) return false;
  }
  return true;
}

}  // namespace dkq
