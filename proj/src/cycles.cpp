#include "miso/cycles.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <unordered_set>

#include "indexed.hpp"

namespace miso {

using detail::Indexed;
using detail::index_graph;

bool is_cycle_subset(const Graph& g, const std::vector<EdgeId>& s) {
  std::set<int> idx;
  for (const EdgeId& id : s) idx.insert(g.edge_index(id));
  if (idx.size() < 2) return false;

  std::map<VertexId, int> deg;
  for (int ei : idx) {
    const Edge& e = g.edge_at(ei);
    ++deg[e.u];
    ++deg[e.v];
  }
  for (const auto& [v, d] : deg)
    if (d != 2) return false;

  // connectivity over the edge subset
  std::set<VertexId> visited;
  std::vector<VertexId> stack{deg.begin()->first};
  visited.insert(stack.front());
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (int ei : idx) {
      const Edge& e = g.edge_at(ei);
      if (!e.touches(u)) continue;
      const VertexId& w = e.other(u);
      if (visited.insert(w).second) stack.push_back(w);
    }
  }
  return visited.size() == deg.size();
}

CycleSet enumerate_cycles(const Graph& g, const CycleOptions& opts) {
  Indexed ix = index_graph(g);
  int n = static_cast<int>(ix.verts.size());
  std::set<std::vector<int>> found;

  std::vector<char> on_path(n, 0), edge_used(ix.edges.size(), 0);
  std::vector<int> path_edges;

  // Cycles are rooted at their lowest-ranked vertex; each is then discovered
  // once per direction and deduplicated by edge set.
  std::function<void(int, int)> extend = [&](int root, int u) {
    for (auto [ei, w] : ix.inc[u]) {
      if (edge_used[ei]) continue;
      if (w == root) {
        if (!path_edges.empty()) {
          std::vector<int> cycle = path_edges;
          cycle.push_back(ei);
          std::sort(cycle.begin(), cycle.end());
          found.insert(std::move(cycle));
          if (found.size() > opts.cap)
            throw CapExceeded("enumerate_cycles: more than " +
                              std::to_string(opts.cap) + " cycles");
        }
      } else if (w > root && !on_path[w]) {
        on_path[w] = 1;
        edge_used[ei] = 1;
        path_edges.push_back(ei);
        extend(root, w);
        path_edges.pop_back();
        edge_used[ei] = 0;
        on_path[w] = 0;
      }
    }
  };

  for (int s = 0; s < n; ++s) {
    on_path[s] = 1;
    extend(s, s);
    on_path[s] = 0;
  }

  CycleSet out;
  for (const auto& cyc : found) {
    std::vector<EdgeId> ids;
    ids.reserve(cyc.size());
    for (int ei : cyc) ids.push_back(g.edge_at(ei).id);
    std::sort(ids.begin(), ids.end());
    out.cycles.push_back(std::move(ids));
  }
  std::sort(out.cycles.begin(), out.cycles.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

std::optional<int> girth(const Graph& g) {
  Indexed ix = index_graph(g);
  int n = static_cast<int>(ix.verts.size());
  std::optional<int> best;
  // shortest cycle through edge e = dist(u, v) in g - e, plus one
  for (std::size_t drop = 0; drop < ix.edges.size(); ++drop) {
    auto [src, dst] = ix.edges[drop];
    std::vector<int> dist(n, -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      if (u == dst) break;
      for (auto [ei, w] : ix.inc[u]) {
        if (ei == static_cast<int>(drop) || dist[w] >= 0) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
    if (dist[dst] >= 0) {
      int len = dist[dst] + 1;
      if (!best || len < *best) best = len;
    }
  }
  return best;
}

std::map<EdgeId, std::vector<int>> edge_cycle_signatures(const Graph& g,
                                                         const CycleSet& cs) {
  std::map<EdgeId, std::vector<int>> sig;
  for (const Edge& e : g.edges()) sig[e.id];
  for (const auto& cyc : cs.cycles)
    for (const EdgeId& id : cyc)
      sig[id].push_back(static_cast<int>(cyc.size()));
  for (auto& [id, lengths] : sig) std::sort(lengths.begin(), lengths.end());
  return sig;
}

namespace {

std::uint64_t cycle_mask(const Graph& g, const std::vector<EdgeId>& cyc) {
  std::uint64_t m = 0;
  for (const EdgeId& id : cyc) m |= std::uint64_t{1} << g.edge_index(id);
  return m;
}

}  // namespace

std::optional<EdgeBijection> cycle_isomorphic(const Graph& g, const Graph& h,
                                              const CycleOptions& opts) {
  std::size_t e = g.edge_count();
  if (e != h.edge_count()) return std::nullopt;
  if (e == 0) return EdgeBijection{};
  if (e > 63)
    throw CapExceeded("cycle_isomorphic supports at most 63 edges");

  CycleSet cg = enumerate_cycles(g, opts);
  CycleSet ch = enumerate_cycles(h, opts);
  if (cg.cycles.size() != ch.cycles.size()) return std::nullopt;

  auto length_hist = [](const CycleSet& cs) {
    std::map<std::size_t, int> hist;
    for (const auto& c : cs.cycles) ++hist[c.size()];
    return hist;
  };
  if (length_hist(cg) != length_hist(ch)) return std::nullopt;

  auto sig_g = edge_cycle_signatures(g, cg);
  auto sig_h = edge_cycle_signatures(h, ch);
  {
    std::map<std::vector<int>, int> ha, hb;
    for (const auto& [id, s] : sig_g) ++ha[s];
    for (const auto& [id, s] : sig_h) ++hb[s];
    if (ha != hb) return std::nullopt;
  }

  // Assign g's edges in decreasing (cycle count, min length) order; prune by
  // signature equality and by completed-cycle image lookups.
  std::vector<EdgeId> order;
  for (const Edge& ge : g.edges()) order.push_back(ge.id);
  auto key = [&](const EdgeId& id) {
    const auto& s = sig_g.at(id);
    int count = static_cast<int>(s.size());
    int minlen = s.empty() ? 0 : s.front();
    return std::tuple<int, int>(count, minlen);
  };
  std::sort(order.begin(), order.end(), [&](const EdgeId& a, const EdgeId& b) {
    auto ka = key(a), kb = key(b);
    if (ka != kb) return ka > kb;
    return a < b;
  });

  std::vector<std::vector<int>> cycles_through(e);  // g edge idx -> cycle idxs
  for (std::size_t c = 0; c < cg.cycles.size(); ++c)
    for (const EdgeId& id : cg.cycles[c])
      cycles_through[g.edge_index(id)].push_back(static_cast<int>(c));

  std::unordered_set<std::uint64_t> h_masks;
  for (const auto& cyc : ch.cycles) h_masks.insert(cycle_mask(h, cyc));

  std::vector<int> remaining(cg.cycles.size());
  std::vector<std::uint64_t> image(cg.cycles.size(), 0);
  for (std::size_t c = 0; c < cg.cycles.size(); ++c)
    remaining[c] = static_cast<int>(cg.cycles[c].size());

  std::vector<EdgeId> h_ids;
  for (const Edge& he : h.edges()) h_ids.push_back(he.id);
  std::sort(h_ids.begin(), h_ids.end());

  std::map<EdgeId, EdgeId> assign;
  std::set<EdgeId> used;

  std::function<bool(std::size_t)> extend = [&](std::size_t pos) -> bool {
    if (pos == order.size()) return true;
    const EdgeId& x = order[pos];
    int xi = g.edge_index(x);
    for (const EdgeId& y : h_ids) {
      if (used.count(y) || sig_h.at(y) != sig_g.at(x)) continue;
      std::uint64_t ybit = std::uint64_t{1} << h.edge_index(y);
      bool ok = true;
      std::size_t touched = 0;
      for (int c : cycles_through[xi]) {
        image[c] |= ybit;
        --remaining[c];
        ++touched;
        if (remaining[c] == 0 && !h_masks.count(image[c])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        assign[x] = y;
        used.insert(y);
        if (extend(pos + 1)) return true;
        assign.erase(x);
        used.erase(y);
      }
      for (std::size_t k = 0; k < touched; ++k) {
        int c = cycles_through[xi][k];
        image[c] &= ~ybit;
        ++remaining[c];
      }
    }
    return false;
  };

  if (!extend(0)) return std::nullopt;
  return EdgeBijection{assign};
}

bool verify_cycle_isomorphism(const Graph& g, const Graph& h,
                              const EdgeBijection& sigma,
                              const CycleOptions& opts) {
  if (g.edge_count() != h.edge_count()) return false;
  std::set<EdgeId> image;
  for (const auto& [a, b] : sigma.pairs) {
    if (!g.has_edge(a) || !h.has_edge(b)) return false;
    image.insert(b);
  }
  if (sigma.pairs.size() != g.edge_count() || image.size() != h.edge_count())
    return false;

  std::map<EdgeId, EdgeId> inverse;
  for (const auto& [a, b] : sigma.pairs) inverse[b] = a;

  auto maps_cycles = [&](const Graph& from, const Graph& to,
                         const std::map<EdgeId, EdgeId>& fwd) {
    for (const auto& cyc : enumerate_cycles(from, opts).cycles) {
      std::vector<EdgeId> img;
      for (const EdgeId& id : cyc) img.push_back(fwd.at(id));
      if (!is_cycle_subset(to, img)) return false;
    }
    return true;
  };
  return maps_cycles(g, h, sigma.pairs) && maps_cycles(h, g, inverse);
}

}  // namespace miso
