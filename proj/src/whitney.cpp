#include "miso/whitney.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "indexed.hpp"

namespace miso {

using detail::Indexed;
using detail::index_graph;

namespace {

std::set<VertexId> endpoint_set(const Graph& g, const std::vector<EdgeId>& s) {
  std::set<VertexId> out;
  for (const EdgeId& id : s) {
    const Edge& e = g.edge(id);
    out.insert(e.u);
    out.insert(e.v);
  }
  return out;
}

}  // namespace

void validate_two_separation(const Graph& g, const TwoSeparation& sep) {
  if (sep.s.size() < 2 || sep.t.size() < 2)
    throw Error("invalid two-separation: both sides need at least 2 edges");
  std::set<EdgeId> all;
  for (const EdgeId& id : sep.s) all.insert(id);
  for (const EdgeId& id : sep.t) all.insert(id);
  if (all.size() != sep.s.size() + sep.t.size() ||
      all.size() != g.edge_count())
    throw Error("invalid two-separation: sides must partition the edge set");
  for (const EdgeId& id : all) g.edge_index(id);  // throws on unknown ids

  std::set<VertexId> vs = endpoint_set(g, sep.s);
  std::set<VertexId> vt = endpoint_set(g, sep.t);
  std::set<VertexId> inter;
  std::set_intersection(vs.begin(), vs.end(), vt.begin(), vt.end(),
                        std::inserter(inter, inter.begin()));
  if (inter != std::set<VertexId>{sep.x, sep.y} || sep.x == sep.y)
    throw Error("invalid two-separation: cut pair mismatch");
}

Graph split(const Graph& g, const SplitSpec& spec) {
  if (!g.has_vertex(spec.cut_vertex))
    throw Error("split: unknown vertex '" + spec.cut_vertex + "'");
  if (spec.side.empty() || spec.side.size() >= g.edge_count())
    throw Error("split: side must be a nonempty proper edge subset");
  std::set<EdgeId> side(spec.side.begin(), spec.side.end());
  std::vector<EdgeId> rest;
  for (const Edge& e : g.edges())
    if (!side.count(e.id)) rest.push_back(e.id);

  std::set<VertexId> vside = endpoint_set(g, spec.side);
  std::set<VertexId> vrest = endpoint_set(g, rest);
  std::set<VertexId> inter;
  std::set_intersection(vside.begin(), vside.end(), vrest.begin(), vrest.end(),
                        std::inserter(inter, inter.begin()));
  if (inter != std::set<VertexId>{spec.cut_vertex})
    throw Error("split: sides must meet exactly at the cut vertex");

  VertexId fresh = spec.cut_vertex + "'";
  while (g.has_vertex(fresh)) fresh += "'";

  Graph out;
  for (const VertexId& v : g.vertices()) out.add_vertex(v);
  out.add_vertex(fresh);
  for (const Edge& e : g.edges()) {
    if (side.count(e.id)) {
      VertexId u = e.u == spec.cut_vertex ? fresh : e.u;
      VertexId v = e.v == spec.cut_vertex ? fresh : e.v;
      out.add_edge(e.id, u, v);
    } else {
      out.add_edge(e.id, e.u, e.v);
    }
  }
  return out;
}

std::vector<TwoSeparation> enumerate_two_separations(const Graph& g) {
  std::size_t e = g.edge_count();
  std::vector<TwoSeparation> out;
  if (e < 4) return out;
  if (e > 30)
    throw CapExceeded("enumerate_two_separations supports at most 30 edges");

  // vertex bitmasks over non-isolated vertices (at most 2e of them)
  std::map<VertexId, int> vrank;
  for (const Edge& ed : g.edges()) {
    vrank.emplace(ed.u, 0);
    vrank.emplace(ed.v, 0);
  }
  int r = 0;
  for (auto& [v, rank] : vrank) rank = r++;
  std::vector<std::uint64_t> emask(e);
  for (std::size_t i = 0; i < e; ++i) {
    const Edge& ed = g.edge_at(i);
    emask[i] = (std::uint64_t{1} << vrank[ed.u]) |
               (std::uint64_t{1} << vrank[ed.v]);
  }

  // s is pinned to contain the lexicographically least edge id
  std::size_t least = 0;
  for (std::size_t i = 1; i < e; ++i)
    if (g.edge_at(i).id < g.edge_at(least).id) least = i;

  std::vector<std::size_t> free_edges;
  for (std::size_t i = 0; i < e; ++i)
    if (i != least) free_edges.push_back(i);

  std::uint64_t subsets = std::uint64_t{1} << free_edges.size();
  for (std::uint64_t m = 0; m < subsets; ++m) {
    std::uint64_t vs = emask[least], vt = 0;
    std::size_t ssize = 1;
    for (std::size_t k = 0; k < free_edges.size(); ++k) {
      if (m >> k & 1) {
        vs |= emask[free_edges[k]];
        ++ssize;
      } else {
        vt |= emask[free_edges[k]];
      }
    }
    if (ssize < 2 || e - ssize < 2) continue;
    std::uint64_t inter = vs & vt;
    if (std::popcount(inter) != 2) continue;

    TwoSeparation sep;
    sep.s.push_back(g.edge_at(least).id);
    for (std::size_t k = 0; k < free_edges.size(); ++k)
      (m >> k & 1 ? sep.s : sep.t).push_back(g.edge_at(free_edges[k]).id);
    std::sort(sep.s.begin(), sep.s.end());
    std::sort(sep.t.begin(), sep.t.end());
    std::vector<VertexId> pair;
    for (const auto& [v, rank] : vrank)
      if (inter >> rank & 1) pair.push_back(v);
    sep.x = pair[0];
    sep.y = pair[1];
    out.push_back(std::move(sep));
  }
  std::sort(out.begin(), out.end(),
            [](const TwoSeparation& a, const TwoSeparation& b) {
              if (a.s.size() != b.s.size()) return a.s.size() < b.s.size();
              return a.s < b.s;
            });
  return out;
}

Graph reversal(const Graph& g, const TwoSeparation& sep) {
  validate_two_separation(g, sep);
  std::set<EdgeId> side(sep.s.begin(), sep.s.end());
  Graph out;
  for (const VertexId& v : g.vertices()) out.add_vertex(v);
  for (const Edge& e : g.edges()) {
    if (side.count(e.id)) {
      auto swapxy = [&](const VertexId& v) {
        if (v == sep.x) return sep.y;
        if (v == sep.y) return sep.x;
        return v;
      };
      out.add_edge(e.id, swapxy(e.u), swapxy(e.v));
    } else {
      out.add_edge(e.id, e.u, e.v);
    }
  }
  return out;
}

bool has_parallel_edges(const Graph& g) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : g.edges()) {
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second) return true;
  }
  return false;
}

bool one_isomorphic(const Graph& g, const Graph& h) {
  return block_certificate(g) == block_certificate(h);
}

SearchResult two_isomorphic_search(const Graph& g, const Graph& h,
                                   const SearchOptions& opts) {
  SearchResult res;
  if (g.edge_count() != h.edge_count()) {
    res.status = SearchStatus::Exhausted;
    return res;
  }

  struct Node {
    Graph graph;
    int parent = -1;
    TwoSeparation op;  // op applied to parent to reach this node
    int depth = 0;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, int> seen;
  std::deque<int> queue;

  std::vector<std::string> target = block_certificate(h);
  bool complete = true;

  nodes.push_back(Node{g, -1, {}, 0});
  seen.emplace(canonical_certificate(g), 0);
  queue.push_back(0);

  int found = -1;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    res.depth_reached = std::max(res.depth_reached, nodes[cur].depth);

    if (block_certificate(nodes[cur].graph) == target) {
      found = cur;
      break;
    }
    if (opts.max_depth >= 0 && nodes[cur].depth >= opts.max_depth) {
      complete = false;  // node left unexpanded
      continue;
    }
    for (const TwoSeparation& sep :
         enumerate_two_separations(nodes[cur].graph)) {
      Graph next = reversal(nodes[cur].graph, sep);
      if (opts.simple_only && has_parallel_edges(next)) continue;
      std::string cert = canonical_certificate(next);
      if (seen.count(cert)) continue;
      if (nodes.size() >= opts.orbit_cap) {
        complete = false;
        break;
      }
      int id = static_cast<int>(nodes.size());
      nodes.push_back(Node{std::move(next), cur, sep, nodes[cur].depth + 1});
      seen.emplace(std::move(cert), id);
      queue.push_back(id);
    }
    if (!complete && nodes.size() >= opts.orbit_cap) break;
  }

  res.orbit_size = nodes.size();
  if (found >= 0) {
    res.status = SearchStatus::Found;
    for (int at = found; at > 0; at = nodes[at].parent)
      res.witness.push_back(nodes[at].op);
    std::reverse(res.witness.begin(), res.witness.end());
  } else {
    res.status = complete ? SearchStatus::Exhausted : SearchStatus::Unknown;
  }
  return res;
}

OrbitResult reversal_orbit(const Graph& g, const SearchOptions& opts) {
  OrbitResult res;
  res.complete = true;
  std::unordered_map<std::string, int> seen;
  std::deque<std::size_t> queue;
  res.graphs.push_back(g);
  seen.emplace(canonical_certificate(g), 0);
  queue.push_back(0);
  std::vector<int> depth{0};

  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    if (opts.max_depth >= 0 && depth[cur] >= opts.max_depth) {
      res.complete = false;
      continue;
    }
    Graph node = res.graphs[cur];  // expansion may reallocate the vector
    for (const TwoSeparation& sep : enumerate_two_separations(node)) {
      Graph next = reversal(node, sep);
      if (opts.simple_only && has_parallel_edges(next)) continue;
      std::string cert = canonical_certificate(next);
      if (seen.count(cert)) continue;
      if (res.graphs.size() >= opts.orbit_cap) {
        res.complete = false;
        return res;
      }
      seen.emplace(std::move(cert), static_cast<int>(res.graphs.size()));
      queue.push_back(res.graphs.size());
      depth.push_back(depth[cur] + 1);
      res.graphs.push_back(std::move(next));
    }
  }
  return res;
}

std::optional<EdgeBijection> two_isomorphic(const Graph& g, const Graph& h,
                                            const CycleOptions& opts) {
  return cycle_isomorphic(g, h, opts);
}

}  // namespace miso
