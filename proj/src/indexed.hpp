#pragma once

#include <map>
#include <utility>
#include <vector>

#include "miso/graph.hpp"

namespace miso::detail {

// Index-based view used by the traversal algorithms. Vertices are numbered
// in lexicographic id order, edges keep their insertion order.
struct Indexed {
  std::vector<VertexId> verts;
  std::map<VertexId, int> vidx;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::pair<int, int>>> inc;  // (edge idx, other vertex)
};

inline Indexed index_graph(const Graph& g) {
  Indexed ix;
  ix.verts = g.vertices();
  for (int i = 0; i < static_cast<int>(ix.verts.size()); ++i)
    ix.vidx.emplace(ix.verts[i], i);
  ix.inc.resize(ix.verts.size());
  for (const Edge& e : g.edges()) {
    int u = ix.vidx.at(e.u), v = ix.vidx.at(e.v);
    int ei = static_cast<int>(ix.edges.size());
    ix.edges.emplace_back(u, v);
    ix.inc[u].emplace_back(ei, v);
    ix.inc[v].emplace_back(ei, u);
  }
  return ix;
}

}  // namespace miso::detail
