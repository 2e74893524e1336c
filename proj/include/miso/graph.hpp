#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "miso/errors.hpp"

namespace miso {

using VertexId = std::string;
using EdgeId = std::string;

struct Edge {
  EdgeId id;
  VertexId u;
  VertexId v;

  bool touches(const VertexId& w) const { return u == w || v == w; }
  const VertexId& other(const VertexId& w) const { return u == w ? v : u; }
  bool operator==(const Edge&) const = default;
};

/// Labeled undirected multigraph. Parallel edges are allowed, self-loops are
/// not. Vertex and edge ids are opaque strings; vertices() iterates in
/// lexicographic order, edges() in insertion order.
class Graph {
 public:
  Graph() = default;

  void add_vertex(const VertexId& v);
  /// Declares both endpoints as a side effect. Throws Error on a self-loop
  /// or a duplicate edge id. By-value parameters keep aliases into this
  /// graph's own storage valid.
  void add_edge(EdgeId id, VertexId u, VertexId v);
  /// Auto-assigns the id "e<k>" where k is the current edge count.
  EdgeId add_edge(VertexId u, VertexId v);

  bool has_vertex(const VertexId& v) const { return incidence_.count(v) > 0; }
  bool has_edge(const EdgeId& id) const { return edge_index_.count(id) > 0; }

  std::size_t vertex_count() const { return incidence_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::vector<VertexId> vertices() const;
  const std::vector<Edge>& edges() const { return edges_; }

  const Edge& edge(const EdgeId& id) const { return edges_[edge_index(id)]; }
  int edge_index(const EdgeId& id) const;
  const Edge& edge_at(int index) const { return edges_.at(index); }

  /// Indices into edges() of all edges incident to v, in insertion order.
  const std::vector<int>& incident_edges(const VertexId& v) const;
  /// Degree with multiplicity (parallel edges count separately).
  int degree(const VertexId& v) const;

  bool operator==(const Graph& o) const = default;

 private:
  std::map<VertexId, std::vector<int>> incidence_;
  std::vector<Edge> edges_;
  std::map<EdgeId, int> edge_index_;
};

/// Witness for graph isomorphism: a bijection V(g) -> V(h).
struct VertexBijection {
  std::map<VertexId, VertexId> pairs;
};

struct BlockDecomposition {
  std::vector<Graph> blocks;  // 2-connected components and bridge edges
  std::set<VertexId> cut_vertices;
};

/// Edge-list text: one `u v` or `<id>: u v` per line, `#` starts a comment.
/// Unnamed edges get ids e0..e(e-1) by line position.
Graph parse_graph(const std::string& text);
std::string graph_to_text(const Graph& g);

/// Components as sorted vertex lists, sorted by first vertex. Isolated
/// vertices form singleton components.
std::vector<std::vector<VertexId>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

/// Vertices whose removal increases the number of connected components.
std::set<VertexId> cut_vertices(const Graph& g);

BlockDecomposition block_decomposition(const Graph& g);

/// True iff g has no cycle; a pair of parallel edges counts as a 2-cycle.
bool is_forest(const Graph& g);

/// Same vertex set with the listed edges removed. Throws on unknown ids.
Graph delete_edges(const Graph& g, const std::vector<EdgeId>& remove);
/// Same vertex set restricted to the listed edges. Throws on unknown ids.
Graph keep_edges(const Graph& g, const std::vector<EdgeId>& keep);

/// Exact isomorphism on labeled multigraphs: a vertex bijection preserving
/// edge multiplicities. Backtracking search, deterministic first witness.
std::optional<VertexBijection> graph_isomorphic(const Graph& g, const Graph& h);
bool verify_graph_isomorphism(const Graph& g, const Graph& h,
                              const VertexBijection& rho);

/// Canonical form: two graphs get equal certificates iff they are
/// isomorphic. Exhaustive minimal adjacency encoding over a color
/// refinement of the vertices; exponential worst case, fine at desk scale.
std::string canonical_certificate(const Graph& g);

/// Sorted multiset of block certificates; equal iff the block multisets
/// match under isomorphism. Isolated vertices are ignored.
std::vector<std::string> block_certificate(const Graph& g);

}  // namespace miso
