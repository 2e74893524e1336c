#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "miso/cycles.hpp"
#include "miso/graph.hpp"

namespace miso {

/// Edge partition {s, t} whose induced subgraphs share exactly the two
/// cut-pair vertices {x, y}. By convention s holds the lexicographically
/// least edge id and x < y; both sides are sorted.
struct TwoSeparation {
  std::vector<EdgeId> s;
  std::vector<EdgeId> t;
  VertexId x;
  VertexId y;
};

/// A split of a cut vertex: `side` is the edge subset detached onto the
/// fresh copy; side and its complement must meet only at cut_vertex.
struct SplitSpec {
  VertexId cut_vertex;
  std::vector<EdgeId> side;
};

/// Duplicates the cut vertex (fresh id: cut_vertex plus apostrophes) and
/// reattaches the side edges to the copy. Edge ids and order preserved.
Graph split(const Graph& g, const SplitSpec& spec);

/// Throws Error unless sep is a valid 2-separation of g with the stated
/// cut pair.
void validate_two_separation(const Graph& g, const TwoSeparation& sep);

/// Complete up to swapping s and t; deterministic canonical order. Supports
/// up to 30 edges (subset enumeration over vertex masks).
std::vector<TwoSeparation> enumerate_two_separations(const Graph& g);

/// Swaps the x/y incidences of the edges in sep.s; t untouched, edge ids
/// preserved. Involution at the labeled-graph level. Throws on an invalid
/// separation.
Graph reversal(const Graph& g, const TwoSeparation& sep);

bool has_parallel_edges(const Graph& g);

/// True iff the block multisets match under graph isomorphism, which is
/// equivalent to split-sequence reachability. Isolated vertices ignored.
bool one_isomorphic(const Graph& g, const Graph& h);

enum class SearchStatus { Found, Exhausted, Unknown };

struct SearchOptions {
  int max_depth = 8;             // negative = unlimited
  std::size_t orbit_cap = 100'000;
  bool simple_only = false;      // reject reversals creating parallel edges
};

struct SearchResult {
  SearchStatus status = SearchStatus::Unknown;
  std::vector<TwoSeparation> witness;  // reversal sequence from g, on Found
  std::size_t orbit_size = 0;
  int depth_reached = 0;
};

/// BFS over the reversal orbit of g (nodes deduplicated up to isomorphism),
/// testing 1-isomorphism against h at each node. Exhausted is a definitive
/// no; Unknown means a cap cut the search short.
SearchResult two_isomorphic_search(const Graph& g, const Graph& h,
                                   const SearchOptions& opts = {});

struct OrbitResult {
  std::vector<Graph> graphs;  // one representative per isomorphism class
  bool complete = false;      // false iff a cap cut the closure short
};

/// Full closure of g under reversals, deduplicated up to isomorphism; the
/// same expansion two_isomorphic_search performs, without a target.
OrbitResult reversal_orbit(const Graph& g, const SearchOptions& opts = {});

/// Decision by the cycle route: the returned edge bijection is the
/// 2-isomorphism certificate.
std::optional<EdgeBijection> two_isomorphic(const Graph& g, const Graph& h,
                                            const CycleOptions& opts = {});

}  // namespace miso
