#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "miso/graph.hpp"

namespace miso {

/// All simple cycles of a graph as edge-id sets. Each cycle is a sorted
/// vector of ids; the list is sorted by (length, ids) and deduplicated.
struct CycleSet {
  std::vector<std::vector<EdgeId>> cycles;
};

/// Witness for cycle isomorphism: a bijection E(g) -> E(h) mapping cycle
/// edge sets to cycle edge sets in both directions.
struct EdgeBijection {
  std::map<EdgeId, EdgeId> pairs;
};

struct CycleOptions {
  std::size_t cap = 1'000'000;  // refuse enumerations beyond this many cycles
};

/// True iff the subgraph induced by s is a single simple cycle: connected,
/// every incident vertex of degree exactly 2. A pair of parallel edges is a
/// digon and counts. Throws on unknown edge ids.
bool is_cycle_subset(const Graph& g, const std::vector<EdgeId>& s);

/// Depth-first circuit search deduplicated by edge set; complete. Throws
/// CapExceeded past opts.cap cycles.
CycleSet enumerate_cycles(const Graph& g, const CycleOptions& opts = {});

/// Length of a shortest cycle, or nullopt for forests. Computed directly
/// from per-edge BFS, independent of enumerate_cycles.
std::optional<int> girth(const Graph& g);

/// Backtracking search over edge bijections, pruned by per-edge cycle
/// signatures; deterministic first witness in canonical order.
std::optional<EdgeBijection> cycle_isomorphic(const Graph& g, const Graph& h,
                                              const CycleOptions& opts = {});

bool verify_cycle_isomorphism(const Graph& g, const Graph& h,
                              const EdgeBijection& sigma,
                              const CycleOptions& opts = {});

/// For each edge, the sorted multiset of lengths of cycles through it —
/// invariant under any valid cycle isomorphism.
std::map<EdgeId, std::vector<int>> edge_cycle_signatures(const Graph& g,
                                                         const CycleSet& cs);

}  // namespace miso
