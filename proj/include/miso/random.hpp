#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "miso/graph.hpp"
#include "miso/whitney.hpp"

namespace miso {

struct Configuration;

using Rng = std::mt19937_64;

/// splitmix64 mix of a base seed and a counter; derived streams are
/// independent of evaluation order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

/// Connected multigraph: a random spanning tree on v vertices plus e-(v-1)
/// uniform extra edges (parallels allowed). Requires e >= v-1, v >= 1.
Graph random_connected_multigraph(int v, int e, Rng& rng);

/// Connected simple graph: spanning tree plus each remaining pair
/// independently with the given probability.
Graph random_connected_simple_graph(int v, double extra_edge_prob, Rng& rng);

/// Rejection-sampled simple graph with vertex connectivity >= 3 (v >= 4).
Graph random_three_connected_graph(int v, Rng& rng);

/// Fresh vertex and edge names under a random permutation; edge order
/// shuffled.
Graph relabel_randomly(const Graph& g, Rng& rng);

/// Uniformly random valid 2-separation, or nullopt if none exists.
std::optional<TwoSeparation> random_separation(const Graph& g, Rng& rng);

/// Applies up to k random reversals; records the separations used. Fewer
/// are applied when a graph runs out of separations.
Graph random_reversal_sequence(const Graph& g, int k, Rng& rng,
                               std::vector<TwoSeparation>* ops = nullptr);

/// Random valid split: a random cut vertex with one component of g minus
/// that vertex as the detached side. nullopt when g has no cut vertex.
std::optional<SplitSpec> random_split(const Graph& g, Rng& rng);

/// i.i.d. N(0, spread^2) coordinates, vertices in lexicographic order.
Configuration random_configuration(const Graph& g, int d, double spread,
                                   Rng& rng);

/// Complete graph on n vertices a, b, c, ...
Graph complete_graph(int n);
/// Single cycle v0 - v1 - ... - v(k-1) - v0.
Graph cycle_graph(int k);
/// Path with k edges.
Graph path_graph(int k);

}  // namespace miso
