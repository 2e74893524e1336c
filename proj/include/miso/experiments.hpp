#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "miso/graph.hpp"
#include "miso/measurement.hpp"

namespace miso {

/// All connected loopless multigraphs with 1..max_edges edges, one
/// representative per isomorphism class, grown edge by edge from K2.
std::vector<Graph> all_connected_multigraphs(int max_edges);

/// Verdicts of every decider on one pair; the agreement flag is always
/// recomputed from the verdicts.
struct PairRecord {
  std::string pair_id;
  bool graph_iso = false;
  bool one_iso = false;
  bool cycle_iso = false;
  std::string search_status;  // found | exhausted | unknown
  bool agree() const { return cycle_iso == (search_status == "found"); }
};

/// Cross-validation of the cycle route against the reversal-orbit route:
/// every same-size pair from the exhaustive enumeration, plus randomly
/// constructed pairs at larger sizes. A disagreement or an indecisive
/// orbit search fails the suite.
struct WhitneyCrosscheckReport {
  int max_edges = 0;
  std::size_t graph_count = 0;
  std::size_t pairs_checked = 0;
  std::size_t equivalent_pairs = 0;
  std::size_t direct_search_runs = 0;
  std::size_t random_pairs = 0;
  std::size_t disagreements = 0;
  std::size_t unknowns = 0;
  std::vector<PairRecord> random_pair_records;  // sorted by pair id
  std::vector<std::string> failures;
  bool passed() const {
    return graph_count > 0 && disagreements == 0 && unknowns == 0 &&
           failures.empty();
  }
};
WhitneyCrosscheckReport run_whitney_crosscheck(int max_edges, int random_pairs,
                                               std::uint64_t seed);

/// Forward direction: measurement points of one graph realize on the other
/// under the cycle-route certificate, and the reflection construction
/// preserves lengths along the reversal sequence. Reverse direction:
/// distinguishing witnesses verified by exact certificates on both sides,
/// for every listed dimension.
struct MainTheoremReport {
  int forward_pairs = 0;
  int reverse_pairs = 0;
  std::vector<int> dims;
  int samples_per_pair = 0;
  std::size_t points_realized = 0;
  std::size_t realize_failures = 0;
  double max_forward_residual = 0.0;
  double max_reflection_error = 0.0;
  double forward_residual_tol = 1e-8;
  double reflection_tol = 1e-9;
  std::size_t witnesses_verified = 0;
  std::size_t witness_failures = 0;
  std::vector<std::string> failures;
  bool passed() const {
    return realize_failures == 0 && witness_failures == 0 &&
           max_forward_residual <= forward_residual_tol &&
           max_reflection_error <= reflection_tol && failures.empty();
  }
};
MainTheoremReport run_main_theorem(int forward_pairs, int reverse_pairs,
                                   const std::vector<int>& dims,
                                   int samples_per_pair, std::uint64_t seed);

/// Zero-pad nesting of measurement sets (exact) and stabilization between
/// d = v-1 and d = v (solver residuals).
struct NestingReport {
  int graphs = 0;
  int samples = 0;
  int stab_samples = 0;
  int d = 0;
  std::size_t zero_pad_ok = 0;
  std::size_t zero_pad_fail = 0;
  std::size_t stabilization_ok = 0;
  std::size_t stabilization_fail = 0;
  double max_stabilization_residual = 0.0;
  std::vector<std::string> failures;
  bool passed() const {
    return zero_pad_fail == 0 && stabilization_fail == 0 && failures.empty();
  }
};
NestingReport run_nesting(int graphs, int samples, int stab_samples, int d,
                          std::uint64_t seed);

/// On 3-connected simple graphs, 2-isomorphism must coincide with graph
/// isomorphism, pair by pair.
struct ThreeConnectedReport {
  std::size_t graphs = 0;
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> failures;
  bool passed() const {
    return pairs > 0 && mismatches == 0 && failures.empty();
  }
};
ThreeConnectedReport run_three_connected(const std::vector<Graph>& base,
                                         int random_graphs, std::uint64_t seed);

}  // namespace miso
