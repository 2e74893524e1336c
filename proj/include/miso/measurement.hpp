#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "miso/cycles.hpp"
#include "miso/graph.hpp"
#include "miso/whitney.hpp"

namespace miso {

/// Placement of vertices in d-dimensional Euclidean space.
struct Configuration {
  int d = 0;
  std::map<VertexId, Eigen::VectorXd> points;
};

/// Bijection between edge ids and coordinate axes of R^e.
struct EdgeAxisMap {
  std::vector<EdgeId> axis_to_edge;

  static EdgeAxisMap identity(const Graph& g);  // edges in insertion order
  static EdgeAxisMap from_order(std::vector<EdgeId> order);

  int axis(const EdgeId& id) const;
  const EdgeId& edge(int axis) const { return axis_to_edge.at(axis); }
  std::size_t size() const { return axis_to_edge.size(); }
  bool covers(const Graph& g) const;

 private:
  std::map<EdgeId, int> edge_to_axis_;
};

/// Vector of squared edge lengths; all entries nonnegative.
struct MeasurementPoint {
  Eigen::VectorXd coords;
};

/// coords[axis(e)] = |p(u) - p(v)|^2 for every edge e = {u, v}.
MeasurementPoint lengths_squared(const Graph& g, const Configuration& p,
                                 const EdgeAxisMap& ax);

struct SampleOptions {
  double spread = 1.0;  // coordinates are N(0, spread^2)
};

/// n forward images of i.i.d. Gaussian configurations; deterministic given
/// the seed, with per-point derived streams.
std::vector<MeasurementPoint> sample_measurement_set(
    const Graph& g, int d, int n, std::uint64_t seed,
    const SampleOptions& opts = {});

struct RealizeOptions {
  double tol = 1e-8;        // max-norm residual for success
  int restarts = 32;
  int max_iterations = 500;
  std::uint64_t seed = 0;
  double spread = 0.0;      // initial point scale; 0 = sqrt(max target + 1)
};

struct Realization {
  std::optional<Configuration> config;  // present iff residual <= tol
  double best_residual = std::numeric_limits<double>::infinity();
};

/// Numerical inverse of lengths_squared: multi-start damped Gauss-Newton
/// least squares on sum_e (|p(u)-p(v)|^2 - y_e)^2. Absence means "not
/// found", never "infeasible".
Realization realize(const Graph& g, const MeasurementPoint& target,
                    const EdgeAxisMap& ax, int d,
                    const RealizeOptions& opts = {});

/// Exact realizability of a single k-cycle with the given squared lengths:
/// for d >= 2 the closed-polygon inequality, for d = 1 a signed sum of
/// lengths reaching zero (subset enumeration, k <= 30).
bool cycle_realizable_exact(const std::vector<double>& lengths_sq, int d);

enum class Verdict { Realizable, Infeasible, Unknown };

/// Named exact certificate rules.
inline constexpr const char* kRuleForestGreedy = "forest-greedy";
inline constexpr const char* kRulePolygonInequality = "cycle-polygon-inequality";
inline constexpr const char* kRuleSignedSum1d = "cycle-signed-sum-1d";
inline constexpr const char* kRuleSolver = "solver";

struct MembershipVerdict {
  Verdict kind = Verdict::Unknown;
  std::string method;                    // rule or solver that decided
  std::optional<Configuration> witness;  // Realizable
  std::vector<EdgeId> certificate_cycle; // Infeasible
  double residual = std::numeric_limits<double>::quiet_NaN();
};

struct MemberOptions {
  RealizeOptions realize;
  std::size_t cycle_cap = 1'000'000;
};

/// Membership pipeline: exact forest construction, then the universal
/// cycle certificate (max sqrt(y) exceeding the sum of the others fails in
/// every dimension), the exact 1-d rule when g itself is a cycle, then the
/// numerical solver. A solver miss is Unknown, never Infeasible.
MembershipVerdict is_member(const Graph& g, const MeasurementPoint& target,
                            const EdgeAxisMap& ax, int d,
                            const MemberOptions& opts = {});

/// Re-checks a verdict against its own rule: witness residual for
/// Realizable, the named exact rule for Infeasible.
bool verify_membership_verdict(const Graph& g, const MeasurementPoint& target,
                               const EdgeAxisMap& ax, int d,
                               const MembershipVerdict& verdict, double tol);

struct ProjectedPoint {
  MeasurementPoint point;
  EdgeAxisMap axes;  // kept edges, in original axis order
};

/// Coordinate projection onto the kept edges.
ProjectedPoint project_point(const MeasurementPoint& pt, const EdgeAxisMap& ax,
                             const std::vector<EdgeId>& keep);

/// Reflects the interior vertices of side s across the hyperplane bisecting
/// the segment p(x)p(y); guarantees lengths_squared(g, p) equals
/// lengths_squared(reversal(g, sep), p') axis by axis. With p(x) = p(y) the
/// configuration is returned unchanged.
Configuration reflect_across_cut_pair(const Graph& g, const TwoSeparation& sep,
                                      const Configuration& p);

struct DistinguishOptions {
  std::size_t candidate_cap = 200'000;
  CycleOptions cycles;
};

/// A cycle of one graph plus the indicator point (1 on one edge, 0 on the
/// rest of the cycle) that lies outside that graph's projected measurement
/// set but inside the other graph's, for every edge bijection considered.
struct DistinguishWitness {
  bool cycle_in_first = true;  // c is a cycle of g; otherwise of h
  std::vector<EdgeId> cycle;   // ids in the side graph, in axis order
  EdgeId unit_edge;            // the axis carrying the 1
  MeasurementPoint point;
  bool defeats_all_bijections = false;  // girth argument; no family needed
  std::size_t candidates_checked = 0;
};

/// Returns nullopt iff g and h are cycle isomorphic. Otherwise searches for
/// a single witness defeating every candidate bijection: first via the
/// girth argument (shorter side cycle than any cycle of the other graph
/// maps to a forest under every bijection), then by checking the candidate
/// family directly (all e! when candidates is empty, up to the cap). Throws
/// Error when the graphs differ but no uniform witness of this shape exists
/// for the family.
std::optional<DistinguishWitness> distinguish_witness(
    const Graph& g, const Graph& h,
    const std::vector<EdgeBijection>& candidates = {},
    const DistinguishOptions& opts = {});

/// Least-squares objective sum_e (|p(u)-p(v)|^2 - y_e)^2 and its analytic
/// gradient, flattened vertex-major in lexicographic vertex order.
double realization_objective(const Graph& g, const Configuration& p,
                             const EdgeAxisMap& ax,
                             const MeasurementPoint& target);
Eigen::VectorXd realization_gradient(const Graph& g, const Configuration& p,
                                     const EdgeAxisMap& ax,
                                     const MeasurementPoint& target);

/// max_e | |p(u)-p(v)|^2 - y_e |
double max_residual(const Graph& g, const Configuration& p,
                    const EdgeAxisMap& ax, const MeasurementPoint& target);

/// Embeds into a higher dimension by zero-padding the new coordinates;
/// exact witness for the nesting of measurement sets.
Configuration zero_pad(const Configuration& p, int new_d);

}  // namespace miso
