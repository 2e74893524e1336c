#include "miso/measurement.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "indexed.hpp"
#include "miso/random.hpp"

namespace miso {

using detail::Indexed;
using detail::index_graph;

EdgeAxisMap EdgeAxisMap::identity(const Graph& g) {
  std::vector<EdgeId> order;
  order.reserve(g.edge_count());
  for (const Edge& e : g.edges()) order.push_back(e.id);
  return from_order(std::move(order));
}

EdgeAxisMap EdgeAxisMap::from_order(std::vector<EdgeId> order) {
  EdgeAxisMap ax;
  ax.axis_to_edge = std::move(order);
  for (int i = 0; i < static_cast<int>(ax.axis_to_edge.size()); ++i)
    if (!ax.edge_to_axis_.emplace(ax.axis_to_edge[i], i).second)
      throw Error("EdgeAxisMap: duplicate edge id '" + ax.axis_to_edge[i] + "'");
  return ax;
}

int EdgeAxisMap::axis(const EdgeId& id) const {
  auto it = edge_to_axis_.find(id);
  if (it == edge_to_axis_.end())
    throw Error("EdgeAxisMap: unmapped edge id '" + id + "'");
  return it->second;
}

bool EdgeAxisMap::covers(const Graph& g) const {
  if (size() != g.edge_count()) return false;
  for (const Edge& e : g.edges())
    if (!edge_to_axis_.count(e.id)) return false;
  return true;
}

namespace {

void check_configuration(const Graph& g, const Configuration& p) {
  if (p.d <= 0) throw Error("configuration dimension must be positive");
  for (const VertexId& v : g.vertices()) {
    auto it = p.points.find(v);
    if (it == p.points.end())
      throw Error("configuration misses vertex '" + v + "'");
    if (it->second.size() != p.d)
      throw Error("configuration point of wrong dimension at '" + v + "'");
    if (!it->second.allFinite())
      throw Error("non-finite coordinate at '" + v + "'");
  }
}

void check_target(const Graph& g, const MeasurementPoint& target,
                  const EdgeAxisMap& ax) {
  if (!ax.covers(g)) throw Error("edge-axis map does not cover the graph");
  if (target.coords.size() != static_cast<Eigen::Index>(ax.size()))
    throw Error("measurement point has wrong dimension");
  for (Eigen::Index i = 0; i < target.coords.size(); ++i)
    if (!(target.coords[i] >= 0.0))
      throw Error("measurement point entries must be nonnegative");
}

}  // namespace

MeasurementPoint lengths_squared(const Graph& g, const Configuration& p,
                                 const EdgeAxisMap& ax) {
  check_configuration(g, p);
  if (!ax.covers(g)) throw Error("edge-axis map does not cover the graph");
  MeasurementPoint out;
  out.coords = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ax.size()));
  for (const Edge& e : g.edges()) {
    const Eigen::VectorXd& pu = p.points.at(e.u);
    const Eigen::VectorXd& pv = p.points.at(e.v);
    // fixed left-to-right summation: appending zero coordinates leaves the
    // value bit-identical, which the nesting property relies on
    double sq = 0.0;
    for (Eigen::Index i = 0; i < pu.size(); ++i) {
      double diff = pu[i] - pv[i];
      sq += diff * diff;
    }
    out.coords[ax.axis(e.id)] = sq;
  }
  return out;
}

std::vector<MeasurementPoint> sample_measurement_set(const Graph& g, int d,
                                                     int n, std::uint64_t seed,
                                                     const SampleOptions& opts) {
  if (n < 1) throw Error("sample count must be at least 1");
  if (d < 1) throw Error("dimension must be at least 1");
  EdgeAxisMap ax = EdgeAxisMap::identity(g);
  std::vector<MeasurementPoint> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
    Configuration p = random_configuration(g, d, opts.spread, rng);
    out.push_back(lengths_squared(g, p, ax));
  }
  return out;
}

double max_residual(const Graph& g, const Configuration& p,
                    const EdgeAxisMap& ax, const MeasurementPoint& target) {
  MeasurementPoint got = lengths_squared(g, p, ax);
  if (got.coords.size() != target.coords.size())
    throw Error("measurement point has wrong dimension");
  if (got.coords.size() == 0) return 0.0;
  return (got.coords - target.coords).cwiseAbs().maxCoeff();
}

double realization_objective(const Graph& g, const Configuration& p,
                             const EdgeAxisMap& ax,
                             const MeasurementPoint& target) {
  MeasurementPoint got = lengths_squared(g, p, ax);
  return (got.coords - target.coords).squaredNorm();
}

Eigen::VectorXd realization_gradient(const Graph& g, const Configuration& p,
                                     const EdgeAxisMap& ax,
                                     const MeasurementPoint& target) {
  check_configuration(g, p);
  Indexed ix = index_graph(g);
  int n = static_cast<int>(ix.verts.size());
  int d = p.d;
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(n * d);
  for (std::size_t ei = 0; ei < ix.edges.size(); ++ei) {
    auto [u, v] = ix.edges[ei];
    const Eigen::VectorXd& pu = p.points.at(ix.verts[u]);
    const Eigen::VectorXd& pv = p.points.at(ix.verts[v]);
    Eigen::VectorXd diff = pu - pv;
    double r = diff.squaredNorm() - target.coords[ax.axis(g.edge_at(ei).id)];
    grad.segment(u * d, d) += 4.0 * r * diff;
    grad.segment(v * d, d) -= 4.0 * r * diff;
  }
  return grad;
}

namespace {

Configuration config_from_flat(const Indexed& ix, const Eigen::VectorXd& x,
                               int d) {
  Configuration p;
  p.d = d;
  for (std::size_t v = 0; v < ix.verts.size(); ++v)
    p.points[ix.verts[v]] = x.segment(static_cast<Eigen::Index>(v) * d, d);
  return p;
}

struct FlatProblem {
  const Indexed& ix;
  std::vector<int> axis_of_edge;  // graph edge index -> target coordinate
  const Eigen::VectorXd& y;
  int d;

  Eigen::VectorXd residuals(const Eigen::VectorXd& x) const {
    Eigen::VectorXd r(y.size());
    for (std::size_t ei = 0; ei < ix.edges.size(); ++ei) {
      auto [u, v] = ix.edges[ei];
      double sq = (x.segment(u * d, d) - x.segment(v * d, d)).squaredNorm();
      r[axis_of_edge[ei]] = sq - y[axis_of_edge[ei]];
    }
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(y.size(), x.size());
    for (std::size_t ei = 0; ei < ix.edges.size(); ++ei) {
      auto [u, v] = ix.edges[ei];
      Eigen::VectorXd diff = x.segment(u * d, d) - x.segment(v * d, d);
      J.block(axis_of_edge[ei], u * d, 1, d) = 2.0 * diff.transpose();
      J.block(axis_of_edge[ei], v * d, 1, d) = -2.0 * diff.transpose();
    }
    return J;
  }
};

// Damped Gauss-Newton from one starting point. Returns the final iterate's
// max-norm residual and leaves the iterate in x.
double levenberg_iterate(const FlatProblem& prob, Eigen::VectorXd& x,
                         double tol, int max_iterations) {
  Eigen::VectorXd r = prob.residuals(x);
  double f = r.squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < max_iterations; ++it) {
    double maxr = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    if (maxr <= tol) break;
    Eigen::MatrixXd J = prob.jacobian(x);
    Eigen::MatrixXd A = J.transpose() * J;
    Eigen::VectorXd grad = J.transpose() * r;
    bool stepped = false;
    for (int attempt = 0; attempt < 25; ++attempt) {
      Eigen::MatrixXd damped = A;
      damped.diagonal().array() += lambda;
      Eigen::VectorXd delta = damped.ldlt().solve(-grad);
      Eigen::VectorXd xn = x + delta;
      Eigen::VectorXd rn = prob.residuals(xn);
      double fn = rn.squaredNorm();
      if (fn < f) {
        x = std::move(xn);
        r = std::move(rn);
        f = fn;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = delta.norm() > 1e-15;
        break;
      }
      lambda *= 3.0;
      if (lambda > 1e12) break;
    }
    if (!stepped) break;  // stagnated
  }
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

// Exact dimension-1 search: positions are determined by a sign choice per
// spanning-tree edge, so enumerating those signs is complete. Only used for
// modest vertex counts.
std::optional<Eigen::VectorXd> sign_enumeration_1d(const FlatProblem& prob,
                                                   double tol,
                                                   double* best_residual) {
  int n = static_cast<int>(prob.ix.verts.size());
  // BFS forest: (tree edge index, parent, child) in dependency order
  std::vector<std::tuple<int, int, int>> tree;
  std::vector<int> order;
  std::vector<char> seen(n, 0);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    order.push_back(root);
    std::vector<int> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (auto [ei, w] : prob.ix.inc[u])
        if (!seen[w]) {
          seen[w] = 1;
          tree.emplace_back(ei, u, w);
          queue.push_back(w);
        }
    }
  }
  if (tree.size() > 24) return std::nullopt;  // caller falls back to the solver

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::optional<Eigen::VectorXd> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tree.size());
       ++mask) {
    for (std::size_t k = 0; k < tree.size(); ++k) {
      auto [ei, u, w] = tree[k];
      double len = std::sqrt(prob.y[prob.axis_of_edge[ei]]);
      x[w] = x[u] + ((mask >> k & 1) ? len : -len);
    }
    double maxr = prob.residuals(x).cwiseAbs().maxCoeff();
    if (maxr < *best_residual) {
      *best_residual = maxr;
      best = x;
      if (maxr <= tol) break;
    }
  }
  if (best && *best_residual <= tol) return best;
  return std::nullopt;
}

}  // namespace

Realization realize(const Graph& g, const MeasurementPoint& target,
                    const EdgeAxisMap& ax, int d, const RealizeOptions& opts) {
  if (d < 1) throw Error("dimension must be at least 1");
  check_target(g, target, ax);
  Indexed ix = index_graph(g);
  int n = static_cast<int>(ix.verts.size());

  Realization res;
  if (g.edge_count() == 0) {
    res.config = config_from_flat(ix, Eigen::VectorXd::Zero(n * d), d);
    res.best_residual = 0.0;
    return res;
  }

  FlatProblem prob{ix, {}, target.coords, d};
  prob.axis_of_edge.resize(g.edge_count());
  for (std::size_t ei = 0; ei < g.edge_count(); ++ei)
    prob.axis_of_edge[ei] = ax.axis(g.edge_at(ei).id);

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;

  if (d == 1) {
    if (auto x = sign_enumeration_1d(prob, opts.tol, &best)) {
      res.config = config_from_flat(ix, *x, d);
      res.best_residual = best;
      return res;
    }
  }

  double spread = opts.spread > 0.0
                      ? opts.spread
                      : std::sqrt(target.coords.maxCoeff() + 1.0);
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(restart)));
    std::normal_distribution<double> normal(0.0, spread);
    Eigen::VectorXd x(n * d);
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);
    double maxr = levenberg_iterate(prob, x, opts.tol, opts.max_iterations);
    if (maxr < best) {
      best = maxr;
      best_x = x;
    }
    if (best <= opts.tol) break;
  }

  res.best_residual = best;
  if (best <= opts.tol && best_x.size() > 0)
    res.config = config_from_flat(ix, best_x, d);
  return res;
}

namespace {

// Branch-and-bound over sign assignments for sum_i s_i * sqrt(y_i) = 0,
// lengths processed in descending order.
bool signed_sum_search(const std::vector<double>& lengths, std::size_t i,
                       double partial, const std::vector<double>& suffix,
                       double tol, std::vector<int>* signs) {
  if (i == lengths.size()) return std::abs(partial) <= tol;
  if (std::abs(partial) - suffix[i] > tol) return false;
  for (int s : {+1, -1}) {
    if (signs) (*signs)[i] = s;
    if (signed_sum_search(lengths, i + 1, partial + s * lengths[i], suffix,
                          tol, signs))
      return true;
  }
  return false;
}

// If some sign assignment closes the walk, returns signs aligned with the
// input order.
std::optional<std::vector<int>> signed_sum_assignment(
    const std::vector<double>& lengths_sq) {
  std::vector<double> lengths;
  lengths.reserve(lengths_sq.size());
  double total = 0.0;
  for (double y : lengths_sq) {
    if (!(y >= 0.0)) throw Error("squared lengths must be nonnegative");
    lengths.push_back(std::sqrt(y));
    total += lengths.back();
  }
  double tol = 1e-12 * total;

  std::vector<std::size_t> order(lengths.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lengths[a] > lengths[b]; });
  std::vector<double> sorted;
  for (std::size_t k : order) sorted.push_back(lengths[k]);
  std::vector<double> suffix(sorted.size() + 1, 0.0);
  for (std::size_t k = sorted.size(); k-- > 0;)
    suffix[k] = suffix[k + 1] + sorted[k];

  std::vector<int> signs(sorted.size(), +1);
  if (!signed_sum_search(sorted, 0, 0.0, suffix, tol, &signs))
    return std::nullopt;
  std::vector<int> out(lengths.size(), +1);
  for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = signs[k];
  return out;
}

}  // namespace

bool cycle_realizable_exact(const std::vector<double>& lengths_sq, int d) {
  if (lengths_sq.size() < 2)
    throw Error("cycle_realizable_exact needs at least 2 edges");
  if (d < 1) throw Error("dimension must be at least 1");
  for (double y : lengths_sq)
    if (!(y >= 0.0)) throw Error("squared lengths must be nonnegative");

  if (d >= 2) {
    double sum = 0.0, mx = 0.0;
    for (double y : lengths_sq) {
      double len = std::sqrt(y);
      sum += len;
      mx = std::max(mx, len);
    }
    return mx <= sum - mx;
  }
  if (lengths_sq.size() > 30)
    throw CapExceeded(
        "cycle_realizable_exact: d=1 sign enumeration supports at most 30 "
        "edges; fall back to numerical realize");
  return signed_sum_assignment(lengths_sq).has_value();
}

namespace {

// Exact greedy witness for a forest: walk each tree, laying every child
// along the first axis at the prescribed distance from its parent.
Configuration forest_witness(const Graph& g, const MeasurementPoint& target,
                             const EdgeAxisMap& ax, int d) {
  Indexed ix = index_graph(g);
  int n = static_cast<int>(ix.verts.size());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<char> seen(n, 0);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::vector<int> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (auto [ei, w] : ix.inc[u])
        if (!seen[w]) {
          seen[w] = 1;
          x[w] = x[u] + std::sqrt(target.coords[ax.axis(g.edge_at(ei).id)]);
          queue.push_back(w);
        }
    }
  }
  Configuration p;
  p.d = d;
  for (int v = 0; v < n; ++v) {
    Eigen::VectorXd pt = Eigen::VectorXd::Zero(d);
    pt[0] = x[v];
    p.points[ix.verts[v]] = pt;
  }
  return p;
}

// Exact witness for a single cycle in dimension 1 from a sign assignment.
Configuration cycle_1d_witness(const Graph& g, const MeasurementPoint& target,
                               const EdgeAxisMap& ax,
                               const std::vector<int>& signs_in_walk_order,
                               const std::vector<int>& walk_edges,
                               const std::vector<VertexId>& walk_vertices) {
  Configuration p;
  p.d = 1;
  double pos = 0.0;
  for (std::size_t k = 0; k < walk_vertices.size(); ++k) {
    Eigen::VectorXd pt(1);
    pt[0] = pos;
    p.points[walk_vertices[k]] = pt;
    if (k < walk_edges.size()) {
      double len =
          std::sqrt(target.coords[ax.axis(g.edge_at(walk_edges[k]).id)]);
      pos += signs_in_walk_order[k] * len;
    }
  }
  return p;
}

}  // namespace

MembershipVerdict is_member(const Graph& g, const MeasurementPoint& target,
                            const EdgeAxisMap& ax, int d,
                            const MemberOptions& opts) {
  if (d < 1) throw Error("dimension must be at least 1");
  check_target(g, target, ax);
  MembershipVerdict verdict;

  if (is_forest(g)) {
    verdict.kind = Verdict::Realizable;
    verdict.method = kRuleForestGreedy;
    verdict.witness = forest_witness(g, target, ax, d);
    verdict.residual = max_residual(g, *verdict.witness, ax, target);
    return verdict;
  }

  // Universal certificate: in no dimension can one cycle edge be longer
  // than all the others around the cycle combined.
  std::optional<CycleSet> cycles;
  try {
    cycles = enumerate_cycles(g, CycleOptions{opts.cycle_cap});
  } catch (const CapExceeded&) {
    // screening skipped; the numerical path below stays honest
  }
  if (cycles) {
    for (const auto& cyc : cycles->cycles) {
      double sum = 0.0, mx = 0.0;
      for (const EdgeId& id : cyc) {
        double len = std::sqrt(target.coords[ax.axis(id)]);
        sum += len;
        mx = std::max(mx, len);
      }
      if (mx > sum - mx) {
        verdict.kind = Verdict::Infeasible;
        verdict.method = kRulePolygonInequality;
        verdict.certificate_cycle = cyc;
        return verdict;
      }
    }
  }

  // A graph whose edge set is a single cycle is decided exactly in d = 1.
  if (d == 1 && g.edge_count() >= 2 && g.edge_count() <= 30) {
    std::vector<EdgeId> all;
    for (const Edge& e : g.edges()) all.push_back(e.id);
    if (is_cycle_subset(g, all)) {
      // walk the cycle once to fix a traversal order
      std::vector<int> walk_edges;
      std::vector<VertexId> walk_vertices;
      VertexId start = g.vertices().front();
      VertexId cur = start;
      int prev_edge = -1;
      do {
        walk_vertices.push_back(cur);
        for (int ei : g.incident_edges(cur))
          if (ei != prev_edge) {
            walk_edges.push_back(ei);
            prev_edge = ei;
            cur = g.edge_at(ei).other(cur);
            break;
          }
      } while (cur != start);

      std::vector<double> lengths_sq;
      for (int ei : walk_edges)
        lengths_sq.push_back(target.coords[ax.axis(g.edge_at(ei).id)]);
      if (auto signs = signed_sum_assignment(lengths_sq)) {
        verdict.kind = Verdict::Realizable;
        verdict.method = kRuleSignedSum1d;
        Configuration w =
            cycle_1d_witness(g, target, ax, *signs, walk_edges, walk_vertices);
        for (const VertexId& v : g.vertices())  // isolated vertices, if any
          w.points.try_emplace(v, Eigen::VectorXd::Zero(1));
        verdict.witness = std::move(w);
        verdict.residual = max_residual(g, *verdict.witness, ax, target);
        return verdict;
      }
      verdict.kind = Verdict::Infeasible;
      verdict.method = kRuleSignedSum1d;
      std::sort(all.begin(), all.end());
      verdict.certificate_cycle = std::move(all);
      return verdict;
    }
  }

  Realization r = realize(g, target, ax, d, opts.realize);
  if (r.config) {
    verdict.kind = Verdict::Realizable;
    verdict.method = kRuleSolver;
    verdict.witness = std::move(r.config);
    verdict.residual = r.best_residual;
  } else {
    verdict.kind = Verdict::Unknown;
    verdict.residual = r.best_residual;
  }
  return verdict;
}

bool verify_membership_verdict(const Graph& g, const MeasurementPoint& target,
                               const EdgeAxisMap& ax, int d,
                               const MembershipVerdict& verdict, double tol) {
  switch (verdict.kind) {
    case Verdict::Realizable: {
      if (!verdict.witness || verdict.witness->d != d) return false;
      try {
        return max_residual(g, *verdict.witness, ax, target) <= tol;
      } catch (const Error&) {
        return false;
      }
    }
    case Verdict::Infeasible: {
      if (verdict.certificate_cycle.empty()) return false;
      if (!is_cycle_subset(g, verdict.certificate_cycle)) return false;
      std::vector<double> lengths_sq;
      for (const EdgeId& id : verdict.certificate_cycle)
        lengths_sq.push_back(target.coords[ax.axis(id)]);
      if (verdict.method == kRulePolygonInequality) {
        double sum = 0.0, mx = 0.0;
        for (double y : lengths_sq) {
          double len = std::sqrt(y);
          sum += len;
          mx = std::max(mx, len);
        }
        return mx > sum - mx;
      }
      if (verdict.method == kRuleSignedSum1d) {
        if (d != 1) return false;
        if (verdict.certificate_cycle.size() != g.edge_count()) return false;
        return !signed_sum_assignment(lengths_sq).has_value();
      }
      return false;
    }
    case Verdict::Unknown:
      return true;  // nothing claimed
  }
  return false;
}

ProjectedPoint project_point(const MeasurementPoint& pt, const EdgeAxisMap& ax,
                             const std::vector<EdgeId>& keep) {
  if (pt.coords.size() != static_cast<Eigen::Index>(ax.size()))
    throw Error("measurement point has wrong dimension");
  std::set<int> axes;
  for (const EdgeId& id : keep)
    if (!axes.insert(ax.axis(id)).second)
      throw Error("project_point: duplicate edge id '" + id + "'");

  ProjectedPoint out;
  out.point.coords = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(axes.size()));
  std::vector<EdgeId> order;
  Eigen::Index k = 0;
  for (int a : axes) {
    out.point.coords[k++] = pt.coords[a];
    order.push_back(ax.edge(a));
  }
  out.axes = EdgeAxisMap::from_order(std::move(order));
  return out;
}

Configuration reflect_across_cut_pair(const Graph& g, const TwoSeparation& sep,
                                      const Configuration& p) {
  validate_two_separation(g, sep);
  check_configuration(g, p);

  const Eigen::VectorXd& a = p.points.at(sep.x);
  const Eigen::VectorXd& b = p.points.at(sep.y);
  Eigen::VectorXd diff = b - a;
  double len_sq = diff.squaredNorm();
  if (len_sq == 0.0) return p;  // degenerate: swap changes nothing

  std::set<VertexId> interior;
  for (const EdgeId& id : sep.s) {
    const Edge& e = g.edge(id);
    interior.insert(e.u);
    interior.insert(e.v);
  }
  interior.erase(sep.x);
  interior.erase(sep.y);

  Eigen::VectorXd mid = 0.5 * (a + b);
  Configuration out = p;
  for (const VertexId& v : interior) {
    const Eigen::VectorXd& z = p.points.at(v);
    out.points[v] = z - (2.0 * (z - mid).dot(diff) / len_sq) * diff;
  }
  return out;
}

namespace {

// Lazily enumerates edge bijections g -> h in canonical order, optionally
// restricted to signature-compatible classes. Calls visit for each; stops
// when visit returns false. Returns the number enumerated, or nullopt if the
// cap was exceeded.
std::optional<std::size_t> for_each_bijection(
    const std::vector<std::vector<EdgeId>>& g_classes,
    const std::vector<std::vector<EdgeId>>& h_classes, std::size_t cap,
    const std::function<bool(const std::map<EdgeId, EdgeId>&)>& visit) {
  std::vector<std::vector<EdgeId>> perms = h_classes;
  std::size_t count = 0;
  while (true) {
    std::map<EdgeId, EdgeId> sigma;
    for (std::size_t c = 0; c < g_classes.size(); ++c)
      for (std::size_t k = 0; k < g_classes[c].size(); ++k)
        sigma[g_classes[c][k]] = perms[c][k];
    if (++count > cap) return std::nullopt;
    if (!visit(sigma)) return count;
    int ci = static_cast<int>(perms.size()) - 1;
    while (ci >= 0 &&
           !std::next_permutation(perms[ci].begin(), perms[ci].end()))
      --ci;
    if (ci < 0) return count;
    for (std::size_t j = ci + 1; j < perms.size(); ++j)
      std::sort(perms[j].begin(), perms[j].end());
  }
}

std::vector<EdgeId> cycle_in_axis_order(const Graph& side,
                                        const std::vector<EdgeId>& cyc) {
  std::vector<std::pair<int, EdgeId>> keyed;
  for (const EdgeId& id : cyc) keyed.emplace_back(side.edge_index(id), id);
  std::sort(keyed.begin(), keyed.end());
  std::vector<EdgeId> out;
  for (auto& [k, id] : keyed) out.push_back(id);
  return out;
}

DistinguishWitness make_witness(const Graph& side, bool in_first,
                                const std::vector<EdgeId>& cyc) {
  DistinguishWitness w;
  w.cycle_in_first = in_first;
  w.cycle = cycle_in_axis_order(side, cyc);
  w.unit_edge = w.cycle.back();
  w.point.coords = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(w.cycle.size()));
  w.point.coords[w.point.coords.size() - 1] = 1.0;
  return w;
}

}  // namespace

std::optional<DistinguishWitness> distinguish_witness(
    const Graph& g, const Graph& h, const std::vector<EdgeBijection>& candidates,
    const DistinguishOptions& opts) {
  if (g.edge_count() != h.edge_count())
    throw Error("distinguish_witness requires equal edge counts");
  if (cycle_isomorphic(g, h, opts.cycles)) return std::nullopt;

  CycleSet cg = enumerate_cycles(g, opts.cycles);
  CycleSet ch = enumerate_cycles(h, opts.cycles);
  auto shortest = [](const CycleSet& cs) {
    return cs.cycles.empty() ? std::optional<std::size_t>{}
                             : std::optional<std::size_t>{cs.cycles.front().size()};
  };
  std::optional<std::size_t> girth_g = shortest(cg), girth_h = shortest(ch);

  // Girth route: a cycle strictly shorter than every cycle of the other
  // graph maps to a forest under every bijection whatsoever.
  if (girth_g && (!girth_h || *girth_g < *girth_h)) {
    DistinguishWitness w = make_witness(g, true, cg.cycles.front());
    w.defeats_all_bijections = true;
    return w;
  }
  if (girth_h && (!girth_g || *girth_h < *girth_g)) {
    DistinguishWitness w = make_witness(h, false, ch.cycles.front());
    w.defeats_all_bijections = true;
    return w;
  }

  // Equal girths: look for one cycle whose image is a forest under every
  // candidate bijection. The auto family pairs edges by cycle signature
  // when the signature histograms match (a bijection breaking them cannot
  // be a cycle isomorphism), otherwise it is all e! bijections.
  std::vector<std::vector<EdgeId>> class_g, class_h;
  {
    auto sg = edge_cycle_signatures(g, cg);
    auto sh = edge_cycle_signatures(h, ch);
    std::map<std::vector<int>, std::vector<EdgeId>> by_g, by_h;
    for (const auto& [id, s] : sg) by_g[s].push_back(id);
    for (const auto& [id, s] : sh) by_h[s].push_back(id);
    bool match = by_g.size() == by_h.size();
    for (auto ig = by_g.begin(), ih = by_h.begin(); match && ig != by_g.end();
         ++ig, ++ih)
      match = ig->first == ih->first && ig->second.size() == ih->second.size();
    if (match) {
      for (const auto& [s, ids] : by_g) class_g.push_back(ids);
      for (const auto& [s, ids] : by_h) class_h.push_back(ids);
    } else {
      std::vector<EdgeId> a, b;
      for (const auto& [id, s] : sg) a.push_back(id);
      for (const auto& [id, s] : sh) b.push_back(id);
      class_g = {std::move(a)};
      class_h = {std::move(b)};
    }
  }

  auto image_is_forest = [](const Graph& other, const std::vector<EdgeId>& img) {
    return is_forest(keep_edges(other, img));
  };

  auto try_side = [&](const Graph& a, const Graph& b, const CycleSet& ca,
                      const std::vector<std::vector<EdgeId>>& ca_classes,
                      const std::vector<std::vector<EdgeId>>& cb_classes,
                      bool a_is_g,
                      std::size_t* checked) -> std::optional<DistinguishWitness> {
    for (const auto& cyc : ca.cycles) {
      bool defeated_all = true;
      std::size_t seen = 0;
      auto check = [&](const std::map<EdgeId, EdgeId>& fwd) {
        ++seen;
        std::vector<EdgeId> img;
        img.reserve(cyc.size());
        for (const EdgeId& id : cyc) img.push_back(fwd.at(id));
        if (!image_is_forest(b, img)) {
          defeated_all = false;
          return false;
        }
        return true;
      };

      if (!candidates.empty()) {
        for (const EdgeBijection& sigma : candidates) {
          std::map<EdgeId, EdgeId> fwd;
          if (a_is_g) {
            fwd = sigma.pairs;
          } else {
            for (const auto& [x, y] : sigma.pairs) fwd[y] = x;
          }
          if (!check(fwd)) break;
        }
        *checked = std::max(*checked, seen);
      } else {
        auto total = for_each_bijection(ca_classes, cb_classes,
                                        opts.candidate_cap, check);
        if (!total)
          throw CapExceeded("distinguish_witness: bijection family exceeds cap");
        *checked = std::max(*checked, *total);
      }
      if (defeated_all) {
        DistinguishWitness w = make_witness(a, a_is_g, cyc);
        w.candidates_checked = *checked;
        return w;
      }
    }
    return std::nullopt;
  };

  std::size_t checked = 0;
  if (auto w = try_side(g, h, cg, class_g, class_h, true, &checked)) return w;
  if (auto w = try_side(h, g, ch, class_h, class_g, false, &checked)) return w;
  throw Error(
      "distinguish_witness: no single cycle-indicator witness defeats the "
      "whole candidate family (equal girths); the graphs are still not "
      "cycle isomorphic");
}

Configuration zero_pad(const Configuration& p, int new_d) {
  if (new_d < p.d) throw Error("zero_pad cannot shrink the dimension");
  Configuration out;
  out.d = new_d;
  for (const auto& [v, pt] : p.points) {
    Eigen::VectorXd q = Eigen::VectorXd::Zero(new_d);
    q.head(pt.size()) = pt;
    out.points[v] = q;
  }
  return out;
}

}  // namespace miso
