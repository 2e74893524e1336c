#include "miso/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace miso {

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges())
    edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}});
  return Json{{"vertices", g.vertices()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  Graph g;
  try {
    for (const auto& v : j.at("vertices")) g.add_vertex(v.get<VertexId>());
    for (const auto& e : j.at("edges"))
      g.add_edge(e.at("id").get<EdgeId>(), e.at("u").get<VertexId>(),
                 e.at("v").get<VertexId>());
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("bad graph JSON: ") + ex.what());
  }
  return g;
}

Json vertex_bijection_to_json(const VertexBijection& rho) {
  return Json{{"rho", rho.pairs}};
}

Json edge_bijection_to_json(const EdgeBijection& sigma) {
  return Json{{"sigma", sigma.pairs}};
}

Json reversal_ops_to_json(const std::vector<TwoSeparation>& ops) {
  Json out = Json::array();
  for (const TwoSeparation& sep : ops)
    out.push_back({{"op", "reversal"},
                   {"s", sep.s},
                   {"cut_pair", Json::array({sep.x, sep.y})}});
  return out;
}

Json split_op_to_json(const SplitSpec& spec) {
  return Json{{"op", "split"},
              {"cut_vertex", spec.cut_vertex},
              {"side", spec.side}};
}

Graph replay_operations(const Graph& g, const Json& ops) {
  Graph cur = g;
  try {
    for (const auto& op : ops) {
      std::string kind = op.at("op").get<std::string>();
      if (kind == "reversal") {
        TwoSeparation sep;
        sep.s = op.at("s").get<std::vector<EdgeId>>();
        std::set<EdgeId> inside(sep.s.begin(), sep.s.end());
        for (const Edge& e : cur.edges())
          if (!inside.count(e.id)) sep.t.push_back(e.id);
        std::sort(sep.t.begin(), sep.t.end());
        sep.x = op.at("cut_pair").at(0).get<VertexId>();
        sep.y = op.at("cut_pair").at(1).get<VertexId>();
        cur = reversal(cur, sep);
      } else if (kind == "split") {
        SplitSpec spec;
        spec.cut_vertex = op.at("cut_vertex").get<VertexId>();
        spec.side = op.at("side").get<std::vector<EdgeId>>();
        cur = split(cur, spec);
      } else {
        throw ParseError("unknown operation '" + kind + "'");
      }
    }
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("bad operation JSON: ") + ex.what());
  }
  return cur;
}

Json measurement_point_to_json(const MeasurementPoint& pt,
                               const EdgeAxisMap& ax) {
  if (pt.coords.size() != static_cast<Eigen::Index>(ax.size()))
    throw Error("measurement point has wrong dimension");
  Json coords = Json::array();
  for (Eigen::Index i = 0; i < pt.coords.size(); ++i)
    coords.push_back(pt.coords[i]);
  return Json{{"axes", ax.axis_to_edge}, {"coords", coords}};
}

std::pair<MeasurementPoint, EdgeAxisMap> measurement_point_from_json(
    const Json& j) {
  try {
    auto axes = j.at("axes").get<std::vector<EdgeId>>();
    auto coords = j.at("coords").get<std::vector<double>>();
    if (axes.size() != coords.size())
      throw ParseError("axes and coords lengths differ");
    MeasurementPoint pt;
    pt.coords = Eigen::Map<Eigen::VectorXd>(coords.data(),
                                            static_cast<Eigen::Index>(coords.size()));
    for (Eigen::Index i = 0; i < pt.coords.size(); ++i)
      if (!(pt.coords[i] >= 0.0)) throw ParseError("negative squared length");
    return {std::move(pt), EdgeAxisMap::from_order(std::move(axes))};
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("bad measurement point JSON: ") + ex.what());
  }
}

Json configuration_to_json(const Configuration& p) {
  Json points = Json::object();
  for (const auto& [v, pt] : p.points) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < pt.size(); ++i) arr.push_back(pt[i]);
    points[v] = arr;
  }
  return Json{{"d", p.d}, {"points", points}};
}

Configuration configuration_from_json(const Json& j) {
  try {
    Configuration p;
    p.d = j.at("d").get<int>();
    for (const auto& [v, arr] : j.at("points").items()) {
      auto coords = arr.get<std::vector<double>>();
      p.points[v] = Eigen::Map<Eigen::VectorXd>(
          coords.data(), static_cast<Eigen::Index>(coords.size()));
    }
    return p;
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("bad configuration JSON: ") + ex.what());
  }
}

Json verdict_to_json(const MembershipVerdict& v) {
  Json out;
  switch (v.kind) {
    case Verdict::Realizable:
      out["kind"] = "realizable";
      break;
    case Verdict::Infeasible:
      out["kind"] = "infeasible";
      break;
    case Verdict::Unknown:
      out["kind"] = "unknown";
      break;
  }
  if (!v.method.empty()) out["method"] = v.method;
  if (v.witness) out["witness"] = configuration_to_json(*v.witness);
  if (!v.certificate_cycle.empty())
    out["certificate"] = {{"rule", v.method}, {"cycle", v.certificate_cycle}};
  if (std::isfinite(v.residual)) out["residual"] = v.residual;
  return out;
}

Json distinguish_witness_to_json(const DistinguishWitness& w) {
  Json coords = Json::array();
  for (Eigen::Index i = 0; i < w.point.coords.size(); ++i)
    coords.push_back(w.point.coords[i]);
  return Json{{"cycle_in_first", w.cycle_in_first},
              {"cycle", w.cycle},
              {"unit_edge", w.unit_edge},
              {"point", Json{{"axes", w.cycle}, {"coords", coords}}},
              {"defeats_all_bijections", w.defeats_all_bijections},
              {"candidates_checked", w.candidates_checked}};
}

Json search_result_to_json(const SearchResult& r) {
  Json out;
  switch (r.status) {
    case SearchStatus::Found:
      out["status"] = "found";
      out["witness"] = reversal_ops_to_json(r.witness);
      break;
    case SearchStatus::Exhausted:
      out["status"] = "exhausted";
      break;
    case SearchStatus::Unknown:
      out["status"] = "unknown";
      break;
  }
  out["orbit_size"] = r.orbit_size;
  out["depth_reached"] = r.depth_reached;
  return out;
}

namespace {

Json failures_to_json(const std::vector<std::string>& failures) {
  Json out = Json::array();
  for (const auto& f : failures) out.push_back(f);
  return out;
}

}  // namespace

Json whitney_report_to_json(const WhitneyCrosscheckReport& r) {
  Json cases = Json::array();
  for (const PairRecord& rec : r.random_pair_records)
    cases.push_back({{"pair_id", rec.pair_id},
                     {"iso", rec.graph_iso},
                     {"1iso", rec.one_iso},
                     {"cycleiso", rec.cycle_iso},
                     {"2iso_search", rec.search_status},
                     {"agree", rec.agree()}});
  return Json{{"suite", "whitney-crosscheck"},
              {"max_edges", r.max_edges},
              {"graph_count", r.graph_count},
              {"pairs_checked", r.pairs_checked},
              {"equivalent_pairs", r.equivalent_pairs},
              {"direct_search_runs", r.direct_search_runs},
              {"random_pairs", r.random_pairs},
              {"random_pair_cases", cases},
              {"disagreements", r.disagreements},
              {"unknowns", r.unknowns},
              {"failures", failures_to_json(r.failures)},
              {"agree", r.passed()}};
}

Json main_theorem_report_to_json(const MainTheoremReport& r) {
  return Json{{"suite", "main-theorem"},
              {"forward_pairs", r.forward_pairs},
              {"reverse_pairs", r.reverse_pairs},
              {"dims", r.dims},
              {"samples_per_pair", r.samples_per_pair},
              {"points_realized", r.points_realized},
              {"realize_failures", r.realize_failures},
              {"max_forward_residual", r.max_forward_residual},
              {"max_reflection_error", r.max_reflection_error},
              {"witnesses_verified", r.witnesses_verified},
              {"witness_failures", r.witness_failures},
              {"failures", failures_to_json(r.failures)},
              {"agree", r.passed()}};
}

Json nesting_report_to_json(const NestingReport& r) {
  return Json{{"suite", "nesting"},
              {"graphs", r.graphs},
              {"samples", r.samples},
              {"stab_samples", r.stab_samples},
              {"d", r.d},
              {"zero_pad_ok", r.zero_pad_ok},
              {"zero_pad_fail", r.zero_pad_fail},
              {"stabilization_ok", r.stabilization_ok},
              {"stabilization_fail", r.stabilization_fail},
              {"max_stabilization_residual", r.max_stabilization_residual},
              {"failures", failures_to_json(r.failures)},
              {"agree", r.passed()}};
}

Json three_connected_report_to_json(const ThreeConnectedReport& r) {
  return Json{{"suite", "three-connected"},
              {"graphs", r.graphs},
              {"pairs", r.pairs},
              {"mismatches", r.mismatches},
              {"failures", failures_to_json(r.failures)},
              {"agree", r.passed()}};
}

}  // namespace miso
