#pragma once

#include <json.hpp>

#include "miso/experiments.hpp"
#include "miso/graph.hpp"
#include "miso/measurement.hpp"
#include "miso/whitney.hpp"

namespace miso {

using Json = nlohmann::json;

// graphs: {"vertices":[...], "edges":[{"id","u","v"}, ...]}
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json vertex_bijection_to_json(const VertexBijection& rho);    // {"rho": {...}}
Json edge_bijection_to_json(const EdgeBijection& sigma);      // {"sigma": {...}}

// operation sequences: [{"op":"reversal","s":[...],"cut_pair":[x,y]}, ...]
// and {"op":"split","cut_vertex":...,"side":[...]}
Json reversal_ops_to_json(const std::vector<TwoSeparation>& ops);
Json split_op_to_json(const SplitSpec& spec);
Graph replay_operations(const Graph& g, const Json& ops);

// measurement points: {"axes":[...],"coords":[...]}
Json measurement_point_to_json(const MeasurementPoint& pt,
                               const EdgeAxisMap& ax);
std::pair<MeasurementPoint, EdgeAxisMap> measurement_point_from_json(
    const Json& j);

Json configuration_to_json(const Configuration& p);
Configuration configuration_from_json(const Json& j);

Json verdict_to_json(const MembershipVerdict& v);
Json distinguish_witness_to_json(const DistinguishWitness& w);
Json search_result_to_json(const SearchResult& r);

Json whitney_report_to_json(const WhitneyCrosscheckReport& r);
Json main_theorem_report_to_json(const MainTheoremReport& r);
Json nesting_report_to_json(const NestingReport& r);
Json three_connected_report_to_json(const ThreeConnectedReport& r);

}  // namespace miso
