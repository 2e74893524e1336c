#include <doctest.h>

#include "miso/json_io.hpp"
#include "miso/random.hpp"

using namespace miso;

TEST_CASE("graph JSON round trip and schema") {
  Graph g = parse_graph("a b\nb c\nc a\na d");
  g.add_vertex("lonely");
  Json j = graph_to_json(g);
  CHECK(j.at("vertices").size() == 5);
  CHECK(j.at("edges").size() == 4);
  CHECK(j.at("edges")[0].at("id") == "e0");
  CHECK(j.at("edges")[0].at("u") == "a");
  Graph back = graph_from_json(j);
  CHECK(back == g);

  CHECK_THROWS_AS(graph_from_json(Json{{"vertices", {"a"}}}), ParseError);
}

TEST_CASE("bijection JSON shapes") {
  VertexBijection rho;
  rho.pairs = {{"a", "x"}, {"b", "y"}};
  CHECK(vertex_bijection_to_json(rho).at("rho").at("a") == "x");

  EdgeBijection sigma;
  sigma.pairs = {{"e0", "f1"}};
  CHECK(edge_bijection_to_json(sigma).at("sigma").at("e0") == "f1");
}

TEST_CASE("reversal ops serialize and replay") {
  Rng rng(55);
  int tested = 0;
  for (int t = 0; tested < 10; ++t) {
    Graph g = random_connected_multigraph(5, 7, rng);
    auto sep = random_separation(g, rng);
    if (!sep) continue;
    ++tested;
    Graph h = reversal(g, *sep);
    Json ops = reversal_ops_to_json({*sep});
    CHECK(ops[0].at("op") == "reversal");
    CHECK(ops[0].at("cut_pair").size() == 2);
    Graph replayed = replay_operations(g, ops);
    CHECK(replayed == h);
  }
}

TEST_CASE("split ops replay") {
  Graph bow = parse_graph("a b\nb m\nm a\nc d\nd m\nm c");
  SplitSpec spec{"m", {"e0", "e1", "e2"}};
  Json ops = Json::array({split_op_to_json(spec)});
  Graph replayed = replay_operations(bow, ops);
  CHECK(replayed == split(bow, spec));
  CHECK(connected_components(replayed).size() == 2);
}

TEST_CASE("measurement point JSON") {
  MeasurementPoint pt;
  pt.coords = Eigen::Vector3d(1.5, 0.0, 2.0);
  EdgeAxisMap ax = EdgeAxisMap::from_order({"e0", "e1", "e2"});
  Json j = measurement_point_to_json(pt, ax);
  CHECK(j.at("axes") == Json::array({"e0", "e1", "e2"}));
  auto [back, ax2] = measurement_point_from_json(j);
  CHECK((back.coords.array() == pt.coords.array()).all());
  CHECK(ax2.axis("e2") == 2);

  Json bad = j;
  bad["coords"][0] = -1.0;
  CHECK_THROWS_AS(measurement_point_from_json(bad), ParseError);
}

TEST_CASE("verdict JSON carries kind, certificate, and residual") {
  Graph t = parse_graph("a b\na c\nb c");
  MeasurementPoint target;
  target.coords = Eigen::Vector3d(0, 0, 1);
  MembershipVerdict v =
      is_member(t, target, EdgeAxisMap::identity(t), 2);
  Json j = verdict_to_json(v);
  CHECK(j.at("kind") == "infeasible");
  CHECK(j.at("certificate").at("rule") == kRulePolygonInequality);
  CHECK(j.at("certificate").at("cycle").size() == 3);

  target.coords = Eigen::Vector3d(1, 1, 1);
  MembershipVerdict r = is_member(t, target, EdgeAxisMap::identity(t), 2);
  Json jr = verdict_to_json(r);
  CHECK(jr.at("kind") == "realizable");
  CHECK(jr.at("residual").get<double>() <= 1e-8);
  Configuration witness = configuration_from_json(jr.at("witness"));
  CHECK(witness.points.size() == 3);
}

TEST_CASE("search result JSON embeds a replayable witness") {
  Rng rng(77);
  int tested = 0;
  for (int t = 0; tested < 5; ++t) {
    Graph g = random_connected_multigraph(5, 7, rng);
    auto sep = random_separation(g, rng);
    if (!sep) continue;
    ++tested;
    Graph h = relabel_randomly(reversal(g, *sep), rng);
    SearchResult res = two_isomorphic_search(g, h);
    REQUIRE(res.status == SearchStatus::Found);
    Json j = search_result_to_json(res);
    CHECK(j.at("status") == "found");
    Graph replayed = replay_operations(g, j.at("witness"));
    CHECK(one_isomorphic(replayed, h));
  }
}

TEST_CASE("configuration JSON round trip") {
  Graph t = parse_graph("a b\na c\nb c");
  Rng rng(3);
  Configuration p = random_configuration(t, 3, 1.0, rng);
  Configuration q = configuration_from_json(configuration_to_json(p));
  CHECK(q.d == 3);
  for (const auto& [v, pt] : p.points)
    CHECK((q.points.at(v) - pt).norm() == 0.0);
}
