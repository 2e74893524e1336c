#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "miso/measurement.hpp"
#include "miso/random.hpp"

using namespace miso;

namespace {

Graph triangle() { return parse_graph("a b\na c\nb c"); }

Configuration config2(std::initializer_list<std::pair<VertexId, std::pair<double, double>>> pts) {
  Configuration p;
  p.d = 2;
  for (const auto& [v, xy] : pts) {
    Eigen::VectorXd q(2);
    q << xy.first, xy.second;
    p.points[v] = q;
  }
  return p;
}

MeasurementPoint point(std::initializer_list<double> coords) {
  MeasurementPoint pt;
  pt.coords = Eigen::VectorXd(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) pt.coords[i++] = c;
  return pt;
}

}  // namespace

TEST_CASE("lengths_squared on the named examples") {
  Graph t = triangle();  // axes ab, ac, bc in file order
  Configuration p = config2({{"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}});
  MeasurementPoint y = lengths_squared(t, p, EdgeAxisMap::identity(t));
  CHECK(y.coords[0] == doctest::Approx(1.0));
  CHECK(y.coords[1] == doctest::Approx(1.0));
  CHECK(y.coords[2] == doctest::Approx(2.0));

  Configuration zero = config2({{"a", {0, 0}}, {"b", {0, 0}}, {"c", {0, 0}}});
  MeasurementPoint z = lengths_squared(t, zero, EdgeAxisMap::identity(t));
  CHECK(z.coords.maxCoeff() == 0.0);

  Graph e1 = parse_graph("a b");
  Configuration p1;
  p1.d = 1;
  p1.points["a"] = Eigen::VectorXd::Zero(1);
  p1.points["b"] = Eigen::VectorXd::Constant(1, 3.0);
  MeasurementPoint y1 = lengths_squared(e1, p1, EdgeAxisMap::identity(e1));
  CHECK(y1.coords[0] == doctest::Approx(9.0));
}

TEST_CASE("lengths_squared validates its inputs") {
  Graph t = triangle();
  Configuration missing = config2({{"a", {0, 0}}, {"b", {1, 0}}});
  CHECK_THROWS_AS(lengths_squared(t, missing, EdgeAxisMap::identity(t)), Error);

  EdgeAxisMap wrong = EdgeAxisMap::from_order({"e0", "e1"});
  Configuration p = config2({{"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}});
  CHECK_THROWS_AS(lengths_squared(t, p, wrong), Error);
}

TEST_CASE("sample_measurement_set is deterministic and nonnegative") {
  Graph t = triangle();
  auto a = sample_measurement_set(t, 2, 3, 7);
  auto b = sample_measurement_set(t, 2, 3, 7);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK((a[i].coords.array() == b[i].coords.array()).all());
  auto c = sample_measurement_set(t, 2, 3, 8);
  CHECK_FALSE((a[0].coords.array() == c[0].coords.array()).all());

  for (const auto& pt : a) CHECK(pt.coords.minCoeff() >= 0.0);
}

TEST_CASE("triangle samples satisfy the triangle inequality") {
  Graph t = triangle();
  for (const auto& pt : sample_measurement_set(t, 2, 50, 99)) {
    double l0 = std::sqrt(pt.coords[0]);
    double l1 = std::sqrt(pt.coords[1]);
    double l2 = std::sqrt(pt.coords[2]);
    CHECK(l0 <= l1 + l2 + 1e-12);
    CHECK(l1 <= l0 + l2 + 1e-12);
    CHECK(l2 <= l0 + l1 + 1e-12);
  }
}

TEST_CASE("realize the equilateral triangle") {
  Graph t = triangle();
  Realization r = realize(t, point({1, 1, 1}), EdgeAxisMap::identity(t), 2);
  REQUIRE(r.config.has_value());
  CHECK(r.best_residual <= 1e-8);
  // witness is congruent to a unit equilateral triangle
  auto d = [&](const char* u, const char* v) {
    return (r.config->points.at(u) - r.config->points.at(v)).norm();
  };
  CHECK(d("a", "b") == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(d("a", "c") == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(d("b", "c") == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("realize fails on a metric violation") {
  Graph t = triangle();
  Realization r = realize(t, point({9, 1, 1}), EdgeAxisMap::identity(t), 3);
  CHECK_FALSE(r.config.has_value());
  CHECK(r.best_residual > 1e-8);
}

TEST_CASE("any nonnegative target on a forest realizes in d=1") {
  Rng rng(314);
  for (int t = 0; t < 25; ++t) {
    std::uniform_int_distribution<int> vdist(2, 8);
    int v = vdist(rng);
    Graph g = random_connected_multigraph(v, v - 1, rng);
    std::uniform_real_distribution<double> ydist(0.0, 10.0);
    MeasurementPoint target;
    target.coords = Eigen::VectorXd(static_cast<Eigen::Index>(g.edge_count()));
    for (Eigen::Index i = 0; i < target.coords.size(); ++i)
      target.coords[i] = ydist(rng);
    Realization r = realize(g, target, EdgeAxisMap::identity(g), 1);
    REQUIRE(r.config.has_value());
    CHECK(r.best_residual <= 1e-8);
  }
}

TEST_CASE("forward/backward consistency of realize") {
  Rng rng(2718);
  int found = 0;
  for (int t = 0; t < 500; ++t) {
    std::uniform_int_distribution<int> vdist(3, 6);
    int v = vdist(rng);
    std::uniform_int_distribution<int> edist(v - 1, std::min(9, v + 3));
    Graph g = random_connected_multigraph(v, edist(rng), rng);
    int d = 1 + t % 3;
    Configuration p = random_configuration(g, d, 1.0, rng);
    EdgeAxisMap ax = EdgeAxisMap::identity(g);
    MeasurementPoint y = lengths_squared(g, p, ax);
    RealizeOptions opts;
    opts.seed = mix_seed(123, t);
    Realization r = realize(g, y, ax, d, opts);
    REQUIRE_MESSAGE(r.config.has_value(),
                    "trial " << t << " d=" << d << " residual "
                             << r.best_residual);
    CHECK(r.best_residual <= opts.tol);
    ++found;
  }
  CHECK(found == 500);
}

TEST_CASE("analytic gradient matches central differences") {
  Rng rng(161803);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::uniform_int_distribution<int> vdist(3, 5);
    int v = vdist(rng);
    std::uniform_int_distribution<int> edist(v - 1, v + 2);
    Graph g = random_connected_multigraph(v, edist(rng), rng);
    int d = 1 + t % 3;
    Configuration p = random_configuration(g, d, 1.0, rng);
    EdgeAxisMap ax = EdgeAxisMap::identity(g);
    MeasurementPoint target;
    target.coords = Eigen::VectorXd(static_cast<Eigen::Index>(g.edge_count()));
    std::uniform_real_distribution<double> ydist(0.0, 4.0);
    for (Eigen::Index i = 0; i < target.coords.size(); ++i)
      target.coords[i] = ydist(rng);

    Eigen::VectorXd grad = realization_gradient(g, p, ax, target);
    std::vector<VertexId> verts = g.vertices();
    const double h = 1e-6;
    Eigen::VectorXd fd(grad.size());
    for (std::size_t vi = 0; vi < verts.size(); ++vi)
      for (int k = 0; k < d; ++k) {
        Configuration plus = p, minus = p;
        plus.points[verts[vi]][k] += h;
        minus.points[verts[vi]][k] -= h;
        fd[static_cast<Eigen::Index>(vi) * d + k] =
            (realization_objective(g, plus, ax, target) -
             realization_objective(g, minus, ax, target)) /
            (2 * h);
      }
    double scale = std::max(1.0, grad.norm());
    double rel = (grad - fd).norm() / scale;
    worst = std::max(worst, rel);
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("cycle_realizable_exact") {
  CHECK(cycle_realizable_exact({1, 1, 1}, 2));
  for (int d : {1, 2, 3}) CHECK_FALSE(cycle_realizable_exact({0, 0, 1}, d));
  CHECK(cycle_realizable_exact({1, 1, 4}, 1));  // 1 + 1 - 2 = 0
  CHECK(cycle_realizable_exact({1, 1, 4}, 2));  // degenerate flat triangle
  CHECK_FALSE(cycle_realizable_exact({1, 1, 1}, 1));
  CHECK(cycle_realizable_exact({0, 0}, 1));
  CHECK_FALSE(cycle_realizable_exact({1, 4}, 1));
  CHECK(cycle_realizable_exact({4, 4}, 1));

  CHECK_THROWS_AS(cycle_realizable_exact({1}, 2), Error);
  CHECK_THROWS_AS(cycle_realizable_exact({1, -1}, 2), Error);
  CHECK_THROWS_AS(cycle_realizable_exact(std::vector<double>(31, 1.0), 1),
                  CapExceeded);
  CHECK(cycle_realizable_exact(std::vector<double>(31, 1.0), 2));
}

TEST_CASE("cycle_realizable_exact accepts sampled cycle targets") {
  for (int k : {3, 4, 5}) {
    Graph c = cycle_graph(k);
    for (int d : {1, 2}) {
      for (const auto& pt : sample_measurement_set(c, d, 20, 555 + k)) {
        std::vector<double> lens(pt.coords.data(),
                                 pt.coords.data() + pt.coords.size());
        CHECK(cycle_realizable_exact(lens, d));
      }
    }
  }
}

TEST_CASE("is_member on the named examples") {
  // forest with every coordinate 5.0
  Graph f = parse_graph("a b\nb c\nc d");
  MembershipVerdict fv =
      is_member(f, point({5, 5, 5}), EdgeAxisMap::identity(f), 2);
  CHECK(fv.kind == Verdict::Realizable);
  CHECK(fv.method == kRuleForestGreedy);
  CHECK(fv.residual <= 1e-8);
  CHECK(verify_membership_verdict(f, point({5, 5, 5}), EdgeAxisMap::identity(f),
                                  2, fv, 1e-8));

  // triangle with all-but-one zero
  Graph t = triangle();
  MembershipVerdict tv =
      is_member(t, point({0, 0, 1}), EdgeAxisMap::identity(t), 2);
  CHECK(tv.kind == Verdict::Infeasible);
  CHECK(tv.method == kRulePolygonInequality);
  CHECK(tv.certificate_cycle.size() == 3);
  CHECK(verify_membership_verdict(t, point({0, 0, 1}), EdgeAxisMap::identity(t),
                                  2, tv, 1e-8));

  // unit square
  Graph c4 = cycle_graph(4);
  MembershipVerdict sq =
      is_member(c4, point({1, 1, 1, 1}), EdgeAxisMap::identity(c4), 2);
  CHECK(sq.kind == Verdict::Realizable);
  CHECK(sq.residual <= 1e-8);
  CHECK(verify_membership_verdict(c4, point({1, 1, 1, 1}),
                                  EdgeAxisMap::identity(c4), 2, sq, 1e-8));
}

TEST_CASE("is_member decides single cycles exactly in d=1") {
  Graph t = triangle();
  EdgeAxisMap ax = EdgeAxisMap::identity(t);

  MembershipVerdict flat = is_member(t, point({1, 1, 4}), ax, 1);
  CHECK(flat.kind == Verdict::Realizable);
  CHECK(flat.method == kRuleSignedSum1d);
  CHECK(flat.residual <= 1e-8);
  CHECK(verify_membership_verdict(t, point({1, 1, 4}), ax, 1, flat, 1e-8));

  MembershipVerdict no = is_member(t, point({1, 1, 1}), ax, 1);
  CHECK(no.kind == Verdict::Infeasible);
  CHECK(no.method == kRuleSignedSum1d);
  CHECK(verify_membership_verdict(t, point({1, 1, 1}), ax, 1, no, 1e-8));

  // the same target in d=2 realizes
  MembershipVerdict yes = is_member(t, point({1, 1, 1}), ax, 2);
  CHECK(yes.kind == Verdict::Realizable);
}

TEST_CASE("is_member is sound on random realizable and violating targets") {
  Rng rng(434343);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<int> vdist(3, 6);
    int v = vdist(rng);
    std::uniform_int_distribution<int> edist(v - 1, v + 2);
    Graph g = random_connected_multigraph(v, edist(rng), rng);
    EdgeAxisMap ax = EdgeAxisMap::identity(g);
    int d = 1 + t % 3;

    Configuration p = random_configuration(g, d, 1.0, rng);
    MeasurementPoint y = lengths_squared(g, p, ax);
    MemberOptions opts;
    opts.realize.seed = mix_seed(77, t);
    MembershipVerdict mv = is_member(g, y, ax, d, opts);
    CHECK(mv.kind == Verdict::Realizable);
    CHECK(verify_membership_verdict(g, y, ax, d, mv, 1e-8));
  }
}

TEST_CASE("is_member stays honest when the solver cannot reach the target") {
  // four pairwise-unit distances need three dimensions
  Graph k = complete_graph(4);
  EdgeAxisMap ax = EdgeAxisMap::identity(k);
  MeasurementPoint ones;
  ones.coords = Eigen::VectorXd::Ones(6);

  MembershipVerdict flat = is_member(k, ones, ax, 2);
  CHECK(flat.kind == Verdict::Unknown);  // never Infeasible without a rule
  CHECK(flat.residual > 1e-8);

  MembershipVerdict tetra = is_member(k, ones, ax, 3);
  CHECK(tetra.kind == Verdict::Realizable);
  CHECK(tetra.residual <= 1e-8);
  CHECK(verify_membership_verdict(k, ones, ax, 3, tetra, 1e-8));
}

TEST_CASE("project_point") {
  EdgeAxisMap ax = EdgeAxisMap::from_order({"e0", "e1", "e2"});
  ProjectedPoint pr = project_point(point({1, 2, 3}), ax, {"e0", "e1"});
  CHECK(pr.point.coords.size() == 2);
  CHECK(pr.point.coords[0] == 1.0);
  CHECK(pr.point.coords[1] == 2.0);
  CHECK(pr.axes.axis_to_edge == std::vector<EdgeId>{"e0", "e1"});

  ProjectedPoint all = project_point(point({1, 2, 3}), ax, {"e2", "e0", "e1"});
  CHECK((all.point.coords.array() ==
         Eigen::Vector3d(1, 2, 3).array()).all());  // original axis order

  CHECK_THROWS_AS(project_point(point({1, 2, 3}), ax, {"zz"}), Error);
  CHECK_THROWS_AS(project_point(point({1, 2, 3}), ax, {"e0", "e0"}), Error);
}

TEST_CASE("projection of K4 measurements matches direct sub-measurements") {
  Graph k = complete_graph(4);
  EdgeAxisMap ax = EdgeAxisMap::identity(k);
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    Configuration p = random_configuration(k, 2, 1.0, rng);
    MeasurementPoint y = lengths_squared(k, p, ax);
    // a triangle inside K4
    std::vector<EdgeId> tri;
    for (const Edge& e : k.edges())
      if (!e.touches("d")) tri.push_back(e.id);
    ProjectedPoint pr = project_point(y, ax, tri);
    Graph sub = keep_edges(k, tri);
    MeasurementPoint direct = lengths_squared(sub, p, pr.axes);
    CHECK((pr.point.coords - direct.coords).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("reflect_across_cut_pair on the worked example") {
  Graph c4 = parse_graph("x a\na y\ny b\nb x");
  TwoSeparation sep;
  sep.s = {"e0", "e1"};
  sep.t = {"e2", "e3"};
  sep.x = "x";
  sep.y = "y";

  Configuration p = config2({{"x", {0, 0}}, {"y", {2, 0}}, {"a", {0, 1}},
                             {"b", {1, -5}}});
  Configuration q = reflect_across_cut_pair(c4, sep, p);
  CHECK(q.points.at("a")[0] == doctest::Approx(2.0));
  CHECK(q.points.at("a")[1] == doctest::Approx(1.0));
  // off-side vertices stay put
  CHECK((q.points.at("b") - p.points.at("b")).norm() == 0.0);
  CHECK((q.points.at("x") - p.points.at("x")).norm() == 0.0);

  // |y - a'| = |x - a| and |x - a'| = |y - a|
  CHECK((q.points.at("a") - p.points.at("y")).norm() ==
        doctest::Approx((p.points.at("a") - p.points.at("x")).norm()));
  CHECK((q.points.at("a") - p.points.at("x")).norm() ==
        doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("reflection with coincident cut pair is the identity") {
  Graph c4 = parse_graph("x a\na y\ny b\nb x");
  TwoSeparation sep;
  sep.s = {"e0", "e1"};
  sep.t = {"e2", "e3"};
  sep.x = "x";
  sep.y = "y";
  Configuration p = config2({{"x", {1, 1}}, {"y", {1, 1}}, {"a", {0, 1}},
                             {"b", {2, 3}}});
  Configuration q = reflect_across_cut_pair(c4, sep, p);
  for (const auto& [v, pt] : p.points)
    CHECK((q.points.at(v) - pt).norm() == 0.0);
}

TEST_CASE("reflection preserves measurements across reversal") {
  Rng rng(31459);
  int tested = 0;
  for (int t = 0; tested < 1000; ++t) {
    std::uniform_int_distribution<int> vdist(4, 7);
    int v = vdist(rng);
    std::uniform_int_distribution<int> edist(v, std::min(10, v + 4));
    Graph g = random_connected_multigraph(v, edist(rng), rng);
    auto sep = random_separation(g, rng);
    if (!sep) continue;
    ++tested;
    int d = 1 + t % 3;
    Configuration p = random_configuration(g, d, 1.5, rng);
    Configuration q = reflect_across_cut_pair(g, *sep, p);
    Graph r = reversal(g, *sep);
    EdgeAxisMap ax = EdgeAxisMap::identity(g);
    MeasurementPoint before = lengths_squared(g, p, ax);
    MeasurementPoint after = lengths_squared(r, q, ax);
    CHECK((before.coords - after.coords).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("distinguish_witness: triangle vs path") {
  Graph t = triangle();
  Graph p3 = parse_graph("a b\nb c\nc d");
  auto w = distinguish_witness(t, p3);
  REQUIRE(w.has_value());
  CHECK(w->cycle_in_first);
  CHECK(w->cycle.size() == 3);
  CHECK(w->defeats_all_bijections);
  CHECK(w->point.coords[2] == 1.0);
  CHECK(w->point.coords[0] == 0.0);

  // both sides re-verified through exact certificates, in every dimension
  Graph proj_t = keep_edges(t, w->cycle);
  EdgeAxisMap ax_t = EdgeAxisMap::from_order(w->cycle);
  for (int d : {1, 2, 3}) {
    MembershipVerdict va = is_member(proj_t, w->point, ax_t, d);
    CHECK(va.kind == Verdict::Infeasible);
    CHECK(verify_membership_verdict(proj_t, w->point, ax_t, d, va, 1e-8));

    MembershipVerdict vb =
        is_member(p3, w->point, EdgeAxisMap::identity(p3), d);
    CHECK(vb.kind == Verdict::Realizable);
    CHECK(vb.method == kRuleForestGreedy);
    CHECK(vb.residual <= 1e-8);
  }
}

TEST_CASE("distinguish_witness absent for 2-isomorphic pairs") {
  Rng rng(8675309);
  int tested = 0;
  for (int t = 0; tested < 10; ++t) {
    Graph g = random_connected_multigraph(5, 7, rng);
    auto sep = random_separation(g, rng);
    if (!sep) continue;
    ++tested;
    Graph h = relabel_randomly(reversal(g, *sep), rng);
    CHECK_FALSE(distinguish_witness(g, h).has_value());
  }
}

TEST_CASE("distinguish_witness: K4 vs 6-cycle under all 720 bijections") {
  Graph k = complete_graph(4);
  Graph c6 = cycle_graph(6);

  // explicit candidate family: all 6! bijections
  std::vector<EdgeBijection> all;
  std::vector<EdgeId> ke, ce;
  for (const Edge& e : k.edges()) ke.push_back(e.id);
  for (const Edge& e : c6.edges()) ce.push_back(e.id);
  std::sort(ce.begin(), ce.end());
  do {
    EdgeBijection b;
    for (std::size_t i = 0; i < ke.size(); ++i) b.pairs[ke[i]] = ce[i];
    all.push_back(b);
  } while (std::next_permutation(ce.begin(), ce.end()));
  REQUIRE(all.size() == 720);

  auto w = distinguish_witness(k, c6, all);
  REQUIRE(w.has_value());
  CHECK(w->cycle_in_first);
  CHECK(w->cycle.size() == 3);  // some triangle of K4
  // the girth argument subsumes the explicit family
  CHECK((w->defeats_all_bijections || w->candidates_checked == 720));

  // every bijection maps that triangle to three edges of C6: a forest
  for (const EdgeBijection& b : all) {
    std::vector<EdgeId> img;
    for (const EdgeId& id : w->cycle) img.push_back(b.pairs.at(id));
    CHECK(is_forest(keep_edges(c6, img)));
  }

  // auto mode takes the girth route on the same pair
  auto w2 = distinguish_witness(k, c6);
  REQUIRE(w2.has_value());
  CHECK(w2->defeats_all_bijections);
}

TEST_CASE("distinguish_witness needs equal edge counts") {
  CHECK_THROWS_AS(distinguish_witness(triangle(), parse_graph("a b")), Error);
}

TEST_CASE("zero_pad embeds exactly") {
  Graph t = triangle();
  Rng rng(271);
  for (int d : {1, 2, 3}) {
    Configuration p = random_configuration(t, d, 1.0, rng);
    Configuration q = zero_pad(p, d + 1);
    EdgeAxisMap ax = EdgeAxisMap::identity(t);
    MeasurementPoint a = lengths_squared(t, p, ax);
    MeasurementPoint b = lengths_squared(t, q, ax);
    CHECK((a.coords.array() == b.coords.array()).all());
  }
  Configuration p = random_configuration(t, 2, 1.0, rng);
  CHECK_THROWS_AS(zero_pad(p, 1), Error);
}
