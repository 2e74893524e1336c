#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "miso/experiments.hpp"
#include "miso/random.hpp"
#include "miso/whitney.hpp"

using namespace miso;

namespace {

// Independent enumeration: all multisets of vertex pairs over e+1 labeled
// vertices, filtered to connected, deduplicated by canonical certificate.
std::set<std::string> connected_multigraph_certs_oracle(int e) {
  int v = e + 1;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) pairs.emplace_back(i, j);

  std::set<std::string> certs;
  std::vector<int> choice;  // nondecreasing pair indices = multiset
  std::function<void(int, int)> build = [&](int remaining, int min_idx) {
    if (remaining == 0) {
      Graph g;
      for (int idx : choice)
        g.add_edge("v" + std::to_string(pairs[idx].first),
                   "v" + std::to_string(pairs[idx].second));
      if (is_connected(g)) certs.insert(canonical_certificate(g));
      return;
    }
    for (int idx = min_idx; idx < static_cast<int>(pairs.size()); ++idx) {
      choice.push_back(idx);
      build(remaining - 1, idx);
      choice.pop_back();
    }
  };
  build(e, 0);
  return certs;
}

}  // namespace

TEST_CASE("all_connected_multigraphs matches the brute-force oracle") {
  std::vector<Graph> graphs = all_connected_multigraphs(5);
  std::map<std::size_t, std::set<std::string>> got;
  for (const Graph& g : graphs) {
    CHECK(is_connected(g));
    CHECK(g.edge_count() >= 1);
    CHECK(got[g.edge_count()].insert(canonical_certificate(g)).second);
  }
  for (int e = 1; e <= 5; ++e) {
    CAPTURE(e);
    CHECK(got[e] == connected_multigraph_certs_oracle(e));
  }
  // frozen counts from the oracle: 1, 2, 5, 12, 33 connected loopless
  // multigraphs with 1..5 edges
  CHECK(got[1].size() == 1);
  CHECK(got[2].size() == 2);
  CHECK(got[3].size() == 5);
  CHECK(got[4].size() == 12);
  CHECK(got[5].size() == 33);
}

TEST_CASE("random_split produces valid specs that keep blocks") {
  Rng rng(17);
  int tested = 0;
  for (int t = 0; tested < 25; ++t) {
    std::uniform_int_distribution<int> vdist(3, 7);
    int v = vdist(rng);
    std::uniform_int_distribution<int> edist(v - 1, v + 3);
    Graph g = random_connected_multigraph(v, edist(rng), rng);
    auto spec = random_split(g, rng);
    if (!spec) {
      CHECK(cut_vertices(g).empty());
      continue;
    }
    ++tested;
    Graph after = split(g, *spec);  // split validates the spec
    CHECK(after.vertex_count() == g.vertex_count() + 1);
    CHECK(block_certificate(after) == block_certificate(g));
    CHECK(one_isomorphic(g, after));
  }
}

TEST_CASE("whitney crosscheck mini run agrees") {
  WhitneyCrosscheckReport r = run_whitney_crosscheck(4, 20, 99);
  CHECK(r.passed());
  CHECK(r.graph_count == 1 + 2 + 5 + 12);
  CHECK(r.random_pairs == 20);
  CHECK(r.disagreements == 0);
  CHECK(r.unknowns == 0);
}

TEST_CASE("main theorem mini run agrees") {
  MainTheoremReport r = run_main_theorem(5, 6, {1, 2}, 3, 4242);
  CHECK(r.passed());
  CHECK(r.points_realized == 5u * 2u * 3u);
  CHECK(r.witnesses_verified == 6u);
  CHECK(r.max_reflection_error <= 1e-9);
}

TEST_CASE("nesting mini run agrees") {
  NestingReport r = run_nesting(3, 10, 2, 2, 7);
  CHECK(r.passed());
  CHECK(r.zero_pad_ok == 30u);
  CHECK(r.zero_pad_fail == 0u);
}

TEST_CASE("three-connected mini run agrees") {
  ThreeConnectedReport r =
      run_three_connected({complete_graph(4), complete_graph(5)}, 2, 5);
  CHECK(r.passed());
  CHECK(r.graphs == 4u);
  CHECK(r.pairs == 4u + 6u);  // relabeled positives plus cross pairs
}
