#include "miso/random.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "miso/measurement.hpp"

namespace miso {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::vector<VertexId> numbered_vertices(int v) {
  std::vector<VertexId> out;
  for (int i = 0; i < v; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

}  // namespace

Graph random_connected_multigraph(int v, int e, Rng& rng) {
  if (v < 1 || e < v - 1)
    throw Error("random_connected_multigraph needs v >= 1, e >= v-1");
  std::vector<VertexId> names = numbered_vertices(v);
  Graph g;
  g.add_vertex(names[0]);
  for (int i = 1; i < v; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    g.add_edge(names[pick(rng)], names[i]);
  }
  std::uniform_int_distribution<int> pick(0, v - 1);
  while (static_cast<int>(g.edge_count()) < e) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    g.add_edge(names[a], names[b]);
  }
  return g;
}

Graph random_connected_simple_graph(int v, double extra_edge_prob, Rng& rng) {
  if (v < 1) throw Error("need at least one vertex");
  std::vector<VertexId> names = numbered_vertices(v);
  Graph g;
  g.add_vertex(names[0]);
  std::set<std::pair<int, int>> present;
  for (int i = 1; i < v; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    int j = pick(rng);
    g.add_edge(names[j], names[i]);
    present.insert({j, i});
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      if (!present.count({i, j}) && coin(rng) < extra_edge_prob)
        g.add_edge(names[i], names[j]);
  return g;
}

namespace {

bool three_connected(const Graph& g) {
  int n = static_cast<int>(g.vertex_count());
  if (n < 4) return false;
  std::vector<VertexId> verts = g.vertices();
  for (const VertexId& v : verts)
    if (g.degree(v) < 3) return false;
  // removal of any one or two vertices must leave the rest connected
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<EdgeId> drop;
      for (const Edge& e : g.edges())
        if (e.touches(verts[i]) || e.touches(verts[j])) drop.push_back(e.id);
      Graph rest = delete_edges(g, drop);
      std::size_t comps = 0;
      for (const auto& comp : connected_components(rest)) {
        bool removed = comp.size() == 1 &&
                       (comp[0] == verts[i] || comp[0] == verts[j]);
        if (!removed) ++comps;
      }
      if (comps > 1) return false;
    }
  return true;
}

}  // namespace

Graph random_three_connected_graph(int v, Rng& rng) {
  if (v < 4) throw Error("3-connected graphs need at least 4 vertices");
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    Graph g = random_connected_simple_graph(v, 0.55, rng);
    if (three_connected(g)) return g;
  }
  throw Error("failed to sample a 3-connected graph");
}

Graph relabel_randomly(const Graph& g, Rng& rng) {
  std::vector<VertexId> verts = g.vertices();
  std::vector<int> vperm(verts.size());
  std::iota(vperm.begin(), vperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::map<VertexId, VertexId> vmap;
  for (std::size_t i = 0; i < verts.size(); ++i)
    vmap[verts[i]] = "w" + std::to_string(vperm[i]);

  std::vector<int> eperm(g.edge_count());
  std::iota(eperm.begin(), eperm.end(), 0);
  std::shuffle(eperm.begin(), eperm.end(), rng);

  Graph out;
  for (const auto& [a, b] : vmap) out.add_vertex(b);
  for (std::size_t k = 0; k < eperm.size(); ++k) {
    const Edge& e = g.edge_at(eperm[k]);
    out.add_edge("f" + std::to_string(k), vmap[e.u], vmap[e.v]);
  }
  return out;
}

std::optional<TwoSeparation> random_separation(const Graph& g, Rng& rng) {
  std::vector<TwoSeparation> seps = enumerate_two_separations(g);
  if (seps.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, seps.size() - 1);
  return seps[pick(rng)];
}

Graph random_reversal_sequence(const Graph& g, int k, Rng& rng,
                               std::vector<TwoSeparation>* ops) {
  Graph cur = g;
  for (int i = 0; i < k; ++i) {
    auto sep = random_separation(cur, rng);
    if (!sep) break;
    if (ops) ops->push_back(*sep);
    cur = reversal(cur, *sep);
  }
  return cur;
}

std::optional<SplitSpec> random_split(const Graph& g, Rng& rng) {
  std::set<VertexId> cuts = cut_vertices(g);
  if (cuts.empty()) return std::nullopt;
  std::vector<VertexId> order(cuts.begin(), cuts.end());
  std::uniform_int_distribution<std::size_t> pick(0, order.size() - 1);
  const VertexId& cv = order[pick(rng)];

  Graph rest;
  for (const VertexId& w : g.vertices())
    if (w != cv) rest.add_vertex(w);
  for (const Edge& e : g.edges())
    if (!e.touches(cv)) rest.add_edge(e.id, e.u, e.v);
  auto comps = connected_components(rest);

  // components of g - cv that cv actually attaches to
  std::vector<std::set<VertexId>> attached;
  for (const auto& comp : comps) {
    std::set<VertexId> members(comp.begin(), comp.end());
    bool touches_cv = false;
    for (int ei : g.incident_edges(cv))
      if (members.count(g.edge_at(ei).other(cv))) touches_cv = true;
    if (touches_cv) attached.push_back(std::move(members));
  }
  if (attached.size() < 2) return std::nullopt;

  std::uniform_int_distribution<std::size_t> side_pick(0, attached.size() - 1);
  const std::set<VertexId>& side_verts = attached[side_pick(rng)];
  SplitSpec spec;
  spec.cut_vertex = cv;
  for (const Edge& e : g.edges())
    if (side_verts.count(e.u) || side_verts.count(e.v))
      spec.side.push_back(e.id);
  return spec;
}

Configuration random_configuration(const Graph& g, int d, double spread,
                                   Rng& rng) {
  if (d < 1) throw Error("dimension must be at least 1");
  Configuration p;
  p.d = d;
  std::normal_distribution<double> normal(0.0, spread);
  for (const VertexId& v : g.vertices()) {
    Eigen::VectorXd pt(d);
    for (int i = 0; i < d; ++i) pt[i] = normal(rng);
    p.points[v] = pt;
  }
  return p;
}

Graph complete_graph(int n) {
  Graph g;
  std::vector<VertexId> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, 'a' + i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(names[i], names[j]);
  return g;
}

Graph cycle_graph(int k) {
  Graph g;
  for (int i = 0; i < k; ++i)
    g.add_edge("v" + std::to_string(i), "v" + std::to_string((i + 1) % k));
  return g;
}

Graph path_graph(int k) {
  Graph g;
  for (int i = 0; i < k; ++i)
    g.add_edge("v" + std::to_string(i), "v" + std::to_string(i + 1));
  return g;
}

}  // namespace miso
