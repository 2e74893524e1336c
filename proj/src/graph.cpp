#include "miso/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "indexed.hpp"

namespace miso {

using detail::Indexed;
using detail::index_graph;

void Graph::add_vertex(const VertexId& v) {
  if (v.empty()) throw Error("empty vertex id");
  incidence_.try_emplace(v);
}

void Graph::add_edge(EdgeId id, VertexId u, VertexId v) {
  if (id.empty()) throw Error("empty edge id");
  if (u == v) throw Error("self-loop forbidden at vertex '" + u + "'");
  if (has_edge(id)) throw Error("duplicate edge id '" + id + "'");
  add_vertex(u);
  add_vertex(v);
  int idx = static_cast<int>(edges_.size());
  edge_index_.emplace(id, idx);
  incidence_[u].push_back(idx);
  incidence_[v].push_back(idx);
  edges_.push_back(Edge{std::move(id), std::move(u), std::move(v)});
}

EdgeId Graph::add_edge(VertexId u, VertexId v) {
  std::size_t k = edges_.size();
  EdgeId id = "e" + std::to_string(k);
  while (has_edge(id)) id = "e" + std::to_string(++k);
  add_edge(id, std::move(u), std::move(v));
  return id;
}

std::vector<VertexId> Graph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(incidence_.size());
  for (const auto& [v, _] : incidence_) out.push_back(v);
  return out;
}

int Graph::edge_index(const EdgeId& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) throw Error("unknown edge id '" + id + "'");
  return it->second;
}

const std::vector<int>& Graph::incident_edges(const VertexId& v) const {
  auto it = incidence_.find(v);
  if (it == incidence_.end()) throw Error("unknown vertex id '" + v + "'");
  return it->second;
}

int Graph::degree(const VertexId& v) const {
  return static_cast<int>(incident_edges(v).size());
}

Graph parse_graph(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;

    std::string id;
    if (tokens.front().size() > 1 && tokens.front().back() == ':') {
      id = tokens.front().substr(0, tokens.front().size() - 1);
      tokens.erase(tokens.begin());
    }
    if (tokens.size() != 2)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'u v' or '<id>: u v'");
    if (tokens[0] == tokens[1])
      throw ParseError("line " + std::to_string(lineno) + ": self-loop at '" +
                       tokens[0] + "'");
    if (id.empty()) id = "e" + std::to_string(g.edge_count());
    if (g.has_edge(id))
      throw ParseError("line " + std::to_string(lineno) +
                       ": duplicate edge id '" + id + "'");
    g.add_edge(id, tokens[0], tokens[1]);
  }
  return g;
}

std::string graph_to_text(const Graph& g) {
  std::ostringstream out;
  for (const Edge& e : g.edges())
    out << e.id << ": " << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::vector<std::vector<VertexId>> connected_components(const Graph& g) {
  Indexed ix = index_graph(g);
  int n = static_cast<int>(ix.verts.size());
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [ei, w] : ix.inc[u])
        if (comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
  }
  std::vector<std::vector<VertexId>> out(ncomp);
  for (int v = 0; v < n; ++v) out[comp[v]].push_back(ix.verts[v]);
  return out;
}

bool is_connected(const Graph& g) {
  return connected_components(g).size() <= 1;
}

std::set<VertexId> cut_vertices(const Graph& g) {
  Indexed ix = index_graph(g);
  int n = static_cast<int>(ix.verts.size());
  std::vector<int> disc(n, -1), low(n, 0);
  std::set<VertexId> cuts;
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int u, int parent_edge) {
    disc[u] = low[u] = timer++;
    int children = 0;
    for (auto [ei, w] : ix.inc[u]) {
      if (ei == parent_edge) continue;  // parallel edges count as back edges
      if (disc[w] < 0) {
        ++children;
        dfs(w, ei);
        low[u] = std::min(low[u], low[w]);
        if (parent_edge >= 0 && low[w] >= disc[u]) cuts.insert(ix.verts[u]);
      } else {
        low[u] = std::min(low[u], disc[w]);
      }
    }
    if (parent_edge < 0 && children > 1) cuts.insert(ix.verts[u]);
  };
  for (int s = 0; s < n; ++s)
    if (disc[s] < 0) dfs(s, -1);
  return cuts;
}

BlockDecomposition block_decomposition(const Graph& g) {
  Indexed ix = index_graph(g);
  int n = static_cast<int>(ix.verts.size());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> edge_stack;
  std::vector<std::vector<int>> blocks;  // edge index lists
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int u, int parent_edge) {
    disc[u] = low[u] = timer++;
    for (auto [ei, w] : ix.inc[u]) {
      if (ei == parent_edge) continue;
      if (disc[w] < 0) {
        edge_stack.push_back(ei);
        dfs(w, ei);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          // u closes a block; pop everything discovered below it
          std::vector<int> block;
          while (!edge_stack.empty()) {
            int top = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(top);
            if (top == ei) break;
          }
          blocks.push_back(std::move(block));
        }
      } else if (disc[w] < disc[u]) {
        edge_stack.push_back(ei);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  for (int s = 0; s < n; ++s)
    if (disc[s] < 0) dfs(s, -1);

  BlockDecomposition out;
  std::map<VertexId, int> block_count;
  for (auto& block : blocks) {
    std::sort(block.begin(), block.end());
    Graph b;
    std::set<VertexId> seen;
    for (int ei : block) {
      const Edge& e = g.edge_at(ei);
      b.add_edge(e.id, e.u, e.v);
      seen.insert(e.u);
      seen.insert(e.v);
    }
    for (const VertexId& v : seen) ++block_count[v];
    out.blocks.push_back(std::move(b));
  }
  for (const auto& [v, cnt] : block_count)
    if (cnt >= 2) out.cut_vertices.insert(v);
  return out;
}

bool is_forest(const Graph& g) {
  Indexed ix = index_graph(g);
  std::vector<int> parent(ix.verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : ix.edges) {
    int ru = find(u), rv = find(v);
    if (ru == rv) return false;
    parent[ru] = rv;
  }
  return true;
}

Graph delete_edges(const Graph& g, const std::vector<EdgeId>& remove) {
  std::set<int> drop;
  for (const EdgeId& id : remove) drop.insert(g.edge_index(id));
  Graph out;
  for (const VertexId& v : g.vertices()) out.add_vertex(v);
  for (int i = 0; i < static_cast<int>(g.edge_count()); ++i)
    if (!drop.count(i)) {
      const Edge& e = g.edge_at(i);
      out.add_edge(e.id, e.u, e.v);
    }
  return out;
}

Graph keep_edges(const Graph& g, const std::vector<EdgeId>& keep) {
  std::set<int> kept;
  for (const EdgeId& id : keep) kept.insert(g.edge_index(id));
  Graph out;
  for (const VertexId& v : g.vertices()) out.add_vertex(v);
  for (int i : kept) {
    const Edge& e = g.edge_at(i);
    out.add_edge(e.id, e.u, e.v);
  }
  return out;
}

namespace {

using Multiplicity = std::vector<std::vector<int>>;

Multiplicity multiplicity_matrix(const Indexed& ix) {
  int n = static_cast<int>(ix.verts.size());
  Multiplicity m(n, std::vector<int>(n, 0));
  for (auto [u, v] : ix.edges) {
    ++m[u][v];
    ++m[v][u];
  }
  return m;
}

// Iterated color refinement run jointly over both graphs so the resulting
// color ids are comparable across them. Colors are canonical: round keys are
// ranked by sorting, starting from degrees.
using ColorKey = std::pair<int, std::vector<int>>;

std::pair<std::vector<int>, std::vector<int>> joint_refine(const Indexed& A,
                                                           const Indexed& B) {
  auto degrees = [](const Indexed& ix) {
    std::vector<int> c;
    c.reserve(ix.inc.size());
    for (const auto& nb : ix.inc) c.push_back(static_cast<int>(nb.size()));
    return c;
  };
  std::vector<int> ca = degrees(A), cb = degrees(B);

  auto distinct = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::set<int> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return s.size();
  };

  std::size_t classes = distinct(ca, cb);
  for (std::size_t round = 0; round < A.verts.size() + B.verts.size(); ++round) {
    auto keys_of = [](const Indexed& ix, const std::vector<int>& c) {
      std::vector<ColorKey> keys(ix.inc.size());
      for (std::size_t v = 0; v < ix.inc.size(); ++v) {
        std::vector<int> nb;  // one entry per incident edge, so parallels count
        for (auto [ei, w] : ix.inc[v]) nb.push_back(c[w]);
        std::sort(nb.begin(), nb.end());
        keys[v] = {c[v], std::move(nb)};
      }
      return keys;
    };
    std::vector<ColorKey> ka = keys_of(A, ca), kb = keys_of(B, cb);
    std::vector<ColorKey> all = ka;
    all.insert(all.end(), kb.begin(), kb.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    auto rank = [&](const ColorKey& k) {
      return static_cast<int>(
          std::lower_bound(all.begin(), all.end(), k) - all.begin());
    };
    for (std::size_t v = 0; v < ka.size(); ++v) ca[v] = rank(ka[v]);
    for (std::size_t v = 0; v < kb.size(); ++v) cb[v] = rank(kb[v]);
    std::size_t now = distinct(ca, cb);
    if (now == classes) break;
    classes = now;
  }
  return {ca, cb};
}

}  // namespace

std::optional<VertexBijection> graph_isomorphic(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
    return std::nullopt;
  Indexed G = index_graph(g), H = index_graph(h);
  int n = static_cast<int>(G.verts.size());
  auto [cg, ch] = joint_refine(G, H);

  auto histogram = [](const std::vector<int>& c) {
    std::map<int, int> hist;
    for (int x : c) ++hist[x];
    return hist;
  };
  if (histogram(cg) != histogram(ch)) return std::nullopt;

  Multiplicity mg = multiplicity_matrix(G), mh = multiplicity_matrix(H);
  std::vector<int> map_gh(n, -1), used_h(n, 0);

  // Most-constrained-first vertex order: prefer vertices adjacent to already
  // mapped ones, then higher degree, then lexicographic id.
  std::function<bool(int)> extend = [&](int depth) -> bool {
    if (depth == n) return true;
    int best = -1;
    std::pair<int, int> best_key{-1, -1};
    for (int x = 0; x < n; ++x) {
      if (map_gh[x] >= 0) continue;
      int mapped_nb = 0;
      for (auto [ei, w] : G.inc[x])
        if (map_gh[w] >= 0) ++mapped_nb;
      std::pair<int, int> key{mapped_nb, static_cast<int>(G.inc[x].size())};
      if (best < 0 || key > best_key) {
        best = x;
        best_key = key;
      }
    }
    int x = best;
    for (int y = 0; y < n; ++y) {
      if (used_h[y] || ch[y] != cg[x]) continue;
      if (H.inc[y].size() != G.inc[x].size()) continue;
      bool ok = true;
      for (int z = 0; z < n && ok; ++z)
        if (map_gh[z] >= 0 && mg[x][z] != mh[y][map_gh[z]]) ok = false;
      if (!ok) continue;
      map_gh[x] = y;
      used_h[y] = 1;
      if (extend(depth + 1)) return true;
      map_gh[x] = -1;
      used_h[y] = 0;
    }
    return false;
  };

  if (!extend(0)) return std::nullopt;
  VertexBijection rho;
  for (int x = 0; x < n; ++x) rho.pairs[G.verts[x]] = H.verts[map_gh[x]];
  return rho;
}

bool verify_graph_isomorphism(const Graph& g, const Graph& h,
                              const VertexBijection& rho) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
    return false;
  std::set<VertexId> image;
  for (const auto& [x, y] : rho.pairs) {
    if (!g.has_vertex(x) || !h.has_vertex(y)) return false;
    image.insert(y);
  }
  if (rho.pairs.size() != g.vertex_count() || image.size() != h.vertex_count())
    return false;

  auto pair_counts = [](const Graph& gr,
                        const std::map<VertexId, VertexId>* relabel) {
    std::map<std::pair<VertexId, VertexId>, int> counts;
    for (const Edge& e : gr.edges()) {
      VertexId a = relabel ? relabel->at(e.u) : e.u;
      VertexId b = relabel ? relabel->at(e.v) : e.v;
      if (b < a) std::swap(a, b);
      ++counts[{a, b}];
    }
    return counts;
  };
  return pair_counts(g, &rho.pairs) == pair_counts(h, nullptr);
}

std::string canonical_certificate(const Graph& g) {
  Indexed ix = index_graph(g);
  int n = static_cast<int>(ix.verts.size());
  if (n == 0) return "0:";
  std::vector<int> colors = joint_refine(ix, ix).first;
  Multiplicity mult = multiplicity_matrix(ix);

  // Cells ordered by canonical color; the candidate labelings are all
  // products of within-cell permutations.
  std::map<int, std::vector<int>> cells;
  for (int v = 0; v < n; ++v) cells[colors[v]].push_back(v);
  std::vector<std::vector<int>> perm_cells;
  double total = 1;
  for (auto& [c, members] : cells) {
    std::sort(members.begin(), members.end());
    total *= std::tgamma(static_cast<double>(members.size()) + 1.0);
    perm_cells.push_back(members);
  }
  if (total > 2e7)
    throw CapExceeded("canonical_certificate: refinement left " +
                      std::to_string(static_cast<long long>(total)) +
                      " labelings to try");

  std::vector<int> labeling;
  std::vector<int> best_code;
  bool have_best = false;
  auto consider = [&]() {
    std::vector<int> code;
    code.reserve(n * (n - 1) / 2);
    bool worse = false;
    std::size_t k = 0;
    for (int i = 0; i < n && !worse; ++i)
      for (int j = i + 1; j < n; ++j) {
        int entry = mult[labeling[i]][labeling[j]];
        if (have_best) {
          if (entry > best_code[k]) {
            worse = true;
            break;
          }
          if (entry < best_code[k]) have_best = false;  // strictly better prefix
        }
        code.push_back(entry);
        ++k;
      }
    if (!worse && !have_best) {
      best_code = std::move(code);
      have_best = true;
    }
  };

  // Odometer over per-cell permutations.
  while (true) {
    labeling.clear();
    for (const auto& cell : perm_cells)
      labeling.insert(labeling.end(), cell.begin(), cell.end());
    consider();
    int ci = static_cast<int>(perm_cells.size()) - 1;
    while (ci >= 0 &&
           !std::next_permutation(perm_cells[ci].begin(), perm_cells[ci].end()))
      --ci;
    if (ci < 0) break;
    for (std::size_t j = ci + 1; j < perm_cells.size(); ++j)
      std::sort(perm_cells[j].begin(), perm_cells[j].end());
  }

  std::ostringstream out;
  out << n << ':';
  for (int x : best_code) out << x << ',';
  return out.str();
}

std::vector<std::string> block_certificate(const Graph& g) {
  std::vector<std::string> certs;
  for (const Graph& b : block_decomposition(g).blocks)
    certs.push_back(canonical_certificate(b));
  std::sort(certs.begin(), certs.end());
  return certs;
}

}  // namespace miso
