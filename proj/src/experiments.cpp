#include "miso/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "miso/cycles.hpp"
#include "miso/random.hpp"
#include "miso/whitney.hpp"

namespace miso {

std::vector<Graph> all_connected_multigraphs(int max_edges) {
  if (max_edges < 1) return {};
  std::vector<Graph> out;
  std::map<std::string, Graph> level;
  {
    Graph k2;
    k2.add_edge("v0", "v1");
    level.emplace(canonical_certificate(k2), std::move(k2));
  }
  for (int e = 1; e <= max_edges; ++e) {
    for (const auto& [cert, g] : level) out.push_back(g);
    if (e == max_edges) break;
    std::map<std::string, Graph> next;
    for (const auto& [cert, g] : level) {
      std::vector<VertexId> verts = g.vertices();
      auto offer = [&](Graph&& g2) {
        std::string c = canonical_certificate(g2);
        next.try_emplace(std::move(c), std::move(g2));
      };
      // new edge between existing vertices (parallels included)
      for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
          Graph g2 = g;
          g2.add_edge(verts[i], verts[j]);
          offer(std::move(g2));
        }
      // new leaf vertex
      VertexId fresh = "v" + std::to_string(verts.size());
      for (const VertexId& u : verts) {
        Graph g2 = g;
        g2.add_edge(u, fresh);
        offer(std::move(g2));
      }
    }
    level = std::move(next);
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    out += p;
    out += '|';
  }
  return out;
}

// Invariant of the cycle structure preserved by every cycle isomorphism:
// edge count, cycle-length histogram, and the histogram of per-edge
// signatures.
std::string cycle_invariant(const Graph& g, const CycleSet& cs) {
  std::ostringstream out;
  out << g.edge_count() << ';';
  std::map<std::size_t, int> lengths;
  for (const auto& c : cs.cycles) ++lengths[c.size()];
  for (const auto& [len, n] : lengths) out << len << 'x' << n << ',';
  out << ';';
  std::map<std::vector<int>, int> sighist;
  for (const auto& [id, s] : edge_cycle_signatures(g, cs)) ++sighist[s];
  for (const auto& [s, n] : sighist) {
    for (int x : s) out << x << '.';
    out << 'x' << n << ',';
  }
  return out.str();
}

bool replay_search_witness(const Graph& g, const Graph& h,
                           const std::vector<TwoSeparation>& ops) {
  Graph cur = g;
  for (const TwoSeparation& sep : ops) cur = reversal(cur, sep);
  return one_isomorphic(cur, h);
}

}  // namespace

WhitneyCrosscheckReport run_whitney_crosscheck(int max_edges, int random_pairs,
                                               std::uint64_t seed) {
  WhitneyCrosscheckReport rep;
  rep.max_edges = max_edges;

  std::vector<Graph> graphs = all_connected_multigraphs(max_edges);
  rep.graph_count = graphs.size();

  SearchOptions full;
  full.max_depth = -1;
  full.orbit_cap = 200'000;

  struct Info {
    std::string block_key;
    std::string invariant;
    std::set<std::string> orbit_blocks;
    bool orbit_complete = false;
  };
  std::vector<Info> info(graphs.size());
  std::map<std::size_t, std::vector<std::size_t>> by_e;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i];
    by_e[g.edge_count()].push_back(i);
    Info& in = info[i];
    in.block_key = join(block_certificate(g));
    in.invariant = cycle_invariant(g, enumerate_cycles(g));
    OrbitResult orbit = reversal_orbit(g, full);
    in.orbit_complete = orbit.complete;
    if (!orbit.complete) {
      ++rep.unknowns;
      rep.failures.push_back("orbit cap hit on graph " + std::to_string(i));
    }
    for (const Graph& node : orbit.graphs)
      in.orbit_blocks.insert(join(block_certificate(node)));
  }

  for (const auto& [e, members] : by_e) {
    std::size_t direct_negative_budget = 30;
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a; b < members.size(); ++b) {
        std::size_t i = members[a], j = members[b];
        ++rep.pairs_checked;

        bool orbit_ij = info[i].orbit_blocks.count(info[j].block_key) > 0;
        bool orbit_ji = info[j].orbit_blocks.count(info[i].block_key) > 0;
        if (orbit_ij != orbit_ji) {
          ++rep.disagreements;
          rep.failures.push_back("orbit relation asymmetric on pair (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ")");
          continue;
        }

        bool cyc;
        if (info[i].invariant != info[j].invariant) {
          cyc = false;  // sound: the invariant is preserved by any sigma
        } else {
          auto sigma = cycle_isomorphic(graphs[i], graphs[j]);
          cyc = sigma.has_value();
          if (sigma && !verify_cycle_isomorphism(graphs[i], graphs[j], *sigma)) {
            rep.failures.push_back("cycle witness failed verification on (" +
                                   std::to_string(i) + "," +
                                   std::to_string(j) + ")");
          }
        }

        if (cyc != orbit_ij) {
          ++rep.disagreements;
          rep.failures.push_back(
              "routes disagree on pair (" + std::to_string(i) + "," +
              std::to_string(j) + "): cycle=" + (cyc ? "yes" : "no") +
              " orbit=" + (orbit_ij ? "yes" : "no"));
        }
        if (cyc) ++rep.equivalent_pairs;

        // run the search end to end on every equivalent pair and a budget
        // of inequivalent ones
        bool run_direct = cyc || (direct_negative_budget > 0 && a != b);
        if (!cyc && run_direct) --direct_negative_budget;
        if (run_direct) {
          ++rep.direct_search_runs;
          SearchResult sr = two_isomorphic_search(graphs[i], graphs[j], full);
          if (sr.status == SearchStatus::Unknown) {
            ++rep.unknowns;
            rep.failures.push_back("search unknown on pair (" +
                                   std::to_string(i) + "," +
                                   std::to_string(j) + ")");
          } else if ((sr.status == SearchStatus::Found) != cyc) {
            ++rep.disagreements;
            rep.failures.push_back("direct search disagrees on pair (" +
                                   std::to_string(i) + "," +
                                   std::to_string(j) + ")");
          } else if (sr.status == SearchStatus::Found &&
                     !replay_search_witness(graphs[i], graphs[j], sr.witness)) {
            rep.failures.push_back("search witness failed replay on (" +
                                   std::to_string(i) + "," +
                                   std::to_string(j) + ")");
          }
        }
      }
  }

  // random larger pairs, both deciders run directly
  for (int k = 0; k < random_pairs; ++k) {
    Rng rng(mix_seed(seed, 1'000'000 + static_cast<std::uint64_t>(k)));
    std::uniform_int_distribution<int> vdist(4, 8);
    int v = vdist(rng);
    std::uniform_int_distribution<int> edist(std::max(4, v - 1), 10);
    int e = edist(rng);
    Graph g = random_connected_multigraph(v, e, rng);
    Graph h;
    if (k % 2 == 0) {
      h = random_reversal_sequence(g, 1 + k % 3, rng);
      if (k % 4 == 0)  // occasionally split as well
        if (auto spec = random_split(h, rng)) h = split(h, *spec);
      h = relabel_randomly(h, rng);
    } else {
      int v2 = vdist(rng);
      h = random_connected_multigraph(std::min(v2, e + 1), e, rng);
    }
    ++rep.random_pairs;
    ++rep.pairs_checked;

    auto sigma = two_isomorphic(g, h);
    SearchResult sr = two_isomorphic_search(g, h, full);
    ++rep.direct_search_runs;

    PairRecord rec;
    {
      char id[16];
      std::snprintf(id, sizeof id, "r%03d", k);
      rec.pair_id = id;
    }
    rec.graph_iso = graph_isomorphic(g, h).has_value();
    rec.one_iso = one_isomorphic(g, h);
    rec.cycle_iso = sigma.has_value();
    rec.search_status = sr.status == SearchStatus::Found      ? "found"
                        : sr.status == SearchStatus::Exhausted ? "exhausted"
                                                               : "unknown";
    rep.random_pair_records.push_back(rec);

    if (sr.status == SearchStatus::Unknown) {
      ++rep.unknowns;
      rep.failures.push_back("search unknown on random pair " + rec.pair_id);
      continue;
    }
    if (!rec.agree()) {
      ++rep.disagreements;
      rep.failures.push_back("routes disagree on random pair " + rec.pair_id);
      continue;
    }
    if (rec.cycle_iso) {
      ++rep.equivalent_pairs;
      if (!verify_cycle_isomorphism(g, h, *sigma))
        rep.failures.push_back("cycle witness failed on random pair " +
                               rec.pair_id);
      if (!replay_search_witness(g, h, sr.witness))
        rep.failures.push_back("search witness failed on random pair " +
                               rec.pair_id);
    }
    // the equivalences only get coarser along the chain
    if (rec.graph_iso && !rec.one_iso)
      rep.failures.push_back("isomorphic but not 1-isomorphic: " + rec.pair_id);
    if (rec.one_iso && !rec.cycle_iso)
      rep.failures.push_back("1-isomorphic but not 2-isomorphic: " +
                             rec.pair_id);
    if (sr.status == SearchStatus::Found && sr.witness.empty() && !rec.one_iso)
      rep.failures.push_back("found with empty witness but not 1-isomorphic: " +
                             rec.pair_id);
  }
  return rep;
}

MainTheoremReport run_main_theorem(int forward_pairs, int reverse_pairs,
                                   const std::vector<int>& dims,
                                   int samples_per_pair, std::uint64_t seed) {
  MainTheoremReport rep;
  rep.forward_pairs = forward_pairs;
  rep.reverse_pairs = reverse_pairs;
  rep.dims = dims;
  rep.samples_per_pair = samples_per_pair;

  for (int pair = 0; pair < forward_pairs; ++pair) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(pair)));
    std::uniform_int_distribution<int> vdist(4, 6);
    int v = vdist(rng);
    std::uniform_int_distribution<int> edist(v, std::min(v + 3, 10));
    int e = edist(rng);
    Graph g = random_connected_multigraph(v, e, rng);
    std::vector<TwoSeparation> ops;
    Graph pre = random_reversal_sequence(g, 1 + pair % 3, rng, &ops);
    Graph h = pre;
    if (pair % 3 == 0)  // splits keep the measurement set too
      if (auto spec = random_split(h, rng)) h = split(h, *spec);
    h = relabel_randomly(h, rng);

    auto sigma = two_isomorphic(g, h);
    if (!sigma) {
      ++rep.realize_failures;
      rep.failures.push_back("constructed pair " + std::to_string(pair) +
                             " not recognized as 2-isomorphic");
      continue;
    }

    EdgeAxisMap ax_g = EdgeAxisMap::identity(g);
    EdgeAxisMap ax_pre = EdgeAxisMap::identity(pre);
    EdgeAxisMap ax_h = EdgeAxisMap::identity(h);

    for (int d : dims) {
      // reflection identity along the known reversal sequence
      Configuration p = random_configuration(g, d, 1.0, rng);
      Configuration q = p;
      Graph cur = g;
      for (const TwoSeparation& op : ops) {
        q = reflect_across_cut_pair(cur, op, q);
        cur = reversal(cur, op);
      }
      MeasurementPoint yg = lengths_squared(g, p, ax_g);
      MeasurementPoint yh = lengths_squared(pre, q, ax_pre);
      double err = (yg.coords - yh.coords).cwiseAbs().maxCoeff();
      rep.max_reflection_error = std::max(rep.max_reflection_error, err);
      if (err > rep.reflection_tol)
        rep.failures.push_back("reflection identity off by " +
                               std::to_string(err) + " on pair " +
                               std::to_string(pair));

      // sampled points of g realize on h under sigma
      std::uint64_t sample_seed =
          mix_seed(seed, 10'000 + 10 * static_cast<std::uint64_t>(pair) + d);
      auto samples = sample_measurement_set(g, d, samples_per_pair, sample_seed);
      for (std::size_t s = 0; s < samples.size(); ++s) {
        MeasurementPoint target;
        target.coords = Eigen::VectorXd::Zero(samples[s].coords.size());
        for (const Edge& ge : g.edges())
          target.coords[ax_h.axis(sigma->pairs.at(ge.id))] =
              samples[s].coords[ax_g.axis(ge.id)];
        RealizeOptions ro;
        ro.seed = mix_seed(sample_seed, s);
        Realization r = realize(h, target, ax_h, d, ro);
        if (r.config && r.best_residual <= rep.forward_residual_tol) {
          ++rep.points_realized;
          rep.max_forward_residual =
              std::max(rep.max_forward_residual, r.best_residual);
        } else {
          ++rep.realize_failures;
          rep.failures.push_back(
              "realization failed on pair " + std::to_string(pair) + " d=" +
              std::to_string(d) + " sample " + std::to_string(s) +
              " residual " + std::to_string(r.best_residual));
        }
      }
    }
  }

  // reverse direction: girth-separated non-equivalent pairs
  for (int k = 0; k < reverse_pairs; ++k) {
    Rng rng(mix_seed(seed, 5'000'000 + static_cast<std::uint64_t>(k)));
    Graph g, h;
    switch (k % 3) {
      case 0: {  // cyclic graph vs tree with equal edge count
        std::uniform_int_distribution<int> vdist(3, 6);
        int v = vdist(rng);
        std::uniform_int_distribution<int> edist(v, v + 2);
        int e = edist(rng);
        g = random_connected_multigraph(v, e, rng);
        h = relabel_randomly(random_connected_multigraph(e + 1, e, rng), rng);
        break;
      }
      case 1: {  // complete graph vs long cycle, equal edge count
        g = relabel_randomly(complete_graph(4), rng);
        h = relabel_randomly(cycle_graph(6), rng);
        break;
      }
      default: {  // digon girth 2 vs girth >= 3
        Graph withdigon = random_connected_multigraph(4, 5, rng);
        withdigon.add_edge(withdigon.edge_at(0).u, withdigon.edge_at(0).v);
        g = relabel_randomly(withdigon, rng);
        h = relabel_randomly(cycle_graph(static_cast<int>(g.edge_count())), rng);
        break;
      }
    }

    auto w = distinguish_witness(g, h);
    if (!w || !w->defeats_all_bijections) {
      ++rep.witness_failures;
      rep.failures.push_back("no universal witness on reverse pair " +
                             std::to_string(k));
      continue;
    }
    const Graph& a = w->cycle_in_first ? g : h;
    const Graph& b = w->cycle_in_first ? h : g;

    bool ok = true;
    Graph proj_a = keep_edges(a, w->cycle);
    EdgeAxisMap ax_a = EdgeAxisMap::from_order(w->cycle);
    for (int d : dims) {
      MembershipVerdict va = is_member(proj_a, w->point, ax_a, d);
      if (va.kind != Verdict::Infeasible ||
          !verify_membership_verdict(proj_a, w->point, ax_a, d, va, 1e-8)) {
        ok = false;
        rep.failures.push_back("cycle side not exactly infeasible on pair " +
                               std::to_string(k) + " d=" + std::to_string(d));
        break;
      }

      // sample bijections: the image must be an exactly realizable forest
      std::vector<EdgeId> b_ids;
      for (const Edge& be : b.edges()) b_ids.push_back(be.id);
      for (int trial = 0; trial < 10 && ok; ++trial) {
        std::vector<EdgeId> shuffled = b_ids;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<EdgeId> image(w->cycle.size());
        for (std::size_t c = 0; c < w->cycle.size(); ++c)
          image[c] = shuffled[c];
        Graph proj_b = keep_edges(b, image);
        EdgeAxisMap ax_b = EdgeAxisMap::from_order(image);
        MembershipVerdict vb = is_member(proj_b, w->point, ax_b, d);
        if (vb.kind != Verdict::Realizable || vb.method != kRuleForestGreedy ||
            vb.residual > 1e-8 ||
            !verify_membership_verdict(proj_b, w->point, ax_b, d, vb, 1e-8)) {
          ok = false;
          rep.failures.push_back("forest side not exactly realizable on pair " +
                                 std::to_string(k) + " d=" + std::to_string(d));
        }
      }
      if (!ok) break;
    }
    if (ok)
      ++rep.witnesses_verified;
    else
      ++rep.witness_failures;
  }
  return rep;
}

NestingReport run_nesting(int graphs, int samples, int stab_samples, int d,
                          std::uint64_t seed) {
  NestingReport rep;
  rep.graphs = graphs;
  rep.samples = samples;
  rep.stab_samples = stab_samples;
  rep.d = d;

  for (int gi = 0; gi < graphs; ++gi) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(gi)));
    std::uniform_int_distribution<int> vdist(3, 6);
    int v = vdist(rng);
    std::uniform_int_distribution<int> edist(v - 1, std::min(v + 2, 8));
    int e = edist(rng);
    Graph g = random_connected_multigraph(v, e, rng);
    EdgeAxisMap ax = EdgeAxisMap::identity(g);

    for (int s = 0; s < samples; ++s) {
      Configuration p = random_configuration(g, d, 1.0, rng);
      MeasurementPoint y = lengths_squared(g, p, ax);
      Configuration q = zero_pad(p, d + 1);
      MeasurementPoint y2 = lengths_squared(g, q, ax);
      if ((y.coords.array() == y2.coords.array()).all()) {
        ++rep.zero_pad_ok;
      } else {
        ++rep.zero_pad_fail;
        rep.failures.push_back("zero-pad witness not exact on graph " +
                               std::to_string(gi));
      }
    }

    int nverts = static_cast<int>(g.vertex_count());
    if (nverts < 2) continue;
    int dlow = nverts - 1, dhigh = nverts;
    for (int s = 0; s < stab_samples; ++s) {
      for (auto [dfrom, dto] : {std::pair{dlow, dhigh}, std::pair{dhigh, dlow}}) {
        Configuration p = random_configuration(g, dfrom, 1.0, rng);
        MeasurementPoint y = lengths_squared(g, p, ax);
        RealizeOptions ro;
        ro.seed = mix_seed(seed, 40'000 + 100 * gi + 2 * s + (dfrom < dto));
        Realization r = realize(g, y, ax, dto, ro);
        if (r.config && r.best_residual <= 1e-8) {
          ++rep.stabilization_ok;
          rep.max_stabilization_residual =
              std::max(rep.max_stabilization_residual, r.best_residual);
        } else {
          ++rep.stabilization_fail;
          rep.failures.push_back(
              "stabilization realize failed on graph " + std::to_string(gi) +
              " d " + std::to_string(dfrom) + "->" + std::to_string(dto) +
              " residual " + std::to_string(r.best_residual));
        }
      }
    }
  }
  return rep;
}

ThreeConnectedReport run_three_connected(const std::vector<Graph>& base,
                                         int random_graphs, std::uint64_t seed) {
  ThreeConnectedReport rep;
  std::vector<Graph> pool = base;
  for (int k = 0; k < random_graphs; ++k) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
    std::uniform_int_distribution<int> vdist(5, 7);
    pool.push_back(random_three_connected_graph(vdist(rng), rng));
  }
  rep.graphs = pool.size();

  auto check_pair = [&](const Graph& a, const Graph& b, const std::string& tag) {
    ++rep.pairs;
    auto iso = graph_isomorphic(a, b);
    auto two = two_isomorphic(a, b);
    if (iso.has_value() != two.has_value()) {
      ++rep.mismatches;
      rep.failures.push_back("iso/2-iso mismatch on " + tag);
      return;
    }
    if (iso && !verify_graph_isomorphism(a, b, *iso))
      rep.failures.push_back("graph-iso witness failed on " + tag);
    if (two && !verify_cycle_isomorphism(a, b, *two))
      rep.failures.push_back("2-iso witness failed on " + tag);
  };

  for (std::size_t i = 0; i < pool.size(); ++i) {
    Rng rng(mix_seed(seed, 90'000 + i));
    check_pair(pool[i], relabel_randomly(pool[i], rng),
               "relabel pair " + std::to_string(i));
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      check_pair(pool[i], pool[j],
                 "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  return rep;
}

}  // namespace miso
