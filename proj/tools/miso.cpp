// miso: decide graph equivalences (isomorphism, 1-/2-isomorphism, cycle
// isomorphism) and certify them numerically through squared-edge-length
// measurement sets.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "miso/experiments.hpp"
#include "miso/json_io.hpp"
#include "miso/random.hpp"

namespace {

constexpr int kExitEquivalent = 0;
constexpr int kExitNotEquivalent = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

miso::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw miso::ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  // graph files are edge lists; .json files carry the JSON schema
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
    return miso::graph_from_json(miso::Json::parse(text));
  return miso::parse_graph(text);
}

void emit(const miso::Json& j, bool json_mode, const std::string& text_line) {
  if (json_mode)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text_line << "\n";
}

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<std::string> parse_csv_strings(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

struct GlobalFlags {
  bool json = true;
  std::uint64_t seed = 0;
  int d = 2;
  double tol = 1e-8;
  int restarts = 32;
  bool simple_only = false;
  int max_depth = 8;
};

int run_check(const std::string& kind, const std::string& file_a,
              const std::string& file_b, const std::string& route,
              const GlobalFlags& flags) {
  miso::Graph a = load_graph(file_a);
  miso::Graph b = load_graph(file_b);
  miso::Json out{{"kind", kind}, {"a", file_a}, {"b", file_b}};

  if (kind == "iso") {
    auto rho = miso::graph_isomorphic(a, b);
    out["equivalent"] = rho.has_value();
    if (rho) out["witness"] = miso::vertex_bijection_to_json(*rho);
    emit(out, flags.json, rho ? "isomorphic" : "not isomorphic");
    return rho ? kExitEquivalent : kExitNotEquivalent;
  }
  if (kind == "1iso") {
    bool eq = miso::one_isomorphic(a, b);
    out["equivalent"] = eq;
    emit(out, flags.json, eq ? "1-isomorphic" : "not 1-isomorphic");
    return eq ? kExitEquivalent : kExitNotEquivalent;
  }
  if (kind == "cycleiso" || (kind == "2iso" && route == "cycle")) {
    auto sigma = miso::cycle_isomorphic(a, b);
    out["equivalent"] = sigma.has_value();
    out["route"] = "cycle";
    if (sigma) out["witness"] = miso::edge_bijection_to_json(*sigma);
    emit(out, flags.json, sigma ? "equivalent" : "not equivalent");
    return sigma ? kExitEquivalent : kExitNotEquivalent;
  }
  if (kind == "2iso") {  // route == "search"
    miso::SearchOptions opts;
    opts.max_depth = flags.max_depth;
    opts.simple_only = flags.simple_only;
    miso::SearchResult r = miso::two_isomorphic_search(a, b, opts);
    out["route"] = "search";
    out["search"] = miso::search_result_to_json(r);
    out["equivalent"] = r.status == miso::SearchStatus::Found;
    switch (r.status) {
      case miso::SearchStatus::Found:
        emit(out, flags.json, "2-isomorphic");
        return kExitEquivalent;
      case miso::SearchStatus::Exhausted:
        emit(out, flags.json, "not 2-isomorphic");
        return kExitNotEquivalent;
      case miso::SearchStatus::Unknown:
        emit(out, flags.json, "unknown (caps hit)");
        return kExitUnknown;
    }
  }
  throw miso::Error("unknown check kind '" + kind + "'");
}

int run_measure_sample(const std::string& file, int n, const GlobalFlags& flags,
                       double spread) {
  miso::Graph g = load_graph(file);
  miso::EdgeAxisMap ax = miso::EdgeAxisMap::identity(g);
  miso::SampleOptions so;
  so.spread = spread;
  auto pts = miso::sample_measurement_set(g, flags.d, n, flags.seed, so);
  miso::Json arr = miso::Json::array();
  for (const auto& pt : pts) arr.push_back(miso::measurement_point_to_json(pt, ax));
  emit(miso::Json{{"samples", arr}, {"d", flags.d}, {"seed", flags.seed}},
       flags.json, std::to_string(pts.size()) + " samples");
  return kExitEquivalent;
}

int run_measure_member(const std::string& file, const std::string& target_csv,
                       const std::string& axes_csv, const GlobalFlags& flags) {
  miso::Graph g = load_graph(file);
  miso::EdgeAxisMap ax =
      axes_csv.empty() ? miso::EdgeAxisMap::identity(g)
                       : miso::EdgeAxisMap::from_order(parse_csv_strings(axes_csv));
  std::vector<double> coords = parse_csv_doubles(target_csv);
  miso::MeasurementPoint target;
  target.coords = Eigen::Map<Eigen::VectorXd>(
      coords.data(), static_cast<Eigen::Index>(coords.size()));

  miso::MemberOptions opts;
  opts.realize.tol = flags.tol;
  opts.realize.restarts = flags.restarts;
  opts.realize.seed = flags.seed;
  miso::MembershipVerdict v = miso::is_member(g, target, ax, flags.d, opts);
  emit(miso::verdict_to_json(v), flags.json,
       v.kind == miso::Verdict::Realizable   ? "realizable"
       : v.kind == miso::Verdict::Infeasible ? "infeasible"
                                             : "unknown");
  switch (v.kind) {
    case miso::Verdict::Realizable:
      return kExitEquivalent;
    case miso::Verdict::Infeasible:
      return kExitNotEquivalent;
    case miso::Verdict::Unknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

int run_measure_project(const std::string& file, const std::string& target_csv,
                        const std::string& keep_csv, const GlobalFlags& flags) {
  miso::Graph g = load_graph(file);
  miso::EdgeAxisMap ax = miso::EdgeAxisMap::identity(g);
  std::vector<double> coords = parse_csv_doubles(target_csv);
  miso::MeasurementPoint pt;
  pt.coords = Eigen::Map<Eigen::VectorXd>(
      coords.data(), static_cast<Eigen::Index>(coords.size()));
  miso::ProjectedPoint proj =
      miso::project_point(pt, ax, parse_csv_strings(keep_csv));
  emit(miso::measurement_point_to_json(proj.point, proj.axes), flags.json,
       "projected");
  return kExitEquivalent;
}

int run_measure_witness(const std::string& file_a, const std::string& file_b,
                        const GlobalFlags& flags) {
  miso::Graph a = load_graph(file_a);
  miso::Graph b = load_graph(file_b);
  try {
    auto w = miso::distinguish_witness(a, b);
    if (!w) {
      emit(miso::Json{{"witness", nullptr}, {"cycle_isomorphic", true}},
           flags.json, "cycle isomorphic; no distinguishing witness");
      return kExitEquivalent;
    }
    emit(miso::distinguish_witness_to_json(*w), flags.json,
         "witness cycle of " + std::string(w->cycle_in_first ? "first" : "second") +
             " graph, " + std::to_string(w->cycle.size()) + " edges");
    return kExitEquivalent;
  } catch (const miso::CapExceeded& ex) {
    emit(miso::Json{{"error", ex.what()}}, flags.json, ex.what());
    return kExitUnknown;
  } catch (const miso::Error& ex) {
    // not cycle isomorphic, but no uniform witness of the pinned shape
    emit(miso::Json{{"error", ex.what()}, {"cycle_isomorphic", false}},
         flags.json, ex.what());
    return kExitUnknown;
  }
}

int run_experiment(const std::string& suite, int max_edges, int pairs, int n,
                   const std::string& graphs_csv, int random_graphs,
                   const GlobalFlags& flags) {
  miso::Json report;
  bool ok = false;
  if (suite == "whitney-crosscheck") {
    auto r = miso::run_whitney_crosscheck(max_edges, pairs, flags.seed);
    report = miso::whitney_report_to_json(r);
    ok = r.passed();
  } else if (suite == "main-theorem") {
    auto r = miso::run_main_theorem(pairs, std::max(pairs / 2, 1), {1, 2, 3},
                                    n, flags.seed);
    report = miso::main_theorem_report_to_json(r);
    ok = r.passed();
  } else if (suite == "nesting") {
    auto r = miso::run_nesting(std::max(pairs, 1), n, 5, flags.d, flags.seed);
    report = miso::nesting_report_to_json(r);
    ok = r.passed();
  } else if (suite == "three-connected") {
    std::vector<miso::Graph> base;
    for (const std::string& name : parse_csv_strings(graphs_csv)) {
      if (name == "k4")
        base.push_back(miso::complete_graph(4));
      else if (name == "k5")
        base.push_back(miso::complete_graph(5));
      else
        base.push_back(load_graph(name));
    }
    auto r = miso::run_three_connected(base, random_graphs, flags.seed);
    report = miso::three_connected_report_to_json(r);
    ok = r.passed();
  } else {
    throw miso::Error("unknown suite '" + suite + "'");
  }
  emit(report, flags.json, std::string(suite) + (ok ? ": agree" : ": FAILED"));
  return ok ? kExitEquivalent : kExitNotEquivalent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph equivalences and measurement-set certificates"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalFlags flags;
  app.add_flag("--json,!--no-json", flags.json, "JSON output (default on)");
  app.add_option("--seed", flags.seed, "base RNG seed");
  app.add_option("--d", flags.d, "embedding dimension");
  app.add_option("--tol", flags.tol, "solver residual tolerance");
  app.add_option("--restarts", flags.restarts, "solver restarts");
  app.add_flag("--simple-only", flags.simple_only,
               "reject reversals that create parallel edges");
  app.add_option("--max-depth", flags.max_depth,
                 "reversal search depth (-1 = unlimited)");

  // check
  auto* check = app.add_subcommand("check", "decide an equivalence");
  std::string kind, file_a, file_b, route = "cycle";
  check->add_option("kind", kind, "iso|1iso|2iso|cycleiso")->required();
  check->add_option("fileA", file_a)->required();
  check->add_option("fileB", file_b)->required();
  check->add_option("--route", route, "2iso route: cycle|search");

  // measure
  auto* measure = app.add_subcommand("measure", "measurement-set operations");
  measure->require_subcommand(1);
  auto* sample = measure->add_subcommand("sample", "sample measurement points");
  std::string sample_file;
  int sample_n = 1;
  double spread = 1.0;
  sample->add_option("file", sample_file)->required();
  sample->add_option("--n", sample_n, "number of samples");
  sample->add_option("--spread", spread, "coordinate standard deviation");

  auto* member = measure->add_subcommand("member", "membership verdict");
  std::string member_file, member_target, member_axes;
  member->add_option("file", member_file)->required();
  member->add_option("--target", member_target, "comma-separated squared lengths")
      ->required();
  member->add_option("--axes", member_axes,
                     "edge ids per coordinate (default: file order)");

  auto* project = measure->add_subcommand("project", "project a point");
  std::string project_file, project_target, project_keep;
  project->add_option("file", project_file)->required();
  project->add_option("--target", project_target)->required();
  project->add_option("--keep", project_keep, "edge ids to keep")->required();

  auto* witness = measure->add_subcommand("witness", "distinguishing witness");
  std::string wit_a, wit_b;
  witness->add_option("fileA", wit_a)->required();
  witness->add_option("fileB", wit_b)->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "validation suites");
  std::string suite, graphs_csv = "k4,k5";
  int max_edges = 7, pairs = 50, n = 20, random_graphs = 10;
  experiment
      ->add_option("suite", suite,
                   "whitney-crosscheck|main-theorem|nesting|three-connected")
      ->required();
  experiment->add_option("--max-edges", max_edges);
  experiment->add_option("--pairs", pairs);
  experiment->add_option("--n", n);
  experiment->add_option("--graphs", graphs_csv, "base graphs (k4,k5,files)");
  experiment->add_option("--random", random_graphs, "random 3-connected count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check(kind, file_a, file_b, route, flags);
    if (*sample) return run_measure_sample(sample_file, sample_n, flags, spread);
    if (*member)
      return run_measure_member(member_file, member_target, member_axes, flags);
    if (*project)
      return run_measure_project(project_file, project_target, project_keep,
                                 flags);
    if (*witness) return run_measure_witness(wit_a, wit_b, flags);
    if (*experiment)
      return run_experiment(suite, max_edges, pairs, n, graphs_csv,
                            random_graphs, flags);
  } catch (const miso::ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const miso::CapExceeded& ex) {
    std::cerr << "cap exceeded: " << ex.what() << "\n";
    return kExitUnknown;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
