// Command-line front end: count / approx / peel / orient subcommands plus
// a hidden oracle subcommand for debugging against the reference
// implementations. Outputs use the input file's original vertex ids.

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kclique/counting.hpp"
#include "kclique/graph.hpp"
#include "kclique/oracle.hpp"
#include "kclique/orientation.hpp"
#include "kclique/peeling.hpp"
#include "kclique/sampling.hpp"

namespace {

using nlohmann::json;
using namespace kclique;

class PhaseTimer {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ =
      std::chrono::steady_clock::now();
};

ParsedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return parse_edge_list(in);
}

std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

void write_report(const std::string& path, const json& j) {
  if (path.empty()) return;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing report: " + path);
}

const std::map<std::string, OrientStrategy> kOrderNames = {
    {"degree", OrientStrategy::degree},
    {"original", OrientStrategy::original},
    {"kcore", OrientStrategy::kcore},
    {"goodrich", OrientStrategy::goodrich_pszona},
    {"barenboim", OrientStrategy::barenboim_elkin},
};

std::string order_name(OrientStrategy s) {
  for (const auto& [name, val] : kOrderNames)
    if (val == s) return name;
  return "?";
}

// Flags shared by the graph-consuming subcommands.
struct CommonFlags {
  std::string input;
  int k = 0;
  OrientStrategy order = OrientStrategy::degree;
  double eps = 1.0;
  std::string json_path;
  int threads = 0;

  void add_input(CLI::App* cmd) {
    cmd->add_option("--input", input, "edge list file (two ids per line)")
        ->required();
  }
  void add_k(CLI::App* cmd) {
    cmd->add_option("--k", k, "clique size (>= 2)")
        ->required()
        ->check(CLI::Range(2, 1000));
  }
  void add_order(CLI::App* cmd, double default_eps = 1.0) {
    eps = default_eps;
    cmd->add_option("--order", order, "vertex ordering strategy")
        ->transform(CLI::CheckedTransformer(kOrderNames, CLI::ignore_case));
    cmd->add_option("--eps", eps, "epsilon for the peeling-based options")
        ->check(CLI::PositiveNumber);
  }
  void add_misc(CLI::App* cmd) {
    cmd->add_option("--threads", threads, "worker threads (default: all)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--json", json_path, "write a JSON run report here");
  }
  void apply_threads() const {
    if (threads > 0) omp_set_num_threads(threads);
  }
  json base_report(const char* command, const ParsedGraph& pg) const {
    return json{{"schema", 1},
                {"command", command},
                {"input", input},
                {"n", pg.graph.num_vertices()},
                {"m", pg.graph.num_edges()},
                {"k", k},
                {"strategy", order_name(order)},
                {"threads", omp_get_max_threads()}};
  }
};

Parallelism resolve_parallelism(const std::string& mode, int k) {
  if (mode == "node") return Parallelism::node;
  if (mode == "edge") return Parallelism::edge;
  return default_parallelism(k);
}

void write_vertex_tsv(const std::string& path, const ParsedGraph& pg,
                      std::span<const uint64_t> values) {
  auto out = open_out(path);
  std::vector<VertexId> by_orig(pg.graph.num_vertices());
  for (VertexId v = 0; v < by_orig.size(); v++) by_orig[v] = v;
  std::sort(by_orig.begin(), by_orig.end(), [&](VertexId a, VertexId b) {
    return pg.original_ids[a] < pg.original_ids[b];
  });
  for (VertexId v : by_orig)
    out << pg.original_ids[v] << '\t' << values[v] << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

int cmd_count(const CommonFlags& common, const std::string& par_mode,
              const std::string& per_vertex_path,
              const std::string& list_path) {
  PhaseTimer timer;
  ParsedGraph pg = load_graph(common.input);
  double t_load = timer.lap();

  common.apply_threads();
  OrientConfig ocfg{common.order, common.eps, std::nullopt};
  DirectedGraph dg = direct_by_ranking(pg.graph, make_ranking(pg.graph, ocfg));
  double t_orient = timer.lap();

  CountConfig ccfg{resolve_parallelism(par_mode, common.k), true};
  CliqueCounts counts;
  std::mutex list_mu;
  std::vector<std::vector<uint64_t>> found;
  if (!list_path.empty()) {
    counts = list_cliques(dg, common.k, ccfg,
                          [&](std::span<const VertexId> clique) {
                            std::vector<uint64_t> orig;
                            orig.reserve(clique.size());
                            for (VertexId v : clique)
                              orig.push_back(pg.original_ids[v]);
                            std::sort(orig.begin(), orig.end());
                            std::lock_guard<std::mutex> lock(list_mu);
                            found.push_back(std::move(orig));
                          });
    if (!per_vertex_path.empty())
      counts = count_per_vertex(dg, common.k, ccfg);
  } else if (!per_vertex_path.empty()) {
    counts = count_per_vertex(dg, common.k, ccfg);
  } else {
    counts = count_total(dg, common.k, ccfg);
  }
  double t_compute = timer.lap();

  if (!per_vertex_path.empty())
    write_vertex_tsv(per_vertex_path, pg, counts.per_vertex);
  if (!list_path.empty()) {
    std::sort(found.begin(), found.end());
    auto out = open_out(list_path);
    for (const auto& clique : found) {
      for (size_t i = 0; i < clique.size(); i++)
        out << clique[i] << (i + 1 < clique.size() ? ' ' : '\n');
    }
    if (!out) throw std::runtime_error("failed writing " + list_path);
  }

  std::cout << counts.total << '\n';

  json report = common.base_report("count", pg);
  report["parallelism"] =
      ccfg.parallelism == Parallelism::node ? "node" : "edge";
  report["phases"] = {{"load", t_load}, {"orient", t_orient},
                      {"compute", t_compute}};
  report["result"] = {{"total", counts.total}};
  write_report(common.json_path, report);
  return 0;
}

int cmd_approx(const CommonFlags& common, const std::string& par_mode,
               uint64_t colors, uint64_t seed, int trials) {
  PhaseTimer timer;
  ParsedGraph pg = load_graph(common.input);
  double t_load = timer.lap();

  common.apply_threads();
  OrientConfig ocfg{common.order, common.eps, std::nullopt};
  CountConfig ccfg{resolve_parallelism(par_mode, common.k), true};
  double t_orient = timer.lap();  // per-trial orientation happens inside

  std::vector<double> estimates;
  estimates.reserve(trials);
  uint64_t first_sub_count = 0;
  for (int t = 0; t < trials; t++) {
    SampleEstimate est =
        approx_count(pg.graph, common.k, colors, seed + uint64_t(t), ocfg, ccfg);
    if (t == 0) first_sub_count = est.sub_count;
    estimates.push_back(est.estimate);
  }
  double mean = 0;
  for (double e : estimates) mean += e;
  mean /= trials;
  double var = 0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  double stddev = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
  double t_compute = timer.lap();

  if (trials == 1)
    std::cout << fmt_real(estimates[0]) << '\n';
  else
    std::cout << fmt_real(mean) << "±" << fmt_real(stddev) << '\n';

  json report = common.base_report("approx", pg);
  report["parallelism"] =
      ccfg.parallelism == Parallelism::node ? "node" : "edge";
  report["phases"] = {{"load", t_load}, {"orient", t_orient},
                      {"compute", t_compute}};
  report["result"] = {{"estimate", estimates[0]}, {"sub_count", first_sub_count},
                      {"mean", mean},             {"stddev", stddev},
                      {"trials", trials},         {"colors", colors},
                      {"seed", seed}};
  write_report(common.json_path, report);
  return 0;
}

int cmd_peel(const CommonFlags& common, const std::string& mode,
             const std::string& cores_path, const std::string& dense_path) {
  PhaseTimer timer;
  ParsedGraph pg = load_graph(common.input);
  double t_load = timer.lap();

  common.apply_threads();
  // --eps belongs to approximate peeling here; orientation uses its
  // default epsilon.
  OrientConfig ocfg{common.order, 1.0, std::nullopt};
  DirectedGraph dg = direct_by_ranking(pg.graph, make_ranking(pg.graph, ocfg));
  double t_orient = timer.lap();

  PeelOutcome outcome = mode == "approx"
                            ? peel_approx(pg.graph, dg, common.k, common.eps)
                            : peel_exact(pg.graph, dg, common.k);
  double t_compute = timer.lap();

  if (!cores_path.empty()) write_vertex_tsv(cores_path, pg, outcome.core);
  if (!dense_path.empty()) {
    std::vector<uint64_t> orig;
    for (VertexId v : outcome.dense_vertices)
      orig.push_back(pg.original_ids[v]);
    std::sort(orig.begin(), orig.end());
    auto out = open_out(dense_path);
    for (uint64_t id : orig) out << id << '\n';
    if (!out) throw std::runtime_error("failed writing " + dense_path);
  }

  std::cout << "rho=" << outcome.rounds << " density="
            << fmt_real(outcome.best_density) << '\n';

  json report = common.base_report("peel", pg);
  report["parallelism"] =
      default_parallelism(common.k) == Parallelism::node ? "node" : "edge";
  report["phases"] = {{"load", t_load}, {"orient", t_orient},
                      {"compute", t_compute}};
  report["result"] = {{"rho", outcome.rounds},
                      {"best_density", outcome.best_density},
                      {"total_cliques", outcome.total_cliques},
                      {"best_round", outcome.best_round},
                      {"dense_vertex_count", outcome.dense_vertices.size()},
                      {"mode", mode}};
  write_report(common.json_path, report);
  return 0;
}

int cmd_orient(const CommonFlags& common, std::optional<uint64_t> alpha_hat,
               const std::string& ranking_path) {
  PhaseTimer timer;
  ParsedGraph pg = load_graph(common.input);
  double t_load = timer.lap();

  OrientConfig ocfg{common.order, common.eps, alpha_hat};
  Ranking ranking = make_ranking(pg.graph, ocfg);
  DirectedGraph dg = direct_by_ranking(pg.graph, ranking);
  double t_orient = timer.lap();

  if (!ranking_path.empty()) {
    // One original vertex id per line, lowest rank first.
    auto out = open_out(ranking_path);
    for (VertexId v : ranking.order()) out << pg.original_ids[v] << '\n';
    if (!out) throw std::runtime_error("failed writing " + ranking_path);
  }
  std::cout << "max_out_degree=" << dg.max_out_degree() << '\n';

  json report = common.base_report("orient", pg);
  report["parallelism"] = "none";
  report["phases"] = {{"load", t_load}, {"orient", t_orient},
                      {"compute", 0.0}};
  report["result"] = {{"max_out_degree", dg.max_out_degree()}};
  write_report(common.json_path, report);
  return 0;
}

int cmd_oracle(const std::string& input, int k, const std::string& what) {
  ParsedGraph pg = load_graph(input);
  const Graph& g = pg.graph;
  if (what == "count") {
    std::cout << oracle::brute_force_count(g, k).total << '\n';
  } else if (what == "arboricity") {
    std::cout << oracle::exact_arboricity(g) << '\n';
  } else if (what == "densest") {
    auto res = oracle::exact_densest(g, k);
    std::cout << "density=" << fmt_real(res.density) << " vertices=";
    for (size_t i = 0; i < res.subset.size(); i++)
      std::cout << pg.original_ids[res.subset[i]]
                << (i + 1 < res.subset.size() ? ' ' : '\n');
    if (res.subset.empty()) std::cout << '\n';
  } else {
    auto s = oracle::shared_pairs(g, k);
    for (int z = 2; z <= k - 1; z++)
      std::cout << s[z] << (z < k - 1 ? ' ' : '\n');
    if (k == 2) std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-clique counting, sampling, and peeling toolkit"};
  app.require_subcommand(1);

  CommonFlags count_flags, approx_flags, peel_flags, orient_flags;
  std::string count_par = "auto", approx_par = "auto";
  std::string per_vertex_path, list_path;
  uint64_t colors = 0, seed = 0;
  int trials = 1;
  std::string peel_mode = "exact", cores_path, dense_path;
  std::optional<uint64_t> alpha_hat;
  std::string ranking_path;
  std::string oracle_input, oracle_what = "count";
  int oracle_k = 3;

  auto* count = app.add_subcommand("count", "exact k-clique count");
  count_flags.add_input(count);
  count_flags.add_k(count);
  count_flags.add_order(count);
  count->add_option("--parallelism", count_par, "node, edge, or auto")
      ->check(CLI::IsMember({"node", "edge", "auto"}));
  count->add_option("--per-vertex", per_vertex_path,
                    "write per-vertex counts TSV here");
  count->add_option("--list", list_path, "write one clique per line here");
  count_flags.add_misc(count);

  auto* approx = app.add_subcommand(
      "approx", "sampled k-clique estimate via vertex coloring");
  approx_flags.add_input(approx);
  approx_flags.add_k(approx);
  approx_flags.add_order(approx);
  approx->add_option("--colors", colors, "number of colors (p = 1/colors)")
      ->required()
      ->check(CLI::PositiveNumber);
  approx->add_option("--seed", seed, "base RNG seed")->required();
  approx->add_option("--trials", trials,
                     "independent trials (seed, seed+1, ...)")
      ->check(CLI::PositiveNumber);
  approx->add_option("--parallelism", approx_par, "node, edge, or auto")
      ->check(CLI::IsMember({"node", "edge", "auto"}));
  approx_flags.add_misc(approx);

  auto* peel =
      app.add_subcommand("peel", "k-clique densest subgraph by peeling");
  peel_flags.add_input(peel);
  peel_flags.add_k(peel);
  peel_flags.add_order(peel, 0.5);
  peel->add_option("--mode", peel_mode, "exact or approx")
      ->check(CLI::IsMember({"exact", "approx"}));
  peel->add_option("--cores", cores_path,
                   "write per-vertex core numbers TSV here (exact mode)");
  peel->add_option("--dense", dense_path,
                   "write the densest subgraph's vertices here");
  peel_flags.add_misc(peel);

  auto* orient =
      app.add_subcommand("orient", "compute an ordering and orient the graph");
  orient_flags.add_input(orient);
  orient_flags.add_order(orient);
  orient->add_option("--alpha-hat", alpha_hat,
                     "arboricity estimate override (barenboim)");
  orient->add_option("--output", ranking_path,
                     "write the ordering here (one id per line, rank order)");
  orient->add_option("--json", orient_flags.json_path,
                     "write a JSON run report here");

  auto* orc = app.add_subcommand("oracle", "reference implementations");
  orc->group("");  // hidden from help
  orc->add_option("--input", oracle_input)->required();
  orc->add_option("--k", oracle_k)->check(CLI::Range(2, 64));
  orc->add_option("--what", oracle_what)
      ->check(CLI::IsMember({"count", "arboricity", "densest", "shared"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (peel->parsed() && peel_mode == "approx" && !cores_path.empty()) {
    std::cerr << "error: --cores requires --mode exact\n";
    return 2;
  }

  try {
    if (count->parsed())
      return cmd_count(count_flags, count_par, per_vertex_path, list_path);
    if (approx->parsed())
      return cmd_approx(approx_flags, approx_par, colors, seed, trials);
    if (peel->parsed())
      return cmd_peel(peel_flags, peel_mode, cores_path, dense_path);
    if (orient->parsed())
      return cmd_orient(orient_flags, alpha_hat, ranking_path);
    if (orc->parsed()) return cmd_oracle(oracle_input, oracle_k, oracle_what);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
