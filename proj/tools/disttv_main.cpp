// disttv: total variation of graph distributional signals via edge
// centralities, with exact desk-scale verification oracles.
//
// Subcommands: centrality | wasserstein | tv | verify | gen
// Exit codes:  0 success, 1 verification failure, 2 usage/parse error,
//              3 guard exceeded (instance too large for exact computation).

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "disttv/disttv.hpp"

namespace {

using namespace disttv;

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kGuard = 3 };

enum class Format { table, csv, jsonl };

Format parse_format(const std::string& name) {
  if (name == "table") return Format::table;
  if (name == "csv") return Format::csv;
  if (name == "jsonl") return Format::jsonl;
  throw std::invalid_argument("unknown format '" + name + "' (table|csv|jsonl)");
}

// 6 significant digits in tables, 17 in machine-readable modes.
std::string num(double v, Format f) {
  return format_double(v, f == Format::table ? 6 : 17);
}

void print_edge_values(const Graph& g, const EdgeVector& values, Format f,
                       const std::string& key) {
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    switch (f) {
      case Format::table:
        std::cout << edge.u << " " << edge.v << " " << num(values(e), f) << "\n";
        break;
      case Format::csv:
        std::cout << edge.u << "," << edge.v << "," << num(values(e), f) << "\n";
        break;
      case Format::jsonl:
        std::cout << "{\"edge\":[" << edge.u << "," << edge.v << "],\"" << key
                  << "\":" << num(values(e), f) << "}\n";
        break;
    }
  }
}

struct CentralityArgs {
  std::string graph_path;
  std::string family;
  std::string eta_path;
  std::string format = "table";
};

EdgeCentrality named_family_centrality(const Graph& g, const std::string& family) {
  if (family == "constant") return constant_centrality(g);
  if (family == "betweenness") return betweenness_centrality(g);
  if (family == "spanning-tree") return spanning_tree_centrality(g);
  throw std::invalid_argument("unknown family '" + family +
                              "' (constant|betweenness|spanning-tree)");
}

SubtreeDistribution load_eta_warning(const Graph& g, const std::string& path) {
  int edgeless = 0;
  SubtreeDistribution eta = load_eta(path, g, &edgeless);
  if (edgeless > 0)
    std::cerr << "warning: " << path << ": " << edgeless
              << " single-node subtree(s) carry mass but touch no edge\n";
  return eta;
}

int run_centrality(const CentralityArgs& args) {
  const Graph g = load_graph(args.graph_path);
  const Format f = parse_format(args.format);
  EdgeCentrality c;
  if (!args.family.empty()) {
    c = named_family_centrality(g, args.family);
  } else {
    c = centrality_from_eta(g, load_eta_warning(g, args.eta_path));
  }
  print_edge_values(g, c, f, "value");
  return kOk;
}

struct WassersteinArgs {
  std::string graph_path;
  std::string marginals_path;
  std::string format = "table";
};

int run_wasserstein(const WassersteinArgs& args) {
  const Graph g = load_graph(args.graph_path);
  const MarginalSet ms = load_marginal_set(args.marginals_path);
  print_edge_values(g, wasserstein_edge_vector(g, ms), parse_format(args.format), "value");
  return kOk;
}

struct TvArgs {
  std::string graph_path;
  std::string marginals_path;
  std::string family;
  std::string eta_path;
  std::string centrality_path;
  std::string format = "table";
  std::int64_t lp_guard = 4096;
  bool lp_oracle = false;
};

int run_tv(const TvArgs& args) {
  const Graph g = load_graph(args.graph_path);
  const MarginalSet ms = load_marginal_set(args.marginals_path);
  const Format f = parse_format(args.format);

  EdgeCentrality c;
  std::optional<SubtreeDistribution> eta;
  if (!args.family.empty()) {
    c = named_family_centrality(g, args.family);
  } else if (!args.eta_path.empty()) {
    eta = load_eta_warning(g, args.eta_path);
    c = centrality_from_eta(g, *eta);
  } else {
    c = load_edge_values(args.centrality_path, g);
    if (c.minCoeff() < 0.0)
      throw std::invalid_argument(args.centrality_path + ": centrality entries must be >= 0");
  }

  const EdgeVector w = wasserstein_edge_vector(g, ms);
  const double total = c.dot(w);
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const double cw = c(e) * w(e);
    switch (f) {
      case Format::table:
        std::cout << edge.u << " " << edge.v << " " << num(c(e), f) << " " << num(w(e), f)
                  << " " << num(cw, f) << "\n";
        break;
      case Format::csv:
        std::cout << edge.u << "," << edge.v << "," << num(c(e), f) << "," << num(w(e), f)
                  << "," << num(cw, f) << "\n";
        break;
      case Format::jsonl:
        std::cout << "{\"edge\":[" << edge.u << "," << edge.v << "],\"centrality\":"
                  << num(c(e), f) << ",\"wasserstein\":" << num(w(e), f)
                  << ",\"contribution\":" << num(cw, f) << "}\n";
        break;
    }
  }
  switch (f) {
    case Format::table: std::cout << "total " << num(total, f) << "\n"; break;
    case Format::csv: std::cout << "total," << num(total, f) << "\n"; break;
    case Format::jsonl: std::cout << "{\"total\":" << num(total, f) << "}\n"; break;
  }

  if (args.lp_oracle) {
    if (!eta.has_value())
      throw std::invalid_argument("--lp-oracle needs --eta (the LP runs per explicit subtree)");
    TvDirectOptions opt;
    opt.use_lp_oracle = true;
    opt.lp_guard = args.lp_guard;
    const double direct = tv_eta_direct(g, *eta, ms, opt);
    switch (f) {
      case Format::table: std::cout << "lp-direct " << num(direct, f) << "\n"; break;
      case Format::csv: std::cout << "lp-direct," << num(direct, f) << "\n"; break;
      case Format::jsonl: std::cout << "{\"lp_direct\":" << num(direct, f) << "}\n"; break;
    }
  }
  return kOk;
}

struct VerifyArgs {
  std::string graph_path;
  int trials = 100;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  int lp_trials = 3;
};

int run_verify(const VerifyArgs& args) {
  const Graph g = load_graph(args.graph_path);

  VerifyOptions opt;
  opt.trials = args.trials;
  opt.seed = args.seed;
  opt.tolerance = args.tolerance;
  opt.lp_trials = args.lp_trials;
  const VerifyReport identity = verify_centrality_identity(g, opt);
  const WassersteinCheckReport forms =
      verify_wasserstein_forms(args.trials, args.seed + 1, args.tolerance);
  const TreeDecompositionReport tree = verify_tree_decomposition(std::min(args.trials, 50), args.seed + 2,
                                                 args.tolerance);

  for (const auto& line : forms.lines) std::cout << line << "\n";
  for (const auto& line : tree.lines) std::cout << line << "\n";
  for (const auto& line : identity.lines) std::cout << line << "\n";
  const bool pass = identity.pass && forms.pass && tree.pass;
  std::cout << identity.summary << (pass ? "" : " (see failures above)") << "\n";
  std::cout << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kOk : kVerifyFailed;
}

struct GenArgs {
  std::string family;
  std::string marginals;
  int n = 0;
  double p = 0.5;
  int support = 2;
  int samples = 4;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  if (args.family.empty() == args.marginals.empty())
    throw std::invalid_argument("gen: need exactly one of --family or --marginals");
  if (args.n < 2) throw std::invalid_argument("gen: --n must be at least 2");
  std::mt19937_64 rng(args.seed);
  if (!args.family.empty()) {
    Graph g = [&] {
      if (args.family == "path") return path_graph(args.n);
      if (args.family == "cycle") return cycle_graph(args.n);
      if (args.family == "complete") return complete_graph(args.n);
      if (args.family == "erdos-renyi") return random_connected_graph(args.n, args.p, rng);
      throw std::invalid_argument("gen: unknown family '" + args.family +
                                  "' (path|cycle|complete|erdos-renyi)");
    }();
    write_text_file(args.out, format_graph(g));
    return kOk;
  }
  MarginalSet ms = [&] {
    if (args.marginals == "gaussian") return random_gaussian_marginals(args.n, rng);
    if (args.marginals == "empirical") return random_empirical_marginals(args.n, args.samples, rng);
    if (args.marginals == "discrete") return random_discrete_marginals(args.n, args.support, rng);
    throw std::invalid_argument("gen: unknown marginal kind '" + args.marginals +
                                "' (gaussian|empirical|discrete)");
  }();
  write_text_file(args.out, format_marginal_set(ms) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "total variation of graph distributional signals via edge centralities\n"
      "DISTTV_THREADS caps internal parallelism (results are identical for any value)"};
  app.require_subcommand(1);

  CentralityArgs cen;
  auto* cen_cmd = app.add_subcommand("centrality", "per-edge centrality in canonical edge order");
  cen_cmd->add_option("--graph", cen.graph_path, "graph file")->required();
  auto* cen_family = cen_cmd->add_option("--family", cen.family,
                                         "constant|betweenness|spanning-tree");
  cen_cmd->add_option("--eta", cen.eta_path, "explicit subtree-distribution file (JSON)")
      ->excludes(cen_family);
  cen_cmd->add_option("--format", cen.format, "table|csv|jsonl");

  WassersteinArgs was;
  auto* was_cmd = app.add_subcommand("wasserstein", "per-edge squared Wasserstein distances");
  was_cmd->add_option("--graph", was.graph_path, "graph file")->required();
  was_cmd->add_option("--marginals", was.marginals_path, "marginal-set file (JSON)")->required();
  was_cmd->add_option("--format", was.format, "table|csv|jsonl");

  TvArgs tv;
  auto* tv_cmd = app.add_subcommand("tv", "total variation with per-edge decomposition");
  tv_cmd->add_option("--graph", tv.graph_path, "graph file")->required();
  tv_cmd->add_option("--marginals", tv.marginals_path, "marginal-set file (JSON)")->required();
  auto* tv_family = tv_cmd->add_option("--family", tv.family,
                                       "constant|betweenness|spanning-tree");
  auto* tv_eta = tv_cmd->add_option("--eta", tv.eta_path, "explicit subtree-distribution file");
  auto* tv_cen = tv_cmd->add_option("--centrality", tv.centrality_path,
                                    "edge-centrality file ('i j value' lines)");
  tv_family->excludes(tv_eta)->excludes(tv_cen);
  tv_eta->excludes(tv_cen);
  tv_cmd->add_flag("--lp-oracle", tv.lp_oracle,
                   "additionally evaluate the per-subtree exact LP (discrete marginals)");
  tv_cmd->add_option("--lp-guard", tv.lp_guard,
                     "product-support guard for the per-subtree LP");
  tv_cmd->add_option("--format", tv.format, "table|csv|jsonl");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand(
      "verify", "oracle equivalences, tree decomposition, and the centrality identity (n <= 6)");
  ver_cmd->add_option("--graph", ver.graph_path, "graph file")->required();
  ver_cmd->add_option("--trials", ver.trials, "random trials per check");
  ver_cmd->add_option("--seed", ver.seed, "random seed");
  ver_cmd->add_option("--tolerance", ver.tolerance, "max allowed deviation");
  ver_cmd->add_option("--lp-trials", ver.lp_trials,
                      "identity trials additionally cross-checked with the LP oracle");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "write reproducible graph or marginal files");
  gen_cmd->add_option("--family", gen.family, "path|cycle|complete|erdos-renyi");
  gen_cmd->add_option("--marginals", gen.marginals, "gaussian|empirical|discrete");
  gen_cmd->add_option("--n", gen.n, "node count")->required();
  gen_cmd->add_option("--p", gen.p, "edge probability (erdos-renyi)");
  gen_cmd->add_option("--support", gen.support, "support size (discrete)");
  gen_cmd->add_option("--samples", gen.samples, "sample count (empirical)");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", gen.out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand(cen_cmd)) {
      if (cen.family.empty() == cen.eta_path.empty())
        throw std::invalid_argument("centrality: need exactly one of --family or --eta");
      return run_centrality(cen);
    }
    if (app.got_subcommand(was_cmd)) return run_wasserstein(was);
    if (app.got_subcommand(tv_cmd)) {
      const int sources = (!tv.family.empty()) + (!tv.eta_path.empty()) +
                          (!tv.centrality_path.empty());
      if (sources != 1)
        throw std::invalid_argument(
            "tv: need exactly one of --family, --eta, or --centrality");
      return run_tv(tv);
    }
    if (app.got_subcommand(ver_cmd)) return run_verify(ver);
    if (app.got_subcommand(gen_cmd)) return run_gen(gen);
  } catch (const LimitError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kGuard;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
