#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "disttv/oracles.hpp"
#include "disttv/sampling.hpp"
#include "disttv/subtrees.hpp"
#include "disttv/tv.hpp"

namespace disttv {

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  int lp_trials = 3;  // trials additionally cross-checked with the per-subtree LP oracle
  std::int64_t subtree_limit = 1'000'000;
  std::int64_t lp_guard = 4096;
  int max_nodes = 6;
};

struct VerifyReport {
  bool pass = false;
  int trials = 0;
  double max_dev_identity = 0.0;  // inner product vs direct expectation (closed form)
  double max_dev_lp = 0.0;        // inner product vs direct expectation (LP per subtree)
  std::vector<std::string> lines;
  std::string summary;
};

namespace detail {

inline std::string format_line(const char* fmt, double a) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a);
  return buf;
}

}  // namespace detail

/// Randomized end-to-end check of the identity T_eta(N) = <phi_G(eta), W_N>:
/// each trial draws an explicit eta over all subtrees and a random discrete
/// marginal set, then compares the inner-product route against the direct
/// expectation (and, for the first lp_trials trials, against the exact LP
/// solved subtree by subtree).
inline VerifyReport verify_centrality_identity(const Graph& g, const VerifyOptions& options = {}) {
  if (g.node_count() > options.max_nodes)
    throw LimitError("verify: graph has " + std::to_string(g.node_count()) +
                     " nodes; exact verification is capped at " +
                     std::to_string(options.max_nodes));
  const auto subtrees = enumerate_subtrees(g, options.subtree_limit);
  std::mt19937_64 rng(options.seed);

  VerifyReport report;
  report.trials = options.trials;
  for (int trial = 0; trial < options.trials; ++trial) {
    const SubtreeDistribution eta = random_eta(g, subtrees, rng);
    const int support = 2 + static_cast<int>(uniform_int(rng, 0, 1));
    const MarginalSet ns = random_discrete_marginals(g.node_count(), support, rng);
    const EdgeCentrality c = centrality_from_eta(g, eta);
    const double inner = tv_eta(g, c, ns);
    const double direct = tv_eta_direct(g, eta, ns);
    report.max_dev_identity = std::max(report.max_dev_identity, std::abs(inner - direct));
    if (trial < options.lp_trials) {
      TvDirectOptions lp_opt;
      lp_opt.use_lp_oracle = true;
      lp_opt.lp_guard = options.lp_guard;
      const double direct_lp = tv_eta_direct(g, eta, ns, lp_opt);
      report.max_dev_lp = std::max(report.max_dev_lp, std::abs(inner - direct_lp));
    }
  }
  report.pass = report.max_dev_identity <= options.tolerance &&
                report.max_dev_lp <= options.tolerance;
  report.lines.push_back(
      detail::format_line("centrality identity (closed form): max deviation %.3e", report.max_dev_identity));
  if (options.lp_trials > 0)
    report.lines.push_back(
        detail::format_line("centrality identity (LP oracle):   max deviation %.3e", report.max_dev_lp));

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "verify nodes=%d edges=%d subtrees=%zu trials=%d max_dev=%.3e max_dev_lp=%.3e status=%s",
                g.node_count(), g.edge_count(), subtrees.size(), options.trials,
                report.max_dev_identity, report.max_dev_lp, report.pass ? "PASS" : "FAIL");
  report.summary = buf;
  return report;
}

struct WassersteinCheckReport {
  bool pass = false;
  int trials = 0;
  double max_dev_empirical = 0.0;  // closed form vs permutation assignment and vs LP
  double max_dev_discrete = 0.0;   // closed form vs LP
  std::vector<std::string> lines;
};

/// Closed-form W^2 formulas against their independent oracles on random
/// instances (empirical: permutation assignment plus the transport LP;
/// discrete: the transport LP).
inline WassersteinCheckReport verify_wasserstein_forms(int trials, std::uint64_t seed,
                                                       double tolerance = 1e-9) {
  std::mt19937_64 rng(seed);
  WassersteinCheckReport report;
  report.trials = trials;
  for (int i = 0; i < trials; ++i) {
    const int n = 1 + static_cast<int>(uniform_int(rng, 0, 5));
    Eigen::VectorXd a(n), b(n);
    for (int k = 0; k < n; ++k) {
      a(k) = uniform01(rng) * 2 - 1;
      b(k) = uniform01(rng) * 2 - 1;
    }
    Eigen::VectorXd sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double closed = w2_empirical(sa, sb);
    report.max_dev_empirical = std::max(
        report.max_dev_empirical, std::abs(closed - assignment_oracle_empirical(a, b)));
    report.max_dev_empirical = std::max(
        report.max_dev_empirical, std::abs(closed - w2_oracle_empirical(sa, sb).value));

    const int support = 2 + static_cast<int>(uniform_int(rng, 0, 4));
    const MarginalSet ms = random_discrete_marginals(2, support, rng, 60);
    const double closed_d = w2_discrete(ms.weights().row(0), ms.weights().row(1));
    const TransportPlan plan = w2_oracle_discrete(ms.weights().row(0).transpose(),
                                                  ms.weights().row(1).transpose());
    report.max_dev_discrete = std::max(report.max_dev_discrete, std::abs(closed_d - plan.value));
  }
  report.pass =
      report.max_dev_empirical <= tolerance && report.max_dev_discrete <= tolerance;
  report.lines.push_back(detail::format_line(
      "closed-form empirical W2 vs oracles:  max deviation %.3e", report.max_dev_empirical));
  report.lines.push_back(detail::format_line(
      "closed-form discrete W2 vs LP oracle: max deviation %.3e", report.max_dev_discrete));
  return report;
}

struct TreeDecompositionReport {
  bool pass = false;
  int trials = 0;
  int exact_matches = 0;          // LP optimum == closed-form sum, exact rationals
  double max_dev_coupling = 0.0;  // attainment by the composed tree coupling
  std::vector<std::string> lines;
};

/// Both directions of the tree decomposition: the exact multimarginal LP
/// equals the per-edge closed-form sum (rational equality), and the composed
/// Bayesian-network coupling attains that value.
inline TreeDecompositionReport verify_tree_decomposition(int trials, std::uint64_t seed,
                                         double tolerance = 1e-9) {
  std::mt19937_64 rng(seed);
  TreeDecompositionReport report;
  report.trials = trials;
  for (int i = 0; i < trials; ++i) {
    const int n = 2 + static_cast<int>(uniform_int(rng, 0, 3));
    const Graph tree = random_tree(n, rng);
    const int support = 2 + static_cast<int>(uniform_int(rng, 0, 1));
    const MarginalSet ms = random_discrete_marginals(n, support, rng, 48);
    if (lp_min_tv_marginals(tree, ms).exact_value == tv_tree_marginals_exact(tree, ms))
      ++report.exact_matches;
    const int root = static_cast<int>(uniform_int(rng, 0, n - 1));
    const JointDistribution joint = tree_coupling(tree, root, ms);
    const double attained = tv_joint_discrete(tree, joint, discrete_cost_tables(tree, support));
    report.max_dev_coupling = std::max(report.max_dev_coupling,
                                       std::abs(attained - tv_tree_marginals(tree, ms)));
  }
  report.pass = report.exact_matches == trials && report.max_dev_coupling <= tolerance;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "tree decomposition (exact LP == closed form): %d/%d instances",
                report.exact_matches, report.trials);
  report.lines.push_back(buf);
  report.lines.push_back(detail::format_line(
      "tree coupling attainment:             max deviation %.3e", report.max_dev_coupling));
  return report;
}

}  // namespace disttv
