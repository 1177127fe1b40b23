#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "disttv/centrality.hpp"
#include "disttv/joint.hpp"
#include "disttv/marginals.hpp"
#include "disttv/oracles.hpp"
#include "disttv/parallel.hpp"
#include "disttv/transport.hpp"

namespace disttv {

using Signal = Eigen::VectorXd;

/// Squared total variation of an ordinary signal: the sum over edges of the
/// squared endpoint difference.
template <typename Derived>
double tv_signal(const Graph& g, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != g.node_count())
    throw std::invalid_argument("tv_signal: signal length != node count");
  double acc = 0.0;
  for (const Edge& e : g.edges()) {
    const double d = static_cast<double>(x(e.u)) - static_cast<double>(x(e.v));
    acc += d * d;
  }
  return acc;
}

/// Expected total variation of a joint over a finite product support:
/// sum of mass times the per-tuple edge cost.
inline double tv_joint_discrete(const Graph& g, const JointDistribution& mu,
                                const EdgeCostTables& costs) {
  if (mu.node_count() != g.node_count())
    throw std::invalid_argument("tv_joint_discrete: joint covers wrong node count");
  if (static_cast<int>(costs.size()) != g.edge_count())
    throw std::invalid_argument("tv_joint_discrete: one cost table per edge required");
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (costs[static_cast<size_t>(e)].rows() != mu.support_sizes()[static_cast<size_t>(edge.u)] ||
        costs[static_cast<size_t>(e)].cols() != mu.support_sizes()[static_cast<size_t>(edge.v)])
      throw std::invalid_argument("tv_joint_discrete: cost table shape mismatch on edge " +
                                  std::to_string(e));
  }
  double acc = 0.0;
  for (const auto& [tuple, p] : mu.mass()) {
    double edge_cost = 0.0;
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& edge = g.edge(e);
      edge_cost += costs[static_cast<size_t>(e)](tuple[static_cast<size_t>(edge.u)],
                                                 tuple[static_cast<size_t>(edge.v)]);
    }
    acc += p * edge_cost;
  }
  return acc;
}

/// On a tree the coupling infimum decomposes edge by edge, so the total
/// variation of the marginals is the plain sum of per-edge closed-form W^2.
inline double tv_tree_marginals(const Graph& tree, const MarginalSet& ns) {
  if (!tree.is_tree()) throw std::invalid_argument("tv_tree_marginals: graph is not a tree");
  if (ns.node_count() != tree.node_count())
    throw std::invalid_argument("tv_tree_marginals: marginal count != node count");
  double acc = 0.0;
  for (const Edge& e : tree.edges()) acc += ns.w2_between(e.u, e.v);
  return acc;
}

/// Exact-rational variant for discrete marginals; pairs with the exact LP
/// oracle in equality tests.
inline Rational tv_tree_marginals_exact(const Graph& tree, const MarginalSet& ns) {
  if (!tree.is_tree()) throw std::invalid_argument("tv_tree_marginals_exact: graph is not a tree");
  if (ns.kind() != MarginalKind::discrete)
    throw std::invalid_argument("tv_tree_marginals_exact: needs discrete marginals");
  if (ns.node_count() != tree.node_count())
    throw std::invalid_argument("tv_tree_marginals_exact: marginal count != node count");
  const RationalMatrix weights = ns.rational_weights();
  Rational acc(0);
  for (const Edge& e : tree.edges())
    acc += w2_discrete(weights.row(e.u).transpose(), weights.row(e.v).transpose());
  return acc;
}

/// T_eta as the inner product of an edge centrality with the Wasserstein
/// edge vector. Any centrality is accepted, so closed-form families work
/// without materializing their subtree distribution.
inline double tv_eta(const Graph& g, const EdgeCentrality& c, const MarginalSet& ns) {
  if (c.size() != g.edge_count())
    throw std::invalid_argument("tv_eta: centrality length != edge count");
  return c.dot(wasserstein_edge_vector(g, ns));
}

struct TvDirectOptions {
  bool use_lp_oracle = false;  // discrete marginals only: solve each subtree's LP
  std::int64_t lp_guard = 4096;
};

/// T_eta by direct expectation: sum over subtree atoms of p(T) times the
/// total variation of the marginals restricted to T's nodes.
inline double tv_eta_direct(const Graph& g, const SubtreeDistribution& eta,
                            const MarginalSet& ns, const TvDirectOptions& options = {}) {
  if (eta.edge_count() != g.edge_count())
    throw std::invalid_argument("tv_eta_direct: eta belongs to a different graph");
  if (ns.node_count() != g.node_count())
    throw std::invalid_argument("tv_eta_direct: marginal count != node count");
  if (options.use_lp_oracle && ns.kind() != MarginalKind::discrete)
    throw std::invalid_argument("tv_eta_direct: LP oracle needs discrete marginals");

  const auto& atoms = eta.atoms();
  std::vector<double> terms(atoms.size(), 0.0);
  parallel_for(static_cast<int>(atoms.size()), [&](int i) {
    const auto& atom = atoms[static_cast<size_t>(i)];
    if (atom.edges.empty() || atom.p == 0.0) return;
    const SubgraphView sub = subtree_graph(g, atom.edges);
    const MarginalSet restricted = ns.restricted_to(sub.original_nodes);
    terms[static_cast<size_t>(i)] =
        options.use_lp_oracle
            ? lp_min_tv_marginals(sub.graph, restricted, options.lp_guard).value
            : tv_tree_marginals(sub.graph, restricted);
  });
  // Index-ordered reduction: bit-identical for every thread count.
  double acc = 0.0;
  for (size_t i = 0; i < atoms.size(); ++i) acc += atoms[i].p * terms[i];
  return acc;
}

/// Composes per-edge optimal couplings along the tree oriented away from the
/// root into one joint distribution, factorized as a Bayesian network of
/// child-given-parent conditionals. Its pairwise marginal on every tree edge
/// is that edge's optimal coupling, so its expected total variation equals
/// tv_tree_marginals: the coupling infimum on a tree is attained.
inline JointDistribution tree_coupling(const Graph& tree, int root, const MarginalSet& ns,
                                       std::int64_t max_atoms = 1'000'000) {
  if (!tree.is_tree()) throw std::invalid_argument("tree_coupling: graph is not a tree");
  if (root < 0 || root >= tree.node_count())
    throw std::invalid_argument("tree_coupling: root out of range");
  if (ns.kind() != MarginalKind::discrete)
    throw std::invalid_argument("tree_coupling: needs discrete marginals");
  if (ns.node_count() != tree.node_count())
    throw std::invalid_argument("tree_coupling: marginal count != node count");
  const int support = ns.atom_count();
  if (support > 16) throw LimitError("tree_coupling: support larger than 16");
  const int n = tree.node_count();

  // Optimal coupling per edge, in canonical (u < v) orientation.
  std::vector<Eigen::MatrixXd> couplings;
  couplings.reserve(static_cast<size_t>(tree.edge_count()));
  for (const Edge& e : tree.edges())
    couplings.push_back(
        w2_oracle_discrete(ns.weights().row(e.u).transpose(), ns.weights().row(e.v).transpose())
            .coupling.weights);

  // BFS orientation away from the root.
  std::vector<int> order, parent(static_cast<size_t>(n), -1);
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::queue<int> frontier;
  frontier.push(root);
  seen[static_cast<size_t>(root)] = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    order.push_back(u);
    for (const int v : tree.neighbors(u)) {
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = 1;
        parent[static_cast<size_t>(v)] = u;
        frontier.push(v);
      }
    }
  }

  // Extend partial tuples node by node in BFS order; the parent's value is
  // always set before the child's conditional is applied. Where a parent atom
  // carries no coupling mass (zero weight, or weight below the
  // rationalization granularity), the child keeps its own marginal: any
  // choice on a zero-mass event leaves the joint unchanged, and this one
  // keeps every conditional a valid pmf.
  struct State {
    std::vector<int> values;  // indexed by node id, -1 when unset
    double mass = 0.0;
  };
  std::vector<State> states;
  for (int k = 0; k < support; ++k) {
    const double p = ns.weights()(root, k);
    if (p <= 0.0) continue;
    State s;
    s.values.assign(static_cast<size_t>(n), -1);
    s.values[static_cast<size_t>(root)] = k;
    s.mass = p;
    states.push_back(std::move(s));
  }
  for (size_t oi = 1; oi < order.size(); ++oi) {
    const int child = order[oi];
    const int par = parent[static_cast<size_t>(child)];
    const int e = tree.edge_index(par, child);
    const Eigen::MatrixXd& cpl = couplings[static_cast<size_t>(e)];
    const bool parent_is_row = tree.edge(e).u == par;
    std::vector<State> next;
    next.reserve(states.size());
    for (const State& s : states) {
      const int k = s.values[static_cast<size_t>(par)];
      double denom = 0.0;
      for (int l = 0; l < support; ++l)
        denom += parent_is_row ? cpl(k, l) : cpl(l, k);
      for (int l = 0; l < support; ++l) {
        const double w =
            denom > 0.0 ? (parent_is_row ? cpl(k, l) : cpl(l, k)) / denom : ns.weights()(child, l);
        if (w <= 0.0) continue;
        State t = s;
        t.values[static_cast<size_t>(child)] = l;
        t.mass = s.mass * w;
        next.push_back(std::move(t));
        if (static_cast<std::int64_t>(next.size()) > max_atoms)
          throw LimitError("tree_coupling: joint support exceeds limit");
      }
    }
    states = std::move(next);
  }

  std::map<std::vector<int>, double> mass;
  for (auto& s : states) mass[std::move(s.values)] = s.mass;
  return JointDistribution(std::vector<int>(static_cast<size_t>(n), support), std::move(mass));
}

}  // namespace disttv
