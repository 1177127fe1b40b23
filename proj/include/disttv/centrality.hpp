#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "disttv/geodesics.hpp"
#include "disttv/graph.hpp"
#include "disttv/random.hpp"
#include "disttv/subtrees.hpp"
#include "disttv/tree_count.hpp"

namespace disttv {

/// An edge centrality is an EdgeVector with nonnegative entries; images of
/// subtree distributions additionally lie in [0, 1] per edge.
using EdgeCentrality = EdgeVector;

/// Every edge weighted 1/|E|.
inline EdgeCentrality constant_centrality(const Graph& g) {
  return EdgeCentrality::Constant(g.edge_count(), 1.0 / g.edge_count());
}

/// Average over unordered node pairs of the fraction of the pair's geodesics
/// that traverse the edge.
inline EdgeCentrality betweenness_centrality(const Graph& g) {
  const GeodesicCounts gc = geodesic_counts(g);
  EdgeCentrality c = EdgeCentrality::Zero(g.edge_count());
  for (int p = 0; p < gc.pair_count; ++p) {
    const double total = static_cast<double>(gc.sigma[static_cast<size_t>(p)]);
    for (int e = 0; e < g.edge_count(); ++e)
      c(e) += static_cast<double>(gc.sigma_edge(p, e)) / total;
  }
  return c / static_cast<double>(gc.pair_count);
}

/// Fraction of spanning trees containing each edge, from exact counts.
inline EdgeCentrality spanning_tree_centrality(const Graph& g) {
  const std::uint64_t total = count_spanning_trees(g);
  EdgeCentrality c(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e)
    c(e) = static_cast<double>(count_spanning_trees_with_edge(g, e)) /
           static_cast<double>(total);
  return c;
}

// ---------------------------------------------------------------------------
// Explicit subtree distributions
// ---------------------------------------------------------------------------

struct SubtreeAtom {
  EdgeSubset edges;
  double p = 0.0;
};

/// Explicit probability distribution on subtrees of one graph. Atoms with an
/// empty edge set are legal (single-node trees in input files); they carry
/// mass but touch no edge, so they contribute nothing downstream.
class SubtreeDistribution {
 public:
  SubtreeDistribution(const Graph& g, std::vector<SubtreeAtom> atoms)
      : edge_count_(g.edge_count()), atoms_(std::move(atoms)) {
    double total = 0.0;
    for (auto& atom : atoms_) {
      if (!(atom.p >= 0.0) || !std::isfinite(atom.p))
        throw std::invalid_argument("eta: negative or non-finite probability");
      total += atom.p;
      if (atom.edges.empty()) {
        ++edgeless_;
        continue;
      }
      if (!atom.edges.indices.empty() &&
          (atom.edges.indices.front() < 0 || atom.edges.indices.back() >= edge_count_))
        throw std::invalid_argument("eta: edge index out of range");
      if (!is_subtree(g, atom.edges))
        throw std::invalid_argument("eta: edge set is not a subtree");
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("eta: probabilities sum to " + std::to_string(total));
  }

  const std::vector<SubtreeAtom>& atoms() const noexcept { return atoms_; }
  int edge_count() const noexcept { return edge_count_; }
  int edgeless_atoms() const noexcept { return edgeless_; }

 private:
  int edge_count_ = 0;
  int edgeless_ = 0;
  std::vector<SubtreeAtom> atoms_;
};

enum class EtaFamily { single_edge_uniform, geodesic_pairs, spanning_tree_uniform };

inline std::string to_string(EtaFamily family) {
  switch (family) {
    case EtaFamily::single_edge_uniform: return "single-edge-uniform";
    case EtaFamily::geodesic_pairs: return "geodesic-pairs";
    case EtaFamily::spanning_tree_uniform: return "spanning-tree-uniform";
  }
  return "?";
}

inline EtaFamily eta_family_from_string(const std::string& name) {
  if (name == "single-edge-uniform") return EtaFamily::single_edge_uniform;
  if (name == "geodesic-pairs") return EtaFamily::geodesic_pairs;
  if (name == "spanning-tree-uniform") return EtaFamily::spanning_tree_uniform;
  throw std::invalid_argument("unknown eta family '" + name + "'");
}

/// Materializes a named family as an explicit distribution:
///  - single-edge-uniform:   each edge subtree with mass 1/m
///  - geodesic-pairs:        pick a node pair uniformly, then one of its
///                           geodesics uniformly
///  - spanning-tree-uniform: uniform over all spanning trees
inline SubtreeDistribution eta_for_family(const Graph& g, EtaFamily family,
                                          std::int64_t limit = 1'000'000) {
  std::vector<SubtreeAtom> atoms;
  switch (family) {
    case EtaFamily::single_edge_uniform: {
      const double p = 1.0 / g.edge_count();
      for (int e = 0; e < g.edge_count(); ++e)
        atoms.push_back(SubtreeAtom{EdgeSubset{{e}}, p});
      break;
    }
    case EtaFamily::geodesic_pairs: {
      const int n = g.node_count();
      const double pair_weight = 2.0 / (static_cast<double>(n) * (n - 1));
      std::map<EdgeSubset, double> acc;
      for (int s = 0; s < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
          const auto paths = enumerate_geodesics(g, s, t, limit);
          const double each = pair_weight / static_cast<double>(paths.size());
          for (const auto& path : paths) acc[path] += each;
          if (static_cast<std::int64_t>(acc.size()) > limit)
            throw LimitError("eta_for_family: geodesic family exceeds limit");
        }
      }
      for (auto& [subset, p] : acc) atoms.push_back(SubtreeAtom{subset, p});
      break;
    }
    case EtaFamily::spanning_tree_uniform: {
      auto trees = enumerate_spanning_trees(g, limit);
      const double p = 1.0 / static_cast<double>(trees.size());
      for (auto& tree : trees) atoms.push_back(SubtreeAtom{std::move(tree), p});
      break;
    }
  }
  return SubtreeDistribution(g, std::move(atoms));
}

/// phi_G(eta): entry e is the probability that a subtree drawn from eta
/// contains e.
inline EdgeCentrality centrality_from_eta(const Graph& g, const SubtreeDistribution& eta) {
  if (eta.edge_count() != g.edge_count())
    throw std::invalid_argument("centrality_from_eta: eta belongs to a different graph");
  EdgeCentrality c = EdgeCentrality::Zero(g.edge_count());
  for (const auto& atom : eta.atoms())
    for (const int e : atom.edges.indices) c(e) += atom.p;
  return c;
}

// ---------------------------------------------------------------------------
// Uniqueness construction: probe signals and centrality recovery
// ---------------------------------------------------------------------------

/// m probe signals and the m x m matrix of their per-edge squared
/// differences. Invertibility is certified by a reciprocal condition
/// estimate, standing in for exact nonvanishing of the determinant.
struct ProbeSystem {
  Eigen::MatrixXd signals;  // one probe per row, m x n
  Eigen::MatrixXd y;        // y(i, e) = squared difference of probe i across edge e
  bool invertible = false;
  double rcond = 0.0;
  int draws = 0;
};

inline ProbeSystem make_probe_system(const Graph& g, const Eigen::MatrixXd& signals,
                                     double min_rcond = 1e-10) {
  const int m = g.edge_count();
  if (signals.rows() != m || signals.cols() != g.node_count())
    throw std::invalid_argument("make_probe_system: need one length-n signal per edge");
  ProbeSystem ps;
  ps.signals = signals;
  ps.y.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int e = 0; e < m; ++e) {
      const Edge& edge = g.edge(e);
      const double d = signals(i, edge.u) - signals(i, edge.v);
      ps.y(i, e) = d * d;
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(ps.y);
  ps.rcond = lu.rcond();
  ps.invertible = std::isfinite(ps.rcond) && ps.rcond > min_rcond;
  ps.draws = 1;
  return ps;
}

/// Draws random probe signals until the difference matrix Y is comfortably
/// invertible; a nondegenerate draw exists, so a handful of retries suffices
/// in practice.
inline ProbeSystem probe_matrix(const Graph& g, std::uint64_t seed, int retry_budget = 32,
                                double min_rcond = 1e-10) {
  std::mt19937_64 rng(seed);
  const int m = g.edge_count();
  const int n = g.node_count();
  for (int attempt = 1; attempt <= retry_budget; ++attempt) {
    Eigen::MatrixXd signals(m, n);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < n; ++k) signals(i, k) = uniform01(rng);
    ProbeSystem ps = make_probe_system(g, signals, min_rcond);
    ps.draws = attempt;
    if (ps.invertible) return ps;
  }
  throw std::runtime_error("probe_matrix: no invertible probe system within " +
                           std::to_string(retry_budget) + " draws");
}

/// Solves Y C = t for the centrality C. For t produced by any centrality
/// via t_i = sum_e C(e) (x_i(k) - x_i(l))^2, this inverts the probe map.
inline EdgeCentrality recover_centrality(const Graph& g, const ProbeSystem& probes,
                                         const Eigen::Ref<const Eigen::VectorXd>& tv_values) {
  if (!probes.invertible)
    throw std::invalid_argument("recover_centrality: probe system is not invertible");
  if (probes.y.rows() != g.edge_count() || tv_values.size() != g.edge_count())
    throw std::invalid_argument("recover_centrality: dimension mismatch");
  return Eigen::PartialPivLU<Eigen::MatrixXd>(probes.y).solve(tv_values);
}

}  // namespace disttv
