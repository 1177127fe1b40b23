#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "disttv/centrality.hpp"
#include "disttv/graph.hpp"
#include "disttv/marginals.hpp"
#include "disttv/random.hpp"

namespace disttv {

/// Erdos-Renyi draw retried until connected.
inline Graph random_connected_graph(int n, double edge_probability, std::mt19937_64& rng,
                                    int max_attempts = 1000) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (uniform01(rng) < edge_probability) edges.push_back(Edge{i, j});
    try {
      return Graph(n, std::move(edges));
    } catch (const std::invalid_argument&) {
      continue;  // disconnected draw
    }
  }
  throw LimitError("random_connected_graph: no connected draw within retry budget");
}

/// Uniform random labeled tree via a Prufer sequence.
inline Graph random_tree(int n, std::mt19937_64& rng) {
  if (n < 2) throw std::invalid_argument("random_tree: need at least 2 nodes");
  if (n == 2) return Graph(2, {Edge{0, 1}});
  std::vector<int> prufer(static_cast<size_t>(n - 2));
  for (auto& x : prufer) x = static_cast<int>(uniform_int(rng, 0, n - 1));
  std::vector<int> degree(static_cast<size_t>(n), 1);
  for (const int x : prufer) ++degree[static_cast<size_t>(x)];
  std::vector<Edge> edges;
  std::vector<char> used(static_cast<size_t>(n), 0);
  for (const int x : prufer) {
    for (int leaf = 0; leaf < n; ++leaf) {
      if (degree[static_cast<size_t>(leaf)] == 1 && !used[static_cast<size_t>(leaf)]) {
        edges.push_back(Edge{leaf, x});
        used[static_cast<size_t>(leaf)] = 1;
        --degree[static_cast<size_t>(x)];
        break;
      }
    }
  }
  int a = -1, b = -1;
  for (int v = 0; v < n; ++v) {
    if (!used[static_cast<size_t>(v)] && degree[static_cast<size_t>(v)] == 1) {
      (a < 0 ? a : b) = v;
    }
  }
  edges.push_back(Edge{a, b});
  return Graph(n, std::move(edges));
}

/// Discrete marginal set with weights on the grid k/denominator, so the
/// rationalization used by the exact oracles recovers them exactly.
inline MarginalSet random_discrete_marginals(int n, int support, std::mt19937_64& rng,
                                             int denominator = 24) {
  Eigen::MatrixXd weights(n, support);
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> cuts{0, denominator};
    for (int k = 1; k < support; ++k) cuts.push_back(uniform_int(rng, 0, denominator));
    std::sort(cuts.begin(), cuts.end());
    for (int k = 0; k < support; ++k)
      weights(i, k) = static_cast<double>(cuts[static_cast<size_t>(k + 1)] -
                                          cuts[static_cast<size_t>(k)]) /
                      denominator;
  }
  std::vector<std::string> support_labels;
  for (int k = 0; k < support; ++k) support_labels.push_back("s" + std::to_string(k + 1));
  return MarginalSet::discrete(std::move(support_labels), std::move(weights));
}

inline MarginalSet random_gaussian_marginals(int n, std::mt19937_64& rng) {
  std::vector<GaussianMarginal> ms;
  ms.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    ms.push_back(GaussianMarginal{2.0 * uniform01(rng) - 1.0, 0.1 + uniform01(rng)});
  return MarginalSet::gaussian(std::move(ms));
}

inline MarginalSet random_empirical_marginals(int n, int samples, std::mt19937_64& rng) {
  Eigen::MatrixXd data(n, samples);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < samples; ++k) data(i, k) = 2.0 * uniform01(rng) - 1.0;
  return MarginalSet::empirical(std::move(data));
}

/// Random explicit distribution over the given subtrees (positive weights,
/// normalized; the largest atom absorbs the float rounding residue).
inline SubtreeDistribution random_eta(const Graph& g, const std::vector<EdgeSubset>& subtrees,
                                      std::mt19937_64& rng) {
  if (subtrees.empty()) throw std::invalid_argument("random_eta: no subtrees");
  std::vector<double> w(subtrees.size());
  double sum = 0.0;
  for (auto& x : w) {
    x = uniform01(rng) + 1e-3;
    sum += x;
  }
  size_t largest = 0;
  double normalized_sum = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    w[i] /= sum;
    normalized_sum += w[i];
    if (w[i] > w[largest]) largest = i;
  }
  w[largest] += 1.0 - normalized_sum;
  std::vector<SubtreeAtom> atoms;
  atoms.reserve(subtrees.size());
  for (size_t i = 0; i < subtrees.size(); ++i)
    atoms.push_back(SubtreeAtom{subtrees[i], w[i]});
  return SubtreeDistribution(g, std::move(atoms));
}

/// Random edge centrality with entries in [0, 1).
inline EdgeCentrality random_centrality(int edge_count, std::mt19937_64& rng) {
  EdgeCentrality c(edge_count);
  for (int e = 0; e < edge_count; ++e) c(e) = uniform01(rng);
  return c;
}

}  // namespace disttv
