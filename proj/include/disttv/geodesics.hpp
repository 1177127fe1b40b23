#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include <Eigen/Core>

#include "disttv/errors.hpp"
#include "disttv/graph.hpp"
#include "disttv/parallel.hpp"

namespace disttv {

/// Shortest-path counts for every unordered node pair, plus per-edge
/// traversal counts. Pairs {s, t} with s < t are indexed lexicographically.
struct GeodesicCounts {
  int node_count = 0;
  int pair_count = 0;  // n(n-1)/2
  Eigen::MatrixXi dist;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> sigma_all;  // (s,t) -> #geodesics
  std::vector<std::int64_t> sigma;                                        // per pair
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> sigma_edge;  // pair x edge

  static int pair_index(int n, int s, int t) {
    if (s > t) std::swap(s, t);
    return s * n - s * (s + 1) / 2 + (t - s - 1);
  }
};

namespace detail {

inline void bfs_count_paths(const Graph& g, int source, Eigen::MatrixXi& dist,
                            Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& sigma) {
  const int n = g.node_count();
  for (int v = 0; v < n; ++v) {
    dist(source, v) = -1;
    sigma(source, v) = 0;
  }
  dist(source, source) = 0;
  sigma(source, source) = 1;
  std::queue<int> frontier;
  frontier.push(source);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (const int w : g.neighbors(u)) {
      if (dist(source, w) < 0) {
        dist(source, w) = dist(source, u) + 1;
        frontier.push(w);
      }
      if (dist(source, w) == dist(source, u) + 1) {
        std::int64_t out;
        if (__builtin_add_overflow(sigma(source, w), sigma(source, u), &out))
          throw LimitError("geodesic count overflow");
        sigma(source, w) = out;
      }
    }
  }
}

}  // namespace detail

inline GeodesicCounts geodesic_counts(const Graph& g) {
  const int n = g.node_count();
  const int m = g.edge_count();
  GeodesicCounts gc;
  gc.node_count = n;
  gc.pair_count = n * (n - 1) / 2;
  gc.dist.resize(n, n);
  gc.sigma_all.resize(n, n);
  parallel_for(n, [&](int source) { detail::bfs_count_paths(g, source, gc.dist, gc.sigma_all); });

  gc.sigma.assign(static_cast<size_t>(gc.pair_count), 0);
  gc.sigma_edge.setZero(gc.pair_count, m);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      const int p = GeodesicCounts::pair_index(n, s, t);
      const std::int64_t total = gc.sigma_all(s, t);
      gc.sigma[static_cast<size_t>(p)] = total;
      const int d = gc.dist(s, t);
      const auto checked_product = [](std::int64_t a, std::int64_t b) {
        std::int64_t out;
        if (__builtin_mul_overflow(a, b, &out)) throw LimitError("geodesic count overflow");
        return out;
      };
      for (int e = 0; e < m; ++e) {
        const Edge& edge = g.edge(e);
        std::int64_t through = 0;
        // Edge traversed u -> v (u on the s side) or v -> u.
        if (gc.dist(s, edge.u) + 1 + gc.dist(t, edge.v) == d)
          through += checked_product(gc.sigma_all(s, edge.u), gc.sigma_all(t, edge.v));
        if (gc.dist(s, edge.v) + 1 + gc.dist(t, edge.u) == d)
          through += checked_product(gc.sigma_all(s, edge.v), gc.sigma_all(t, edge.u));
        gc.sigma_edge(p, e) = through;
      }
    }
  }
  return gc;
}

/// All geodesics between s and t, each as an edge subset, in a deterministic
/// order. Used to materialize the geodesic-pair subtree family explicitly.
inline std::vector<EdgeSubset> enumerate_geodesics(const Graph& g, int s, int t,
                                                   std::int64_t limit = 1'000'000) {
  const int n = g.node_count();
  if (s < 0 || s >= n || t < 0 || t >= n || s == t)
    throw std::invalid_argument("enumerate_geodesics: bad node pair");
  Eigen::MatrixXi dist(n, n);
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> sigma(n, n);
  detail::bfs_count_paths(g, s, dist, sigma);

  std::vector<EdgeSubset> out;
  std::vector<int> path_edges;
  // Walk back from t along strictly decreasing BFS levels.
  const auto descend = [&](auto&& self, int node) -> void {
    if (node == s) {
      EdgeSubset subset{path_edges};
      std::sort(subset.indices.begin(), subset.indices.end());
      if (static_cast<std::int64_t>(out.size()) >= limit)
        throw LimitError("geodesic enumeration exceeds limit");
      out.push_back(std::move(subset));
      return;
    }
    for (const int prev : g.neighbors(node)) {
      if (dist(s, prev) + 1 == dist(s, node)) {
        path_edges.push_back(g.edge_index(prev, node));
        self(self, prev);
        path_edges.pop_back();
      }
    }
  };
  descend(descend, t);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace disttv
