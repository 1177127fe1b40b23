#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "disttv/errors.hpp"
#include "disttv/graph.hpp"
#include "disttv/rational.hpp"

namespace disttv {

namespace detail {

// Bareiss fraction-free elimination over checked 128-bit integers. Every
// intermediate entry is an exact minor, so divisions are exact. Returns the
// determinant; `a` is row-major n x n.
inline Int128 bareiss_determinant(std::vector<Int128> a, int n) {
  if (n == 0) return 1;
  int sign = 1;
  Int128 prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[static_cast<size_t>(k) * n + k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a[static_cast<size_t>(r) * n + k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<size_t>(k) * n + j], a[static_cast<size_t>(swap_row) * n + j]);
      sign = -sign;
    }
    const Int128 pivot = a[static_cast<size_t>(k) * n + k];
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        const Int128 num = checked_sub(
            checked_mul(a[static_cast<size_t>(i) * n + j], pivot),
            checked_mul(a[static_cast<size_t>(i) * n + k], a[static_cast<size_t>(k) * n + j]));
        a[static_cast<size_t>(i) * n + j] = num / prev;  // exact by Bareiss
      }
      a[static_cast<size_t>(i) * n + k] = 0;
    }
    prev = pivot;
  }
  const Int128 det = a[static_cast<size_t>(n - 1) * n + (n - 1)];
  return sign > 0 ? det : -det;
}

inline std::uint64_t laplacian_minor_count(const std::vector<std::vector<Int128>>& laplacian) {
  const int n = static_cast<int>(laplacian.size());
  const int r = n - 1;  // drop the last row and column
  std::vector<Int128> minor(static_cast<size_t>(r) * r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      minor[static_cast<size_t>(i) * r + j] = laplacian[static_cast<size_t>(i)][static_cast<size_t>(j)];
  const Int128 det = bareiss_determinant(std::move(minor), r);
  if (det < 0) throw std::logic_error("matrix-tree minor came out negative");
  if (det > static_cast<Int128>(std::numeric_limits<std::uint64_t>::max()))
    throw LimitError("spanning-tree count exceeds 64-bit range");
  return static_cast<std::uint64_t>(det);
}

}  // namespace detail

/// Exact number of spanning trees via a fraction-free determinant of the
/// reduced Laplacian. Counts above 2^64-1 (and instances with more than 64
/// nodes) raise LimitError rather than approximating.
inline std::uint64_t count_spanning_trees(const Graph& g) {
  const int n = g.node_count();
  if (n > 64) throw LimitError("count_spanning_trees: hard cap of 64 nodes exceeded");
  std::vector<std::vector<Int128>> lap(static_cast<size_t>(n),
                                       std::vector<Int128>(static_cast<size_t>(n), 0));
  for (const Edge& e : g.edges()) {
    lap[static_cast<size_t>(e.u)][static_cast<size_t>(e.u)] += 1;
    lap[static_cast<size_t>(e.v)][static_cast<size_t>(e.v)] += 1;
    lap[static_cast<size_t>(e.u)][static_cast<size_t>(e.v)] -= 1;
    lap[static_cast<size_t>(e.v)][static_cast<size_t>(e.u)] -= 1;
  }
  return detail::laplacian_minor_count(lap);
}

/// Spanning trees containing the given edge, counted on the contraction G/e.
/// Parallel edges created by the contraction stay in the Laplacian as
/// multiplicities.
inline std::uint64_t count_spanning_trees_with_edge(const Graph& g, int edge_index) {
  if (edge_index < 0 || edge_index >= g.edge_count())
    throw std::out_of_range("count_spanning_trees_with_edge: edge index out of range");
  const int n = g.node_count();
  if (n > 64) throw LimitError("count_spanning_trees_with_edge: hard cap of 64 nodes exceeded");
  const Edge contracted = g.edge(edge_index);
  // Merge v into u, relabel nodes above v down by one.
  const auto relabel = [&](int node) {
    if (node == contracted.v) node = contracted.u;
    return node > contracted.v ? node - 1 : node;
  };
  const int nc = n - 1;
  if (nc == 1) return 1;  // two-node graph: the single edge is every spanning tree
  std::vector<std::vector<Int128>> lap(static_cast<size_t>(nc),
                                       std::vector<Int128>(static_cast<size_t>(nc), 0));
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e == edge_index) continue;
    const int a = relabel(g.edge(e).u);
    const int b = relabel(g.edge(e).v);
    if (a == b) continue;  // parallel copy of the contracted edge
    lap[static_cast<size_t>(a)][static_cast<size_t>(a)] += 1;
    lap[static_cast<size_t>(b)][static_cast<size_t>(b)] += 1;
    lap[static_cast<size_t>(a)][static_cast<size_t>(b)] -= 1;
    lap[static_cast<size_t>(b)][static_cast<size_t>(a)] -= 1;
  }
  return detail::laplacian_minor_count(lap);
}

}  // namespace disttv
