#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "disttv/errors.hpp"
#include "disttv/graph.hpp"

namespace disttv {

namespace detail {

// Enumerates connected acyclic edge sets exactly once each: every subtree is
// anchored at its minimum edge index and grown by frontier edges; recursing
// on the i-th candidate bans candidates 0..i-1, so no edge set is reachable
// along two different growth orders.
class SubtreeEnumerator {
 public:
  SubtreeEnumerator(const Graph& g, std::int64_t limit, bool spanning_only)
      : g_(g), limit_(limit), spanning_only_(spanning_only) {}

  std::vector<EdgeSubset> run() {
    const int m = g_.edge_count();
    in_tree_edge_.assign(static_cast<size_t>(m), 0);
    in_tree_node_.assign(static_cast<size_t>(g_.node_count()), 0);
    banned_.assign(static_cast<size_t>(m), 0);
    for (int anchor = 0; anchor < m; ++anchor) {
      std::fill(banned_.begin(), banned_.end(), 0);
      for (int e = 0; e < anchor; ++e) banned_[static_cast<size_t>(e)] = 1;
      add_edge(anchor);
      grow();
      drop_edge(anchor);
    }
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void add_edge(int e) {
    in_tree_edge_[static_cast<size_t>(e)] = 1;
    tree_edges_.push_back(e);
    const Edge& edge = g_.edge(e);
    if (!in_tree_node_[static_cast<size_t>(edge.u)]) {
      in_tree_node_[static_cast<size_t>(edge.u)] = 1;
      tree_nodes_.push_back(edge.u);
    }
    if (!in_tree_node_[static_cast<size_t>(edge.v)]) {
      in_tree_node_[static_cast<size_t>(edge.v)] = 1;
      tree_nodes_.push_back(edge.v);
    }
  }

  void drop_edge(int e) {
    in_tree_edge_[static_cast<size_t>(e)] = 0;
    tree_edges_.pop_back();
    // The last added edge introduced at most one new node; it is the node
    // at the back of tree_nodes_ iff it was appended by this edge.
    const Edge& edge = g_.edge(e);
    while (!tree_nodes_.empty()) {
      const int back = tree_nodes_.back();
      if ((back == edge.u || back == edge.v) && degree_in_tree(back) == 0) {
        in_tree_node_[static_cast<size_t>(back)] = 0;
        tree_nodes_.pop_back();
      } else {
        break;
      }
    }
  }

  int degree_in_tree(int node) const {
    int deg = 0;
    for (const int e : g_.incident_edges(node))
      if (in_tree_edge_[static_cast<size_t>(e)]) ++deg;
    return deg;
  }

  void emit() {
    if (spanning_only_ && static_cast<int>(tree_nodes_.size()) != g_.node_count()) return;
    if (static_cast<std::int64_t>(out_.size()) >= limit_)
      throw LimitError("subtree enumeration exceeds limit of " + std::to_string(limit_));
    EdgeSubset s{tree_edges_};
    std::sort(s.indices.begin(), s.indices.end());
    out_.push_back(std::move(s));
  }

  void grow() {
    emit();
    // Frontier: edges with exactly one endpoint inside the tree. Edges with
    // both endpoints inside would close a cycle and are never candidates.
    std::vector<int> candidates;
    for (const int node : tree_nodes_) {
      for (const int e : g_.incident_edges(node)) {
        if (banned_[static_cast<size_t>(e)] || in_tree_edge_[static_cast<size_t>(e)]) continue;
        const Edge& edge = g_.edge(e);
        const bool u_in = in_tree_node_[static_cast<size_t>(edge.u)];
        const bool v_in = in_tree_node_[static_cast<size_t>(edge.v)];
        if (u_in != v_in) candidates.push_back(e);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (i > 0) banned_[static_cast<size_t>(candidates[i - 1])] = 1;
      add_edge(candidates[i]);
      grow();
      drop_edge(candidates[i]);
    }
    for (size_t i = 0; i + 1 < candidates.size(); ++i)
      banned_[static_cast<size_t>(candidates[i])] = 0;
  }

  const Graph& g_;
  std::int64_t limit_;
  bool spanning_only_;
  std::vector<EdgeSubset> out_;
  std::vector<char> in_tree_edge_;
  std::vector<char> in_tree_node_;
  std::vector<char> banned_;
  std::vector<int> tree_edges_;
  std::vector<int> tree_nodes_;
};

}  // namespace detail

/// Every connected acyclic edge subset with at least one edge, sorted
/// lexicographically by edge indices. Single-node subtrees are excluded:
/// they touch no edge, so they contribute nothing downstream.
inline std::vector<EdgeSubset> enumerate_subtrees(const Graph& g,
                                                  std::int64_t limit = 1'000'000) {
  return detail::SubtreeEnumerator(g, limit, /*spanning_only=*/false).run();
}

/// Subtrees with exactly n-1 edges covering every node.
inline std::vector<EdgeSubset> enumerate_spanning_trees(const Graph& g,
                                                        std::int64_t limit = 1'000'000) {
  return detail::SubtreeEnumerator(g, limit, /*spanning_only=*/true).run();
}

}  // namespace disttv
