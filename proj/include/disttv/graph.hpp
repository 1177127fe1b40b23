#pragma once

#include <algorithm>
#include <charconv>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "disttv/errors.hpp"

namespace disttv {

/// One real number per edge, in canonical edge order. Centralities and
/// Wasserstein vectors both live here, so inner products line up by index.
using EdgeVector = Eigen::VectorXd;

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline bool operator<(const Edge& a, const Edge& b) {
  return a.u != b.u ? a.u < b.u : a.v < b.v;
}

/// Finite, connected, simple, unweighted graph. Edges are canonicalized to
/// u < v and sorted lexicographically; the position of an edge in edges() is
/// its index everywhere in the library.
class Graph {
 public:
  Graph(int node_count, std::vector<Edge> edges) : n_(node_count), edges_(std::move(edges)) {
    if (n_ < 2) throw std::invalid_argument("graph: need at least 2 nodes");
    for (auto& e : edges_) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
        throw std::invalid_argument("graph: edge endpoint out of range");
      if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw std::invalid_argument("graph: duplicate edge");
    adj_.assign(static_cast<size_t>(n_), {});
    incident_.assign(static_cast<size_t>(n_), {});
    for (int e = 0; e < edge_count(); ++e) {
      adj_[static_cast<size_t>(edges_[static_cast<size_t>(e)].u)].push_back(edges_[static_cast<size_t>(e)].v);
      adj_[static_cast<size_t>(edges_[static_cast<size_t>(e)].v)].push_back(edges_[static_cast<size_t>(e)].u);
      incident_[static_cast<size_t>(edges_[static_cast<size_t>(e)].u)].push_back(e);
      incident_[static_cast<size_t>(edges_[static_cast<size_t>(e)].v)].push_back(e);
    }
    if (!connected()) throw std::invalid_argument("graph: not connected");
  }

  int node_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int index) const { return edges_.at(static_cast<size_t>(index)); }
  bool is_tree() const noexcept { return edge_count() == n_ - 1; }

  /// Index of edge {u, v}, or -1 when the pair is not an edge.
  int find_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    const Edge probe{u, v};
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), probe);
    if (it == edges_.end() || !(*it == probe)) return -1;
    return static_cast<int>(it - edges_.begin());
  }

  int edge_index(int u, int v) const {
    const int e = find_edge(u, v);
    if (e < 0) throw std::out_of_range("graph: no such edge");
    return e;
  }

  const std::vector<int>& neighbors(int node) const { return adj_.at(static_cast<size_t>(node)); }
  const std::vector<int>& incident_edges(int node) const {
    return incident_.at(static_cast<size_t>(node));
  }

 private:
  bool connected() const {
    std::vector<char> seen(static_cast<size_t>(n_), 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (const int v : adj_[static_cast<size_t>(u)]) {
        if (!seen[static_cast<size_t>(v)]) {
          seen[static_cast<size_t>(v)] = 1;
          ++reached;
          frontier.push(v);
        }
      }
    }
    return reached == n_;
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> incident_;
};

// ---------------------------------------------------------------------------
// Graph file format: first data line "n m", then m lines "i j". Whitespace
// separated; '#' starts a comment that runs to the end of the line.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
      ++pos;
    size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

inline int parse_int_token(std::string_view tok, int line_no, const char* what) {
  int value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) + ": malformed " + what + " '" +
                     std::string(tok) + "'");
  return value;
}

}  // namespace detail

inline Graph parse_graph(std::string_view text) {
  int n = -1, m = -1;
  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> seen;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    if (n < 0) {
      if (tokens.size() != 2)
        throw ParseError("line " + std::to_string(line_no) + ": expected header 'n m'");
      n = detail::parse_int_token(tokens[0], line_no, "node count");
      m = detail::parse_int_token(tokens[1], line_no, "edge count");
      if (n < 2) throw ParseError("line " + std::to_string(line_no) + ": need at least 2 nodes");
      if (m < 0) throw ParseError("line " + std::to_string(line_no) + ": negative edge count");
      continue;
    }
    if (tokens.size() != 2)
      throw ParseError("line " + std::to_string(line_no) + ": expected edge 'i j'");
    int u = detail::parse_int_token(tokens[0], line_no, "node id");
    int v = detail::parse_int_token(tokens[1], line_no, "node id");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError("line " + std::to_string(line_no) + ": node id out of range");
    if (u == v) throw ParseError("line " + std::to_string(line_no) + ": self-loop");
    if (u > v) std::swap(u, v);
    if (std::find(seen.begin(), seen.end(), std::make_pair(u, v)) != seen.end())
      throw ParseError("line " + std::to_string(line_no) + ": duplicate edge");
    seen.emplace_back(u, v);
    edges.push_back(Edge{u, v});
    if (static_cast<int>(edges.size()) > m)
      throw ParseError("line " + std::to_string(line_no) + ": more than " + std::to_string(m) +
                       " edges");
  }
  if (n < 0) throw ParseError("empty graph file");
  if (static_cast<int>(edges.size()) != m)
    throw ParseError("expected " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  try {
    return Graph(n, std::move(edges));
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what());
  }
}

inline std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.node_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges())
    out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Edge subsets and subtree views
// ---------------------------------------------------------------------------

/// Sorted, duplicate-free list of edge indices into one graph.
struct EdgeSubset {
  std::vector<int> indices;

  int size() const noexcept { return static_cast<int>(indices.size()); }
  bool empty() const noexcept { return indices.empty(); }
  bool contains(int e) const {
    return std::binary_search(indices.begin(), indices.end(), e);
  }
  friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;
  friend bool operator<(const EdgeSubset& a, const EdgeSubset& b) {
    return a.indices < b.indices;
  }
};

inline EdgeSubset make_edge_subset(std::vector<int> indices, int edge_count) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw std::invalid_argument("edge subset: duplicate edge index");
  if (!indices.empty() && (indices.front() < 0 || indices.back() >= edge_count))
    throw std::invalid_argument("edge subset: index out of range");
  return EdgeSubset{std::move(indices)};
}

/// Sorted node ids touched by the subset.
inline std::vector<int> subset_nodes(const Graph& g, const EdgeSubset& s) {
  std::vector<int> nodes;
  nodes.reserve(s.indices.size() * 2);
  for (const int e : s.indices) {
    nodes.push_back(g.edge(e).u);
    nodes.push_back(g.edge(e).v);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

/// True when the subset is a subtree: at least one edge, connected, acyclic.
inline bool is_subtree(const Graph& g, const EdgeSubset& s) {
  if (s.empty()) return false;
  const auto nodes = subset_nodes(g, s);
  // Union-find over the touched nodes; a redundant union marks a cycle.
  std::vector<int> parent(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) parent[i] = static_cast<int>(i);
  const auto local = [&](int node) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), node) - nodes.begin());
  };
  const auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  int components = static_cast<int>(nodes.size());
  for (const int e : s.indices) {
    const int a = find(local(g.edge(e).u));
    const int b = find(local(g.edge(e).v));
    if (a == b) return false;  // cycle
    parent[static_cast<size_t>(a)] = b;
    --components;
  }
  return components == 1;
}

/// A subtree rematerialized as a standalone graph with nodes relabeled to
/// 0..k-1; original_nodes[i] is the id node i had in the parent graph.
struct SubgraphView {
  Graph graph;
  std::vector<int> original_nodes;
};

inline SubgraphView subtree_graph(const Graph& g, const EdgeSubset& s) {
  if (!is_subtree(g, s)) throw std::invalid_argument("subtree_graph: subset is not a subtree");
  const auto nodes = subset_nodes(g, s);
  const auto local = [&](int node) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), node) - nodes.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(s.indices.size());
  for (const int e : s.indices)
    edges.push_back(Edge{local(g.edge(e).u), local(g.edge(e).v)});
  return SubgraphView{Graph(static_cast<int>(nodes.size()), std::move(edges)), nodes};
}

/// Graph with one edge removed; throws when the removal disconnects it.
inline Graph remove_edge(const Graph& g, int edge_index) {
  if (edge_index < 0 || edge_index >= g.edge_count())
    throw std::out_of_range("remove_edge: edge index out of range");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(g.edge_count() - 1));
  for (int e = 0; e < g.edge_count(); ++e)
    if (e != edge_index) edges.push_back(g.edge(e));
  try {
    return Graph(g.node_count(), std::move(edges));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("remove_edge: edge is a bridge");
  }
}

// ---------------------------------------------------------------------------
// Named builders
// ---------------------------------------------------------------------------

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back(Edge{i, i + 1});
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need at least 3 nodes");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back(Edge{i, i + 1});
  edges.push_back(Edge{0, n - 1});
  return Graph(n, std::move(edges));
}

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back(Edge{i, j});
  return Graph(n, std::move(edges));
}

}  // namespace disttv
