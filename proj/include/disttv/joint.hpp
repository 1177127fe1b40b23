#pragma once

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "disttv/graph.hpp"

namespace disttv {

/// Probability mass function over a finite product support. Keys are
/// per-node support indices aligned with the graph's node order; only
/// strictly positive atoms need to be stored.
class JointDistribution {
 public:
  JointDistribution(std::vector<int> support_sizes, std::map<std::vector<int>, double> mass)
      : sizes_(std::move(support_sizes)), mass_(std::move(mass)) {
    if (sizes_.empty()) throw std::invalid_argument("joint: no nodes");
    double total = 0.0;
    for (const auto& [tuple, p] : mass_) {
      if (tuple.size() != sizes_.size())
        throw std::invalid_argument("joint: tuple arity mismatch");
      for (size_t i = 0; i < tuple.size(); ++i)
        if (tuple[i] < 0 || tuple[i] >= sizes_[i])
          throw std::invalid_argument("joint: support index out of range");
      if (p < 0.0) throw std::invalid_argument("joint: negative mass");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("joint: masses sum to " + std::to_string(total));
  }

  int node_count() const noexcept { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& support_sizes() const noexcept { return sizes_; }
  const std::map<std::vector<int>, double>& mass() const noexcept { return mass_; }

  Eigen::VectorXd node_marginal(int node) const {
    if (node < 0 || node >= node_count())
      throw std::out_of_range("joint: node out of range");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(sizes_[static_cast<size_t>(node)]);
    for (const auto& [tuple, p] : mass_) out(tuple[static_cast<size_t>(node)]) += p;
    return out;
  }

 private:
  std::vector<int> sizes_;
  std::map<std::vector<int>, double> mass_;
};

/// Squared-distance table per edge: costs[e](k, l) is d(s_k, s_l)^2 between
/// the endpoint supports of edge e.
using EdgeCostTables = std::vector<Eigen::MatrixXd>;

/// 0/1 tables for one shared discrete metric support.
inline EdgeCostTables discrete_cost_tables(const Graph& g, int support_size) {
  if (support_size <= 0) throw std::invalid_argument("discrete_cost_tables: empty support");
  const Eigen::MatrixXd table = Eigen::MatrixXd::Ones(support_size, support_size) -
                                Eigen::MatrixXd::Identity(support_size, support_size);
  return EdgeCostTables(static_cast<size_t>(g.edge_count()), table);
}

}  // namespace disttv
