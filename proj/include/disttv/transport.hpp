#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "disttv/errors.hpp"
#include "disttv/marginals.hpp"
#include "disttv/simplex.hpp"

namespace disttv {

/// Joint weights over two discrete supports. Row sums reproduce the first
/// marginal, column sums the second.
struct PairwiseCoupling {
  Eigen::MatrixXd weights;

  Eigen::VectorXd row_sums() const { return weights.rowwise().sum(); }
  Eigen::VectorXd col_sums() const { return weights.colwise().sum(); }
};

struct TransportPlan {
  double value = 0.0;
  Rational exact_value;
  PairwiseCoupling coupling;
  RationalMatrix exact_weights;
};

/// Exact minimum-cost transport between two small discrete distributions:
/// the plain transport LP solved with the rational simplex. This is the
/// independent reference the closed-form W^2 formulas are tested against.
inline TransportPlan w2_oracle(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                               const Eigen::MatrixXd& cost, int max_support = 64) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  if (na == 0 || nb == 0) throw std::invalid_argument("w2_oracle: empty marginal");
  if (na > max_support || nb > max_support)
    throw LimitError("w2_oracle: support larger than " + std::to_string(max_support));
  if (cost.rows() != na || cost.cols() != nb)
    throw std::invalid_argument("w2_oracle: cost matrix shape mismatch");
  for (int k = 0; k < na; ++k)
    if (a(k) < 0.0) throw std::invalid_argument("w2_oracle: negative weight");
  for (int l = 0; l < nb; ++l)
    if (b(l) < 0.0) throw std::invalid_argument("w2_oracle: negative weight");
  if (std::abs(a.sum() - 1.0) > 1e-9 || std::abs(b.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("w2_oracle: weights must sum to one");

  // Weights and costs are rationalized as one batch: they all meet inside
  // the simplex tableau, and compatible denominators keep the exact
  // arithmetic within the 128-bit range.
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(na + nb + na * nb));
  for (int k = 0; k < na; ++k) flat.push_back(a(k));
  for (int l = 0; l < nb; ++l) flat.push_back(b(l));
  for (int k = 0; k < na; ++k)
    for (int l = 0; l < nb; ++l) flat.push_back(cost(k, l));
  const auto batch = rationalize_batch(flat);
  RationalVector ra(na), rb(nb);
  for (int k = 0; k < na; ++k) ra(k) = batch[static_cast<size_t>(k)];
  for (int l = 0; l < nb; ++l) rb(l) = batch[static_cast<size_t>(na + l)];
  detail::fix_pmf_sum(ra, a);
  detail::fix_pmf_sum(rb, b);

  // Variables x(k,l), row-major. Constraints: every row sum, and all column
  // sums but the last (implied once the totals agree).
  const int vars = na * nb;
  const int rows = na + nb - 1;
  RationalMatrix A(rows, vars);
  A.setConstant(Rational(0));
  RationalVector rhs(rows);
  RationalVector obj(vars);
  for (int k = 0; k < na; ++k) {
    rhs(k) = ra(k);
    for (int l = 0; l < nb; ++l) A(k, k * nb + l) = Rational(1);
  }
  for (int l = 0; l + 1 < nb; ++l) {
    rhs(na + l) = rb(l);
    for (int k = 0; k < na; ++k) A(na + l, k * nb + l) = Rational(1);
  }
  for (int k = 0; k < na; ++k)
    for (int l = 0; l < nb; ++l)
      obj(k * nb + l) = batch[static_cast<size_t>(na + nb + k * nb + l)];

  const SimplexResult lp = simplex_solve(A, rhs, obj);
  if (lp.status != LpStatus::optimal)
    throw std::logic_error("w2_oracle: transport LP not optimal");

  TransportPlan plan;
  plan.exact_value = lp.objective;
  plan.value = lp.objective.to_double();
  plan.exact_weights.setConstant(na, nb, Rational(0));
  plan.coupling.weights.setZero(na, nb);
  for (int k = 0; k < na; ++k) {
    for (int l = 0; l < nb; ++l) {
      plan.exact_weights(k, l) = lp.solution(k * nb + l);
      plan.coupling.weights(k, l) = lp.solution(k * nb + l).to_double();
    }
  }
  return plan;
}

/// Transport under the 0/1 discrete metric (d^2 = d).
inline TransportPlan w2_oracle_discrete(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("w2_oracle_discrete: supports differ");
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd cost = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
  return w2_oracle(a, b, cost);
}

/// Transport between two uniform empirical distributions with squared
/// Euclidean costs.
inline TransportPlan w2_oracle_empirical(const Eigen::VectorXd& xa, const Eigen::VectorXd& xb) {
  if (xa.size() != xb.size() || xa.size() == 0)
    throw std::invalid_argument("w2_oracle_empirical: sample counts differ");
  const int n = static_cast<int>(xa.size());
  Eigen::MatrixXd cost(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) cost(k, l) = (xa(k) - xb(l)) * (xa(k) - xb(l));
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(n, 1.0 / n);
  return w2_oracle(uniform, uniform, cost);
}

}  // namespace disttv
