#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "disttv/errors.hpp"
#include "disttv/graph.hpp"
#include "disttv/joint.hpp"
#include "disttv/marginals.hpp"
#include "disttv/simplex.hpp"

namespace disttv {

/// Brute-force reference for the empirical W^2 closed form: the minimum over
/// all N! pairings of the mean squared difference.
inline double assignment_oracle_empirical(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                          int max_size = 8) {
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("assignment_oracle_empirical: sample counts differ");
  const int n = static_cast<int>(a.size());
  if (n > max_size)
    throw LimitError("assignment_oracle_empirical: more than " + std::to_string(max_size) +
                     " samples");
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = a(k) - b(perm[static_cast<size_t>(k)]);
      total += d * d;
    }
    best = std::min(best, total / n);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Exact multimarginal LP for the coupling infimum on discrete instances
// ---------------------------------------------------------------------------

/// The LP behind lp_min_tv_marginals: one variable per product-support
/// tuple, one mass constraint per (node, atom) with redundant rows dropped.
struct LpInstance {
  std::int64_t variable_count = 0;
  int constraint_count = 0;
  RationalVector objective;  // per tuple: number of edges whose endpoints differ
};

struct MultimarginalPlan {
  double value = 0.0;
  Rational exact_value;
  std::vector<Rational> exact_mass;  // by tuple rank (node 0 most significant)
  std::map<std::vector<int>, double> mass;
  JointDistribution joint;
  LpInstance instance;
};

namespace detail {

inline std::vector<int> unrank_tuple(std::int64_t rank, int nodes, int support) {
  std::vector<int> tuple(static_cast<size_t>(nodes));
  for (int i = nodes - 1; i >= 0; --i) {
    tuple[static_cast<size_t>(i)] = static_cast<int>(rank % support);
    rank /= support;
  }
  return tuple;
}

}  // namespace detail

/// inf over joints with the prescribed discrete marginals of the expected
/// edge-difference cost, solved exactly. Returns the optimal value and an
/// optimal joint; the minimizer's node marginals match the (rationalized)
/// inputs exactly.
inline MultimarginalPlan lp_min_tv_marginals(const Graph& g, const MarginalSet& ns,
                                             std::int64_t guard = 4096) {
  if (ns.kind() != MarginalKind::discrete)
    throw std::invalid_argument("lp_min_tv_marginals: needs discrete marginals");
  if (ns.node_count() != g.node_count())
    throw std::invalid_argument("lp_min_tv_marginals: marginal count != node count");
  const int n = g.node_count();
  const int support = ns.atom_count();

  std::int64_t vars = 1;
  for (int i = 0; i < n; ++i) {
    vars *= support;
    if (vars > guard)
      throw LimitError("lp_min_tv_marginals: product support exceeds guard of " +
                       std::to_string(guard));
  }

  const RationalMatrix weights = ns.rational_weights();
  // Rows: node 0 keeps all `support` atom constraints (they also pin the
  // total mass); every other node drops its last atom row as implied.
  const int rows = n * support - (n - 1);
  const auto row_of = [&](int node, int atom) {
    return node == 0 ? atom : support + (node - 1) * (support - 1) + atom;
  };

  RationalMatrix A(rows, static_cast<int>(vars));
  A.setConstant(Rational(0));
  RationalVector rhs(rows);
  for (int k = 0; k < support; ++k) rhs(row_of(0, k)) = weights(0, k);
  for (int i = 1; i < n; ++i)
    for (int k = 0; k + 1 < support; ++k) rhs(row_of(i, k)) = weights(i, k);

  RationalVector obj(static_cast<int>(vars));
  for (std::int64_t t = 0; t < vars; ++t) {
    const auto tuple = detail::unrank_tuple(t, n, support);
    long long differing = 0;
    for (const Edge& e : g.edges())
      if (tuple[static_cast<size_t>(e.u)] != tuple[static_cast<size_t>(e.v)]) ++differing;
    obj(static_cast<int>(t)) = Rational(differing);
    A(row_of(0, tuple[0]), static_cast<int>(t)) = Rational(1);
    for (int i = 1; i < n; ++i)
      if (tuple[static_cast<size_t>(i)] + 1 < support)
        A(row_of(i, tuple[static_cast<size_t>(i)]), static_cast<int>(t)) = Rational(1);
  }

  const SimplexResult lp = simplex_solve(A, rhs, obj);
  if (lp.status != LpStatus::optimal)
    throw std::logic_error("lp_min_tv_marginals: coupling LP not optimal");

  std::vector<Rational> exact_mass(static_cast<size_t>(vars), Rational(0));
  std::map<std::vector<int>, double> mass;
  for (std::int64_t t = 0; t < vars; ++t) {
    exact_mass[static_cast<size_t>(t)] = lp.solution(static_cast<int>(t));
    if (lp.solution(static_cast<int>(t)).sign() > 0)
      mass[detail::unrank_tuple(t, n, support)] = lp.solution(static_cast<int>(t)).to_double();
  }
  JointDistribution joint(std::vector<int>(static_cast<size_t>(n), support), mass);
  return MultimarginalPlan{lp.objective.to_double(),
                           lp.objective,
                           std::move(exact_mass),
                           std::move(mass),
                           std::move(joint),
                           LpInstance{vars, rows, std::move(obj)}};
}

}  // namespace disttv
