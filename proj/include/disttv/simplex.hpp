#pragma once

#include <cstdint>
#include <vector>

#include "disttv/errors.hpp"
#include "disttv/rational.hpp"

namespace disttv {

enum class LpStatus { optimal, infeasible, unbounded };

struct SimplexResult {
  LpStatus status = LpStatus::optimal;
  Rational objective;
  RationalVector solution;
};

/// Exact rational two-phase simplex for  min c'x  s.t.  A x = b, x >= 0.
/// Bland's rule everywhere, so the method terminates without tolerances;
/// every comparison is against an exact zero.
inline SimplexResult simplex_solve(const RationalMatrix& A, const RationalVector& b,
                                   const RationalVector& c) {
  const int rows = static_cast<int>(A.rows());
  const int cols = static_cast<int>(A.cols());
  if (b.size() != rows || c.size() != cols)
    throw std::invalid_argument("simplex_solve: dimension mismatch");

  const int total = cols + rows;  // structural + artificial columns
  // Row-major: every pivot sweeps columns within a row.
  Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> tab(rows, total + 1);
  tab.setConstant(Rational(0));
  for (int r = 0; r < rows; ++r) {
    const bool flip = b(r).sign() < 0;
    for (int j = 0; j < cols; ++j) tab(r, j) = flip ? -A(r, j) : A(r, j);
    tab(r, cols + r) = Rational(1);
    tab(r, total) = flip ? -b(r) : b(r);
  }
  std::vector<int> basis(static_cast<size_t>(rows));
  std::vector<char> active(static_cast<size_t>(rows), 1);
  for (int r = 0; r < rows; ++r) basis[static_cast<size_t>(r)] = cols + r;

  RationalVector cost(total + 1);

  const auto pivot = [&](int pr, int pc) {
    const Rational piv = tab(pr, pc);
    for (int j = 0; j <= total; ++j)
      if (!tab(pr, j).is_zero()) tab(pr, j) /= piv;
    for (int r = 0; r < rows; ++r) {
      if (r == pr || !active[static_cast<size_t>(r)]) continue;
      const Rational f = tab(r, pc);
      if (f.is_zero()) continue;
      for (int j = 0; j <= total; ++j) {
        if (tab(pr, j).is_zero()) continue;
        tab(r, j) -= f * tab(pr, j);
      }
    }
    const Rational fc = cost(pc);
    if (!fc.is_zero()) {
      for (int j = 0; j <= total; ++j) {
        if (tab(pr, j).is_zero()) continue;
        cost(j) -= fc * tab(pr, j);
      }
    }
    basis[static_cast<size_t>(pr)] = pc;
  };

  // Bland: entering = lowest-index column with a negative reduced cost;
  // leaving = lexicographic (ratio, basis index) minimum.
  const auto run_phase = [&](int entering_limit) -> bool {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < entering_limit; ++j) {
        if (cost(j).sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;  // optimal for this phase
      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < rows; ++r) {
        if (!active[static_cast<size_t>(r)]) continue;
        if (tab(r, enter).sign() <= 0) continue;
        const Rational ratio = tab(r, total) / tab(r, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leave)])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded in the entering direction
      pivot(leave, enter);
    }
  };

  // Phase 1: minimize the sum of artificials.
  cost.setConstant(Rational(0));
  for (int r = 0; r < rows; ++r)
    for (int j = 0; j <= total; ++j) cost(j) -= tab(r, j);
  for (int r = 0; r < rows; ++r) cost(cols + r) = Rational(0);
  if (!run_phase(total)) throw std::logic_error("simplex: phase 1 unbounded");
  if ((-cost(total)).sign() > 0) {
    SimplexResult res;
    res.status = LpStatus::infeasible;
    return res;
  }

  // Drive remaining artificials out of the basis; rows that cannot pivot on
  // a structural column are redundant and get dropped.
  for (int r = 0; r < rows; ++r) {
    if (!active[static_cast<size_t>(r)] || basis[static_cast<size_t>(r)] < cols) continue;
    int pc = -1;
    for (int j = 0; j < cols; ++j) {
      if (!tab(r, j).is_zero()) {
        pc = j;
        break;
      }
    }
    if (pc >= 0) {
      pivot(r, pc);
    } else {
      active[static_cast<size_t>(r)] = 0;
    }
  }

  // Phase 2: minimize the real objective over structural columns only.
  cost.setConstant(Rational(0));
  for (int j = 0; j < cols; ++j) cost(j) = c(j);
  std::vector<Rational> basic_cost(static_cast<size_t>(rows), Rational(0));
  for (int r = 0; r < rows; ++r)
    if (active[static_cast<size_t>(r)]) basic_cost[static_cast<size_t>(r)] = cost(basis[static_cast<size_t>(r)]);
  for (int r = 0; r < rows; ++r) {
    if (!active[static_cast<size_t>(r)] || basic_cost[static_cast<size_t>(r)].is_zero()) continue;
    for (int j = 0; j <= total; ++j) {
      if (tab(r, j).is_zero()) continue;
      cost(j) -= basic_cost[static_cast<size_t>(r)] * tab(r, j);
    }
  }
  if (!run_phase(cols)) {
    SimplexResult res;
    res.status = LpStatus::unbounded;
    return res;
  }

  SimplexResult res;
  res.status = LpStatus::optimal;
  res.objective = -cost(total);
  res.solution.setConstant(cols, Rational(0));
  for (int r = 0; r < rows; ++r) {
    if (!active[static_cast<size_t>(r)]) continue;
    if (basis[static_cast<size_t>(r)] < cols) res.solution(basis[static_cast<size_t>(r)]) = tab(r, total);
  }
  return res;
}

}  // namespace disttv
