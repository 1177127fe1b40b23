#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "disttv/graph.hpp"
#include "disttv/rational.hpp"

namespace disttv {

struct GaussianMarginal {
  double mean = 0.0;
  double stddev = 0.0;  // zero is allowed: a Dirac point mass
};

/// W(N(m1,s1), N(m2,s2))^2 for one-dimensional Gaussians.
inline double w2_gaussian(const GaussianMarginal& a, const GaussianMarginal& b) {
  const double dm = a.mean - b.mean;
  const double ds = a.stddev - b.stddev;
  return dm * dm + ds * ds;
}

/// W^2 between two equal-size empirical distributions given as sorted sample
/// vectors: the index-aligned mean of squared differences.
template <typename DerivedA, typename DerivedB>
double w2_empirical(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("w2_empirical: sample counts differ");
  return (a.derived().template cast<double>() - b.derived().template cast<double>())
             .squaredNorm() /
         static_cast<double>(a.size());
}

/// W^2 between two weight vectors over one shared discrete metric space:
/// half the l1 distance. Works for double and for exact Rational scalars.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar w2_discrete(const Eigen::MatrixBase<DerivedA>& a,
                                      const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("w2_discrete: supports differ");
  Scalar acc(0);
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    Scalar d = a.derived()(k) - b.derived()(k);
    if (d < Scalar(0)) d = -d;
    acc += d;
  }
  return acc / Scalar(2);
}

namespace detail {

// The largest entry absorbs the rationalization residue so the row sums to
// exactly one.
inline void fix_pmf_sum(RationalVector& row, const Eigen::VectorXd& weights) {
  Rational sum(0);
  Eigen::Index largest = 0;
  for (Eigen::Index k = 0; k < row.size(); ++k) {
    sum += row(k);
    if (weights(k) > weights(largest)) largest = k;
  }
  row(largest) += Rational(1) - sum;
  if (row(largest).sign() < 0)
    throw std::invalid_argument("rationalize_pmf: weights do not sum to one");
}

}  // namespace detail

/// Weight vector as exact rationals summing to exactly one.
inline RationalVector rationalize_pmf(const Eigen::VectorXd& weights) {
  const Eigen::Index n = weights.size();
  if (n == 0) throw std::invalid_argument("rationalize_pmf: empty weight vector");
  const auto batch = rationalize_batch(std::vector<double>(weights.begin(), weights.end()));
  RationalVector out(n);
  for (Eigen::Index k = 0; k < n; ++k) out(k) = batch[static_cast<size_t>(k)];
  detail::fix_pmf_sum(out, weights);
  return out;
}

enum class MarginalKind { gaussian, empirical, discrete };

inline std::string to_string(MarginalKind kind) {
  switch (kind) {
    case MarginalKind::gaussian: return "gaussian";
    case MarginalKind::empirical: return "empirical";
    case MarginalKind::discrete: return "discrete";
  }
  return "?";
}

/// One marginal distribution per node, all of one kind.
///  - gaussian:  mean/stddev per node
///  - empirical: n x N sample matrix, each row sorted ascending
///  - discrete:  n x N weight matrix over one shared support, rows on the
///    probability simplex (renormalized when within 1e-12, rejected beyond)
class MarginalSet {
 public:
  static MarginalSet gaussian(std::vector<GaussianMarginal> marginals) {
    if (marginals.empty()) throw std::invalid_argument("marginals: empty set");
    for (const auto& mrg : marginals) {
      if (!std::isfinite(mrg.mean) || !std::isfinite(mrg.stddev))
        throw std::invalid_argument("marginals: non-finite gaussian parameter");
      if (mrg.stddev < 0.0) throw std::invalid_argument("marginals: negative stddev");
    }
    MarginalSet ms;
    ms.kind_ = MarginalKind::gaussian;
    ms.gauss_ = std::move(marginals);
    return ms;
  }

  static MarginalSet empirical(Eigen::MatrixXd samples) {
    if (samples.rows() == 0 || samples.cols() == 0)
      throw std::invalid_argument("marginals: empty sample matrix");
    if (!samples.allFinite()) throw std::invalid_argument("marginals: non-finite sample");
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
      std::vector<double> row(samples.row(i).begin(), samples.row(i).end());
      std::sort(row.begin(), row.end());
      for (Eigen::Index k = 0; k < samples.cols(); ++k) samples(i, k) = row[static_cast<size_t>(k)];
    }
    MarginalSet ms;
    ms.kind_ = MarginalKind::empirical;
    ms.data_ = std::move(samples);
    return ms;
  }

  static MarginalSet discrete(std::vector<std::string> support, Eigen::MatrixXd weights) {
    if (weights.rows() == 0 || weights.cols() == 0)
      throw std::invalid_argument("marginals: empty weight matrix");
    if (static_cast<Eigen::Index>(support.size()) != weights.cols())
      throw std::invalid_argument("marginals: support size does not match weight columns");
    if (!weights.allFinite()) throw std::invalid_argument("marginals: non-finite weight");
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
      for (Eigen::Index k = 0; k < weights.cols(); ++k)
        if (weights(i, k) < 0.0) throw std::invalid_argument("marginals: negative weight");
      const double sum = weights.row(i).sum();
      // Rows within 1e-12 of the simplex are kept verbatim (renormalizing
      // is not an idempotent map on doubles, and the exact-arithmetic paths
      // pin the mass to exactly one); anything beyond is rejected.
      if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("marginals: node " + std::to_string(i) +
                                    " weights sum to " + std::to_string(sum));
    }
    MarginalSet ms;
    ms.kind_ = MarginalKind::discrete;
    ms.data_ = std::move(weights);
    ms.support_ = std::move(support);
    return ms;
  }

  MarginalKind kind() const noexcept { return kind_; }

  int node_count() const noexcept {
    return kind_ == MarginalKind::gaussian ? static_cast<int>(gauss_.size())
                                           : static_cast<int>(data_.rows());
  }

  /// Shared support size N (empirical sample count or discrete atom count).
  int atom_count() const {
    if (kind_ == MarginalKind::gaussian)
      throw std::logic_error("marginals: gaussian sets have no atom count");
    return static_cast<int>(data_.cols());
  }

  const std::vector<GaussianMarginal>& gaussians() const {
    require(MarginalKind::gaussian);
    return gauss_;
  }
  const Eigen::MatrixXd& samples() const {
    require(MarginalKind::empirical);
    return data_;
  }
  const Eigen::MatrixXd& weights() const {
    require(MarginalKind::discrete);
    return data_;
  }
  const std::vector<std::string>& support() const {
    require(MarginalKind::discrete);
    return support_;
  }

  /// Kind-appropriate closed-form W^2 between the marginals of two nodes.
  double w2_between(int i, int j) const {
    switch (kind_) {
      case MarginalKind::gaussian:
        return w2_gaussian(gauss_.at(static_cast<size_t>(i)), gauss_.at(static_cast<size_t>(j)));
      case MarginalKind::empirical:
        return w2_empirical(data_.row(i), data_.row(j));
      case MarginalKind::discrete:
        return w2_discrete(data_.row(i), data_.row(j));
    }
    throw std::logic_error("marginals: bad kind");
  }

  /// Subset (and reorder) to the given original node ids.
  MarginalSet restricted_to(const std::vector<int>& nodes) const {
    if (nodes.empty()) throw std::invalid_argument("marginals: empty restriction");
    MarginalSet ms;
    ms.kind_ = kind_;
    ms.support_ = support_;
    if (kind_ == MarginalKind::gaussian) {
      for (const int v : nodes) ms.gauss_.push_back(gauss_.at(static_cast<size_t>(v)));
    } else {
      ms.data_.resize(static_cast<Eigen::Index>(nodes.size()), data_.cols());
      for (size_t i = 0; i < nodes.size(); ++i) ms.data_.row(static_cast<Eigen::Index>(i)) = data_.row(nodes[i]);
    }
    return ms;
  }

  /// Discrete weights as exact rationals, each row summing to exactly one.
  /// All rows are rationalized as one batch, so denominators stay compatible
  /// when rows mix inside the exact LP oracles.
  RationalMatrix rational_weights() const {
    require(MarginalKind::discrete);
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(data_.size()));
    for (Eigen::Index i = 0; i < data_.rows(); ++i)
      for (Eigen::Index k = 0; k < data_.cols(); ++k) flat.push_back(data_(i, k));
    const auto batch = rationalize_batch(flat);
    RationalMatrix out(data_.rows(), data_.cols());
    for (Eigen::Index i = 0; i < data_.rows(); ++i) {
      RationalVector row(data_.cols());
      for (Eigen::Index k = 0; k < data_.cols(); ++k)
        row(k) = batch[static_cast<size_t>(i * data_.cols() + k)];
      detail::fix_pmf_sum(row, data_.row(i).transpose());
      for (Eigen::Index k = 0; k < data_.cols(); ++k) out(i, k) = row(k);
    }
    return out;
  }

 private:
  void require(MarginalKind kind) const {
    if (kind_ != kind)
      throw std::logic_error("marginals: expected kind " + to_string(kind) + ", have " +
                             to_string(kind_));
  }

  MarginalKind kind_ = MarginalKind::gaussian;
  std::vector<GaussianMarginal> gauss_;
  Eigen::MatrixXd data_;
  std::vector<std::string> support_;
};

/// Point-mass marginals at the entries of a signal, as zero-width Gaussians.
inline MarginalSet dirac_marginals(const Eigen::VectorXd& x) {
  std::vector<GaussianMarginal> ms;
  ms.reserve(static_cast<size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) ms.push_back(GaussianMarginal{x(i), 0.0});
  return MarginalSet::gaussian(std::move(ms));
}

/// W_N: per-edge squared Wasserstein distance between endpoint marginals.
inline EdgeVector wasserstein_edge_vector(const Graph& g, const MarginalSet& ns) {
  if (ns.node_count() != g.node_count())
    throw std::invalid_argument("wasserstein_edge_vector: marginal count != node count");
  EdgeVector w(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e)
    w(e) = ns.w2_between(g.edge(e).u, g.edge(e).v);
  return w;
}

}  // namespace disttv
