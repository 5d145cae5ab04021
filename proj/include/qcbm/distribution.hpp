#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "qcbm/types.hpp"

namespace qcbm {

// Discrete distribution over the 2^N computational basis states.
// Invariants: entries >= 0 and sum to 1 within 1e-9.
class ProbabilityDistribution {
 public:
  explicit ProbabilityDistribution(RealVector probs);

  static ProbabilityDistribution delta(Index n_states, Index state);
  static ProbabilityDistribution uniform(Index n_states);

  Index size() const { return probs_.size(); }
  Real operator()(Index i) const { return probs_(i); }
  const RealVector& probs() const { return probs_; }

  bool operator==(const ProbabilityDistribution& other) const {
    return probs_ == other.probs_;
  }

 private:
  RealVector probs_;
};

// Non-negative real counts per basis state. The effective shot size is the
// total count; after mitigation it is the clipped total n_s'.
class CountVector {
 public:
  explicit CountVector(RealVector counts);

  Index size() const { return counts_.size(); }
  Real operator()(Index i) const { return counts_(i); }
  const RealVector& counts() const { return counts_; }
  Real effective_shots() const { return counts_.sum(); }

 private:
  RealVector counts_;
};

// counts / effective_shots; throws std::domain_error on a zero vector.
ProbabilityDistribution normalize(const CountVector& counts);

// KL divergence sum_{p_i > 0} p_i ln(p_i / q_i), natural log.
// Returns +infinity (not an error) when q_i = 0 at some p_i > 0.
// Expression-friendly; both arguments must already be normalized.
template <typename DerivedP, typename DerivedQ>
Real kl_divergence(const Eigen::MatrixBase<DerivedP>& p,
                   const Eigen::MatrixBase<DerivedQ>& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("kl_divergence: length mismatch");
  }
  Real acc = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    const Real pi = p(i);
    if (pi <= 0.0) continue;
    const Real qi = q(i);
    if (qi <= 0.0) return std::numeric_limits<Real>::infinity();
    acc += pi * std::log(pi / qi);
  }
  return acc;
}

Real kl_divergence(const ProbabilityDistribution& p,
                   const ProbabilityDistribution& q);

// Zeroes entries below p0 and renormalizes. Diagnostic only; throws
// std::domain_error when every entry falls below the threshold.
ProbabilityDistribution threshold_filter(const ProbabilityDistribution& q,
                                         Real p0);

}  // namespace qcbm
