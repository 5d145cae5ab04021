#include "qcbm/distribution.hpp"

#include <stdexcept>

namespace qcbm {

namespace {
constexpr Real kSumTolerance = 1e-9;
}

ProbabilityDistribution::ProbabilityDistribution(RealVector probs)
    : probs_(std::move(probs)) {
  if (probs_.size() == 0) {
    throw std::invalid_argument("ProbabilityDistribution: empty vector");
  }
  if ((probs_.array() < 0.0).any()) {
    throw std::domain_error("ProbabilityDistribution: negative entry");
  }
  if (std::abs(probs_.sum() - 1.0) > kSumTolerance) {
    throw std::domain_error("ProbabilityDistribution: entries sum to " +
                            std::to_string(probs_.sum()) + ", expected 1");
  }
}

ProbabilityDistribution ProbabilityDistribution::delta(Index n_states,
                                                       Index state) {
  RealVector v = RealVector::Zero(n_states);
  v(state) = 1.0;
  return ProbabilityDistribution(std::move(v));
}

ProbabilityDistribution ProbabilityDistribution::uniform(Index n_states) {
  return ProbabilityDistribution(
      RealVector::Constant(n_states, 1.0 / static_cast<Real>(n_states)));
}

CountVector::CountVector(RealVector counts) : counts_(std::move(counts)) {
  if (counts_.size() == 0) {
    throw std::invalid_argument("CountVector: empty vector");
  }
  if ((counts_.array() < 0.0).any()) {
    throw std::domain_error("CountVector: negative count");
  }
}

ProbabilityDistribution normalize(const CountVector& counts) {
  const Real total = counts.effective_shots();
  if (total <= 0.0) {
    throw std::domain_error("normalize: zero total count");
  }
  return ProbabilityDistribution(counts.counts() / total);
}

Real kl_divergence(const ProbabilityDistribution& p,
                   const ProbabilityDistribution& q) {
  return kl_divergence(p.probs(), q.probs());
}

ProbabilityDistribution threshold_filter(const ProbabilityDistribution& q,
                                         Real p0) {
  if (p0 <= 0.0 || p0 >= 1.0) {
    throw std::domain_error("threshold_filter: p0 must lie in (0, 1)");
  }
  RealVector kept = (q.probs().array() < p0).select(0.0, q.probs());
  const Real total = kept.sum();
  if (total <= 0.0) {
    throw std::domain_error("threshold_filter: every entry below threshold");
  }
  return ProbabilityDistribution(kept / total);
}

}  // namespace qcbm
