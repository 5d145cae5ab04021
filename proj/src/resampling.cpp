#include "qcbm/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcbm {

namespace {

// Inverse-CDF multinomial draw; kept free of std::discrete_distribution so
// the counts are identical on every standard library.
RealVector multinomial(const RealVector& weights, long shots, RngStream& rng) {
  const Real total = weights.sum();
  if (total <= 0.0) {
    throw std::domain_error("subsample: source has zero total weight");
  }
  RealVector cdf(weights.size());
  Real acc = 0.0;
  for (Index i = 0; i < weights.size(); ++i) {
    acc += weights(i);
    cdf(i) = acc;
  }
  cdf(weights.size() - 1) = total;  // guard against rounding at the top

  RealVector counts = RealVector::Zero(weights.size());
  const Real* begin = cdf.data();
  const Real* end = begin + cdf.size();
  for (long s = 0; s < shots; ++s) {
    const Real u = uniform_unit(rng) * total;
    const Index i = std::upper_bound(begin, end, u) - begin;
    counts(std::min(i, weights.size() - 1)) += 1.0;
  }
  return counts;
}

}  // namespace

CountVector subsample(const CountVector& source, long shots, RngStream& rng) {
  if (shots < 1) throw std::domain_error("subsample: shots must be >= 1");
  return CountVector(multinomial(source.counts(), shots, rng));
}

CountVector subsample(const ProbabilityDistribution& source, long shots,
                      RngStream& rng) {
  if (shots < 1) throw std::domain_error("subsample: shots must be >= 1");
  return CountVector(multinomial(source.probs(), shots, rng));
}

CountVector composite(const std::vector<CountVector>& batches) {
  if (batches.empty()) {
    throw std::domain_error("composite: no batches");
  }
  RealVector total = batches.front().counts();
  for (std::size_t b = 1; b < batches.size(); ++b) {
    if (batches[b].size() != total.size()) {
      throw std::invalid_argument("composite: batch size mismatch");
    }
    total += batches[b].counts();
  }
  return CountVector(std::move(total));
}

MeanKl mean_kl(const ProbabilityDistribution& p, const CountVector& source,
               long shots, int repeats, RngStream& rng) {
  if (repeats < 1) throw std::domain_error("mean_kl: repeats must be >= 1");
  std::vector<Real> finite;
  finite.reserve(static_cast<std::size_t>(repeats));
  int divergences = 0;
  for (int r = 0; r < repeats; ++r) {
    const Real kl = kl_divergence(p, normalize(subsample(source, shots, rng)));
    if (std::isinf(kl)) {
      ++divergences;
    } else {
      finite.push_back(kl);
    }
  }

  MeanKl out;
  out.divergences = divergences;
  Real mean_finite = 0.0;
  if (!finite.empty()) {
    Real sum = 0.0;
    for (Real v : finite) sum += v;
    mean_finite = sum / static_cast<Real>(finite.size());
  }
  out.mean =
      divergences > 0 ? std::numeric_limits<Real>::infinity() : mean_finite;
  if (finite.size() >= 2) {
    Real ss = 0.0;
    for (Real v : finite) ss += (v - mean_finite) * (v - mean_finite);
    out.stddev = std::sqrt(ss / static_cast<Real>(finite.size() - 1));
  }
  return out;
}

}  // namespace qcbm
