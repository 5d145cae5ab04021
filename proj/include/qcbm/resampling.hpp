#pragma once

#include <vector>

#include "qcbm/distribution.hpp"
#include "qcbm/rng.hpp"

namespace qcbm {

// Multinomial draw of `shots` samples from the normalized source.
CountVector subsample(const CountVector& source, long shots, RngStream& rng);
CountVector subsample(const ProbabilityDistribution& source, long shots,
                      RngStream& rng);

// Element-wise pool of repeated batches; effective shots add up.
CountVector composite(const std::vector<CountVector>& batches);

struct MeanKl {
  Real mean = 0.0;
  Real stddev = 0.0;
  int divergences = 0;  // sub-samples whose KL diverged
};

// Mean/stddev of kl(p, normalize(subsample(source, shots))) over `repeats`
// draws. A single divergent draw makes the mean +infinity; the stddev is
// taken over the finite draws (sample stddev, 0 when fewer than two).
MeanKl mean_kl(const ProbabilityDistribution& p, const CountVector& source,
               long shots, int repeats, RngStream& rng);

}  // namespace qcbm
