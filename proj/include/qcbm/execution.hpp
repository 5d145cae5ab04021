#pragma once

#include "qcbm/device.hpp"
#include "qcbm/routing.hpp"

namespace qcbm {

// Compile onto the device coupling, simulate under the device noise, and
// undo the routing relabeling on the measured distribution.

// Exact output probabilities (no sampling). Uses the statevector path
// when the device is noiseless, the density-matrix path otherwise.
ProbabilityDistribution run_exact(const Circuit& circuit,
                                  const DeviceProfile& device);

CountVector run_sampled(const Circuit& circuit, const DeviceProfile& device,
                        long shots, RngStream& rng);

}  // namespace qcbm
