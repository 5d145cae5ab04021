#include "qcbm/execution.hpp"

#include "qcbm/basis.hpp"
#include "qcbm/resampling.hpp"

namespace qcbm {

ProbabilityDistribution run_exact(const Circuit& circuit,
                                  const DeviceProfile& device) {
  const RoutedCircuit routed = route(circuit, device.coupling);
  const ProbabilityDistribution physical =
      device.noise.is_zero() ? exact_distribution(routed.circuit)
                             : noisy_distribution(routed.circuit, device.noise);
  if (routed.is_identity_layout() &&
      physical.size() == state_count(circuit.n_qubits)) {
    return physical;
  }
  return undo_layout(physical, routed.layout);
}

CountVector run_sampled(const Circuit& circuit, const DeviceProfile& device,
                        long shots, RngStream& rng) {
  const RoutedCircuit routed = route(circuit, device.coupling);
  const CountVector counts =
      sample(routed.circuit, device.noise, shots, rng);
  if (routed.is_identity_layout() &&
      counts.size() == state_count(circuit.n_qubits)) {
    return counts;
  }
  return undo_layout(counts, routed.layout);
}

}  // namespace qcbm
