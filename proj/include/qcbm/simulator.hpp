#pragma once

#include <utility>
#include <vector>

#include "qcbm/distribution.hpp"
#include "qcbm/gates.hpp"
#include "qcbm/rng.hpp"

namespace qcbm {

// Synthetic device noise: per-qubit readout confusion plus depolarizing
// channels after each gate. A SWAP carries the noise of its three-CNOT
// decomposition.
struct NoiseModel {
  // per qubit: (P(read 1 | true 0), P(read 0 | true 1))
  std::vector<std::pair<Real, Real>> readout;
  Real depol_1q = 0.0;
  Real depol_2q = 0.0;

  static NoiseModel none(int n_qubits);
  bool is_zero() const;
  void validate(int n_qubits) const;
};

// |amplitude|^2 of the final statevector from |0...0>. Supports up to
// 6 qubits.
ProbabilityDistribution exact_distribution(const Circuit& circuit);

// Density-matrix evolution with depolarizing channels after each gate,
// followed by the classical readout confusion q_meas = R^T q_true.
// Supports up to 5 qubits.
ProbabilityDistribution noisy_distribution(const Circuit& circuit,
                                           const NoiseModel& noise);

// Multinomial draw of `shots` measurements from noisy_distribution.
CountVector sample(const Circuit& circuit, const NoiseModel& noise,
                   long shots, RngStream& rng);

// Full readout confusion R = tensor product of per-qubit 2x2 matrices,
// R(a, b) = P(read b | true a). Exposed for analytic calibration oracles.
RealMatrix readout_confusion_matrix(const NoiseModel& noise, int n_qubits);

}  // namespace qcbm
