#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcbm/gates.hpp"

namespace qcbm {

enum class EntanglerLayout { dc2, dc3_line, dc3_star };

EntanglerLayout entangler_from_name(const std::string& name);
std::string entangler_name(EntanglerLayout layout);

// CNOT (control, target) pairs of one entangling layer, applied in order.
std::vector<std::pair<int, int>> entangler_pairs(EntanglerLayout layout);

// Bi-layer ansatz: rotation layer A (RX, RZ per qubit), entangler,
// rotation layer B (RX, RZ, RX per qubit), entangler, rotation layer C
// (RX, RZ per qubit). 28 trainable parameters on four qubits.
struct AnsatzSpec {
  int n_qubits = 4;
  EntanglerLayout entangler = EntanglerLayout::dc3_star;

  int parameter_count() const { return 7 * n_qubits; }
  void validate() const;
};

// Parameter slots are qubit-major within each layer:
//   0..2N-1    layer A, qubit k at (2k: RX, 2k+1: RZ)
//   2N..5N-1   layer B, qubit k at (2N+3k: RX, +1: RZ, +2: RX)
//   5N..7N-1   layer C, qubit k at (5N+2k: RX, 5N+2k+1: RZ)
Circuit build_circuit(const AnsatzSpec& spec, const RealVector& theta);

// 2^N state-preparation circuits of un-parameterized X gates; circuit i
// prepares basis state i exactly in the absence of noise.
std::vector<Circuit> hw_calibration_circuits(int n_qubits);

// Analytic ansatz parameters that prepare `target_index` through the full
// circuit: outer layers zero, middle layer per-qubit triples chosen as
// identity or flip on the preimage of the second entangling layer's
// GF(2) action.
RealVector circ_calibration_params(const AnsatzSpec& spec, int target_index);

// Classical propagation of a basis state through a CNOT list (bit_target
// ^= bit_control, in order).
int gf2_apply(const std::vector<std::pair<int, int>>& cnots, int basis_index);

}  // namespace qcbm
