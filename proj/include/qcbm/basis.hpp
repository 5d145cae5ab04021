#pragma once

#include <string>
#include <vector>

#include "qcbm/types.hpp"

namespace qcbm {

// Computational basis state of an N-qubit register.
//
// Convention (fixed project-wide): bit k of the index is the state of
// qubit k, i.e. index = sum_k bits[k] * 2^k. The display string lists
// qubit 0 leftmost, so index 4 on four qubits renders as "0010".
struct BasisState {
  int n_qubits = 0;
  int index = 0;

  static BasisState from_index(int n_qubits, int index);
  static BasisState from_bits(const std::vector<bool>& bits);

  bool bit(int k) const { return (index >> k) & 1; }
  std::string str() const;
};

inline Index state_count(int n_qubits) { return Index(1) << n_qubits; }

// Number of qubits for a 2^N-sized vector; throws if not a power of two.
int qubit_count(Index n_states);

std::string basis_label(int n_qubits, Index index);

}  // namespace qcbm
