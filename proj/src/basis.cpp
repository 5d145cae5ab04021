#include "qcbm/basis.hpp"

#include <stdexcept>

namespace qcbm {

BasisState BasisState::from_index(int n_qubits, int index) {
  if (n_qubits < 1) throw std::domain_error("BasisState: need at least one qubit");
  if (index < 0 || index >= (1 << n_qubits)) {
    throw std::out_of_range("BasisState: index out of range");
  }
  return {n_qubits, index};
}

BasisState BasisState::from_bits(const std::vector<bool>& bits) {
  int index = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) index |= 1 << k;
  }
  return from_index(static_cast<int>(bits.size()), index);
}

std::string BasisState::str() const { return basis_label(n_qubits, index); }

std::string basis_label(int n_qubits, Index index) {
  std::string out(static_cast<std::size_t>(n_qubits), '0');
  for (int k = 0; k < n_qubits; ++k) {
    if ((index >> k) & 1) out[static_cast<std::size_t>(k)] = '1';
  }
  return out;
}

int qubit_count(Index n_states) {
  int n = 0;
  while ((Index(1) << n) < n_states) ++n;
  if ((Index(1) << n) != n_states) {
    throw std::invalid_argument("qubit_count: size is not a power of two");
  }
  return n;
}

}  // namespace qcbm
