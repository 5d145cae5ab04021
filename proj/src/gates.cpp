#include "qcbm/gates.hpp"

#include <stdexcept>

namespace qcbm {

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RZ: return "RZ";
    case GateKind::X: return "X";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
  }
  throw std::logic_error("unreachable");
}

Gate Gate::cnot(int control, int target) {
  if (control == target) {
    throw std::invalid_argument("CNOT: control equals target");
  }
  return {GateKind::CNOT, control, target, 0.0};
}

Gate Gate::swap(int a, int b) {
  if (a == b) throw std::invalid_argument("SWAP: identical qubits");
  return {GateKind::SWAP, a, b, 0.0};
}

void Circuit::push(const Gate& g) {
  if (g.q0 < 0 || g.q0 >= n_qubits ||
      (g.is_two_qubit() && (g.q1 < 0 || g.q1 >= n_qubits))) {
    throw std::invalid_argument("Circuit: gate qubit out of range");
  }
  gates.push_back(g);
}

}  // namespace qcbm
