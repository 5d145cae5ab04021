#pragma once

#include <string>
#include <vector>

#include "qcbm/types.hpp"

namespace qcbm {

enum class GateKind { RX, RZ, X, CNOT, SWAP };

std::string gate_kind_name(GateKind kind);

// One gate of the supported set. Rotation conventions:
//   RX(t) = exp(-i t X / 2),  RZ(t) = exp(-i t Z / 2).
struct Gate {
  GateKind kind = GateKind::X;
  int q0 = 0;
  int q1 = -1;       // two-qubit kinds only
  Real angle = 0.0;  // rotation kinds only

  static Gate rx(int q, Real angle) { return {GateKind::RX, q, -1, angle}; }
  static Gate rz(int q, Real angle) { return {GateKind::RZ, q, -1, angle}; }
  static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }
  static Gate cnot(int control, int target);
  static Gate swap(int a, int b);

  bool is_two_qubit() const {
    return kind == GateKind::CNOT || kind == GateKind::SWAP;
  }
  bool is_rotation() const {
    return kind == GateKind::RX || kind == GateKind::RZ;
  }
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  void push(const Gate& g);
};

}  // namespace qcbm
