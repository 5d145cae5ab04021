#include "qcbm/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcbm/basis.hpp"
#include "qcbm/simulator.hpp"

namespace qcbm {

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;

// Middle-layer RX/RZ/RX angles that flip a qubit up to phase. Verified at
// first use by simulation; RX(pi) is proportional to X under the
// exp(-i t X / 2) convention.
constexpr Real kFlipTriple[3] = {kPi, 0.0, 0.0};

void verify_flip_triple() {
  static const bool ok = [] {
    Circuit c;
    c.n_qubits = 1;
    c.push(Gate::rx(0, kFlipTriple[0]));
    c.push(Gate::rz(0, kFlipTriple[1]));
    c.push(Gate::rx(0, kFlipTriple[2]));
    return exact_distribution(c)(1) > 1.0 - 1e-12;
  }();
  if (!ok) {
    throw std::logic_error(
        "calibration flip triple does not map |0> to |1> under the "
        "simulator's rotation conventions");
  }
}

}  // namespace

EntanglerLayout entangler_from_name(const std::string& name) {
  if (name == "dc2") return EntanglerLayout::dc2;
  if (name == "dc3_line") return EntanglerLayout::dc3_line;
  if (name == "dc3_star") return EntanglerLayout::dc3_star;
  throw std::invalid_argument("unknown entangler layout: " + name);
}

std::string entangler_name(EntanglerLayout layout) {
  switch (layout) {
    case EntanglerLayout::dc2: return "dc2";
    case EntanglerLayout::dc3_line: return "dc3_line";
    case EntanglerLayout::dc3_star: return "dc3_star";
  }
  throw std::logic_error("unreachable");
}

std::vector<std::pair<int, int>> entangler_pairs(EntanglerLayout layout) {
  switch (layout) {
    case EntanglerLayout::dc2: return {{0, 1}, {2, 3}};
    case EntanglerLayout::dc3_line: return {{0, 1}, {1, 2}, {2, 3}};
    case EntanglerLayout::dc3_star: return {{0, 1}, {0, 2}, {0, 3}};
  }
  throw std::logic_error("unreachable");
}

void AnsatzSpec::validate() const {
  if (n_qubits != 4) {
    throw std::invalid_argument("AnsatzSpec: layouts are defined on 4 qubits");
  }
  for (const auto& [c, t] : entangler_pairs(entangler)) {
    if (c == t || c < 0 || t < 0 || c >= n_qubits || t >= n_qubits) {
      throw std::invalid_argument("AnsatzSpec: bad entangler pair");
    }
  }
}

Circuit build_circuit(const AnsatzSpec& spec, const RealVector& theta) {
  spec.validate();
  if (theta.size() != spec.parameter_count()) {
    throw std::invalid_argument("build_circuit: expected " +
                                std::to_string(spec.parameter_count()) +
                                " parameters, got " +
                                std::to_string(theta.size()));
  }
  const int n = spec.n_qubits;
  const auto pairs = entangler_pairs(spec.entangler);

  Circuit c;
  c.n_qubits = n;
  for (int q = 0; q < n; ++q) {  // layer A
    c.push(Gate::rx(q, theta(2 * q)));
    c.push(Gate::rz(q, theta(2 * q + 1)));
  }
  for (const auto& [ctl, tgt] : pairs) c.push(Gate::cnot(ctl, tgt));
  for (int q = 0; q < n; ++q) {  // layer B
    const Index base = 2 * n + 3 * q;
    c.push(Gate::rx(q, theta(base)));
    c.push(Gate::rz(q, theta(base + 1)));
    c.push(Gate::rx(q, theta(base + 2)));
  }
  for (const auto& [ctl, tgt] : pairs) c.push(Gate::cnot(ctl, tgt));
  for (int q = 0; q < n; ++q) {  // layer C
    const Index base = 5 * n + 2 * q;
    c.push(Gate::rx(q, theta(base)));
    c.push(Gate::rz(q, theta(base + 1)));
  }
  return c;
}

std::vector<Circuit> hw_calibration_circuits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 6) {
    throw std::length_error("hw_calibration_circuits: unsupported size");
  }
  const Index n = state_count(n_qubits);
  std::vector<Circuit> circuits;
  circuits.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    Circuit c;
    c.n_qubits = n_qubits;
    for (int k = 0; k < n_qubits; ++k) {
      if ((i >> k) & 1) c.push(Gate::x(k));
    }
    circuits.push_back(std::move(c));
  }
  return circuits;
}

int gf2_apply(const std::vector<std::pair<int, int>>& cnots,
              int basis_index) {
  int state = basis_index;
  for (const auto& [c, t] : cnots) {
    if ((state >> c) & 1) state ^= 1 << t;
  }
  return state;
}

RealVector circ_calibration_params(const AnsatzSpec& spec, int target_index) {
  spec.validate();
  verify_flip_triple();
  if (target_index < 0 || target_index >= (1 << spec.n_qubits)) {
    throw std::out_of_range("circ_calibration_params: target out of range");
  }

  // The outer layers are zero, so the state entering the second entangler
  // is exactly the flip pattern a; invert that layer's GF(2) action to
  // land on the target. CNOTs are self-inverse, so the inverse applies
  // them in reverse order.
  auto pairs = entangler_pairs(spec.entangler);
  std::vector<std::pair<int, int>> reversed(pairs.rbegin(), pairs.rend());
  const int flips = gf2_apply(reversed, target_index);

  RealVector theta = RealVector::Zero(spec.parameter_count());
  for (int q = 0; q < spec.n_qubits; ++q) {
    if ((flips >> q) & 1) {
      const Index base = 2 * spec.n_qubits + 3 * q;
      theta(base) = kFlipTriple[0];
      theta(base + 1) = kFlipTriple[1];
      theta(base + 2) = kFlipTriple[2];
    }
  }
  return theta;
}

}  // namespace qcbm
