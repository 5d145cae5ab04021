#include "qcbm/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "qcbm/basis.hpp"
#include "qcbm/resampling.hpp"

namespace qcbm {

namespace {

constexpr int kMaxStatevectorQubits = 6;
constexpr int kMaxDensityQubits = 5;
const Complex kImag(0.0, 1.0);

Eigen::Matrix2cd single_qubit_matrix(const Gate& g) {
  Eigen::Matrix2cd u;
  switch (g.kind) {
    case GateKind::RX: {
      const Real c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
      u << c, -kImag * s, -kImag * s, c;
      return u;
    }
    case GateKind::RZ: {
      u << std::exp(-kImag * (g.angle / 2)), 0.0, 0.0,
          std::exp(kImag * (g.angle / 2));
      return u;
    }
    case GateKind::X:
      u << 0, 1, 1, 0;
      return u;
    default:
      throw std::logic_error("single_qubit_matrix: two-qubit gate");
  }
}

void apply_gate_statevector(ComplexVector& state, const Gate& g) {
  const Index dim = state.size();
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::X: {
      const Eigen::Matrix2cd u = single_qubit_matrix(g);
      const Index bit = Index(1) << g.q0;
      for (Index i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Complex a0 = state(i), a1 = state(i | bit);
        state(i) = u(0, 0) * a0 + u(0, 1) * a1;
        state(i | bit) = u(1, 0) * a0 + u(1, 1) * a1;
      }
      return;
    }
    case GateKind::CNOT: {
      const Index cbit = Index(1) << g.q0, tbit = Index(1) << g.q1;
      for (Index i = 0; i < dim; ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(state(i), state(i | tbit));
      }
      return;
    }
    case GateKind::SWAP: {
      const Index abit = Index(1) << g.q0, bbit = Index(1) << g.q1;
      for (Index i = 0; i < dim; ++i) {
        if ((i & abit) && !(i & bbit)) {
          std::swap(state(i), state((i & ~abit) | bbit));
        }
      }
      return;
    }
  }
}

// Full-space unitary; fine at <= 32 dimensions.
ComplexMatrix full_unitary(const Gate& g, int n_qubits) {
  const Index dim = state_count(n_qubits);
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  if (g.is_two_qubit()) {
    const Index cbit = Index(1) << g.q0, tbit = Index(1) << g.q1;
    for (Index j = 0; j < dim; ++j) {
      Index i = j;
      if (g.kind == GateKind::CNOT) {
        if (j & cbit) i = j ^ tbit;
      } else {  // SWAP
        const bool ba = j & cbit, bb = j & tbit;
        if (ba != bb) i = (j ^ cbit) ^ tbit;
      }
      u(i, j) = 1.0;
    }
    return u;
  }
  const Eigen::Matrix2cd m = single_qubit_matrix(g);
  const Index bit = Index(1) << g.q0;
  for (Index j = 0; j < dim; ++j) {
    const Index jb = (j & bit) ? 1 : 0;
    u(j & ~bit, j) = m(0, jb);
    u(j | bit, j) = m(1, jb);
  }
  return u;
}

// Local depolarizing channel on the given qubits:
//   rho -> (1-p) rho + p (I/2^k (x) tr_sub rho).
void apply_depolarizing(ComplexMatrix& rho, const std::vector<int>& qubits,
                        Real p, int n_qubits) {
  if (p <= 0.0) return;
  const Index dim = state_count(n_qubits);
  Index mask = 0;
  for (int q : qubits) mask |= Index(1) << q;
  const int k = static_cast<int>(qubits.size());
  const Index sub_count = Index(1) << k;

  // scatter sub-pattern g onto the masked qubit positions
  std::vector<Index> scattered(static_cast<std::size_t>(sub_count));
  for (Index g = 0; g < sub_count; ++g) {
    Index s = 0;
    for (int j = 0; j < k; ++j) {
      if ((g >> j) & 1) s |= Index(1) << qubits[static_cast<std::size_t>(j)];
    }
    scattered[static_cast<std::size_t>(g)] = s;
  }

  ComplexMatrix mixed = ComplexMatrix::Zero(dim, dim);
  const Real inv = 1.0 / static_cast<Real>(sub_count);
  for (Index a = 0; a < dim; ++a) {
    if (a & mask) continue;
    for (Index b = 0; b < dim; ++b) {
      if (b & mask) continue;
      Complex tr = 0.0;
      for (Index g = 0; g < sub_count; ++g) {
        const Index s = scattered[static_cast<std::size_t>(g)];
        tr += rho(a | s, b | s);
      }
      for (Index g = 0; g < sub_count; ++g) {
        const Index s = scattered[static_cast<std::size_t>(g)];
        mixed(a | s, b | s) = tr * inv;
      }
    }
  }
  rho = (1.0 - p) * rho + p * mixed;
}

void check_circuit(const Circuit& circuit, int max_qubits) {
  if (circuit.n_qubits < 1 || circuit.n_qubits > max_qubits) {
    throw std::length_error("simulator: unsupported qubit count " +
                            std::to_string(circuit.n_qubits));
  }
  for (const Gate& g : circuit.gates) {
    if (g.q0 < 0 || g.q0 >= circuit.n_qubits ||
        (g.is_two_qubit() &&
         (g.q1 < 0 || g.q1 >= circuit.n_qubits || g.q1 == g.q0))) {
      throw std::invalid_argument("simulator: gate qubit out of range");
    }
  }
}

}  // namespace

NoiseModel NoiseModel::none(int n_qubits) {
  NoiseModel m;
  m.readout.assign(static_cast<std::size_t>(n_qubits), {0.0, 0.0});
  return m;
}

bool NoiseModel::is_zero() const {
  if (depol_1q != 0.0 || depol_2q != 0.0) return false;
  for (const auto& [p01, p10] : readout) {
    if (p01 != 0.0 || p10 != 0.0) return false;
  }
  return true;
}

void NoiseModel::validate(int n_qubits) const {
  if (readout.size() != static_cast<std::size_t>(n_qubits)) {
    throw std::invalid_argument("NoiseModel: readout entries != qubit count");
  }
  auto in_unit = [](Real p) { return p >= 0.0 && p <= 1.0; };
  for (const auto& [p01, p10] : readout) {
    if (!in_unit(p01) || !in_unit(p10)) {
      throw std::domain_error("NoiseModel: readout flip outside [0, 1]");
    }
  }
  if (!in_unit(depol_1q) || !in_unit(depol_2q)) {
    throw std::domain_error("NoiseModel: depolarizing rate outside [0, 1]");
  }
}

ProbabilityDistribution exact_distribution(const Circuit& circuit) {
  check_circuit(circuit, kMaxStatevectorQubits);
  const Index dim = state_count(circuit.n_qubits);
  ComplexVector state = ComplexVector::Zero(dim);
  state(0) = 1.0;
  for (const Gate& g : circuit.gates) apply_gate_statevector(state, g);
  return ProbabilityDistribution(state.cwiseAbs2());
}

RealMatrix readout_confusion_matrix(const NoiseModel& noise, int n_qubits) {
  noise.validate(n_qubits);
  const Index dim = state_count(n_qubits);
  RealMatrix r = RealMatrix::Ones(dim, dim);
  for (Index a = 0; a < dim; ++a) {
    for (Index b = 0; b < dim; ++b) {
      for (int k = 0; k < n_qubits; ++k) {
        const auto& [p01, p10] = noise.readout[static_cast<std::size_t>(k)];
        const bool ta = (a >> k) & 1, rb = (b >> k) & 1;
        const Real f = ta ? (rb ? 1.0 - p10 : p10) : (rb ? p01 : 1.0 - p01);
        r(a, b) *= f;
      }
    }
  }
  return r;
}

ProbabilityDistribution noisy_distribution(const Circuit& circuit,
                                           const NoiseModel& noise) {
  check_circuit(circuit, kMaxDensityQubits);
  noise.validate(circuit.n_qubits);
  const Index dim = state_count(circuit.n_qubits);

  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  for (const Gate& g : circuit.gates) {
    const ComplexMatrix u = full_unitary(g, circuit.n_qubits);
    rho = u * rho * u.adjoint();
    if (g.is_two_qubit()) {
      // a SWAP costs three CNOTs on hardware; charge the channel thrice
      const int reps = g.kind == GateKind::SWAP ? 3 : 1;
      for (int rep = 0; rep < reps; ++rep) {
        apply_depolarizing(rho, {g.q0, g.q1}, noise.depol_2q,
                           circuit.n_qubits);
      }
    } else {
      apply_depolarizing(rho, {g.q0}, noise.depol_1q, circuit.n_qubits);
    }
  }

  RealVector diag = rho.diagonal().real();
  diag = diag.cwiseMax(0.0);  // clamp density-matrix rounding
  diag /= diag.sum();

  const RealMatrix r = readout_confusion_matrix(noise, circuit.n_qubits);
  RealVector measured = r.transpose() * diag;
  measured = measured.cwiseMax(0.0);
  return ProbabilityDistribution(measured / measured.sum());
}

CountVector sample(const Circuit& circuit, const NoiseModel& noise,
                   long shots, RngStream& rng) {
  if (shots < 1) throw std::domain_error("sample: shots must be >= 1");
  return subsample(noisy_distribution(circuit, noise), shots, rng);
}

}  // namespace qcbm
