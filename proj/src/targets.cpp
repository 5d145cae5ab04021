#include "qcbm/targets.hpp"

#include <cmath>
#include <stdexcept>

#include "qcbm/basis.hpp"

namespace qcbm {

namespace {

constexpr int kMaxQubits = 6;

bool row_constant(Index image, int rows, int cols) {
  for (int r = 0; r < rows; ++r) {
    const bool first = (image >> (r * cols)) & 1;
    for (int c = 1; c < cols; ++c) {
      if (((image >> (r * cols + c)) & 1) != first) return false;
    }
  }
  return true;
}

bool col_constant(Index image, int rows, int cols) {
  for (int c = 0; c < cols; ++c) {
    const bool first = (image >> c) & 1;
    for (int r = 1; r < rows; ++r) {
      if (((image >> (r * cols + c)) & 1) != first) return false;
    }
  }
  return true;
}

}  // namespace

TargetKind target_kind_from_name(const std::string& name) {
  if (name == "bas22") return TargetKind::bas22;
  if (name == "poisson1") return TargetKind::poisson1;
  if (name == "poisson2") return TargetKind::poisson2;
  if (name == "custom") return TargetKind::custom;
  throw std::invalid_argument("unknown target kind: " + name);
}

std::string target_kind_name(TargetKind kind) {
  switch (kind) {
    case TargetKind::bas22: return "bas22";
    case TargetKind::poisson1: return "poisson1";
    case TargetKind::poisson2: return "poisson2";
    case TargetKind::custom: return "custom";
  }
  throw std::logic_error("unreachable");
}

ProbabilityDistribution bas_target(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::domain_error("bas_target: grid dimensions must be positive");
  }
  const int n_qubits = rows * cols;
  if (n_qubits > kMaxQubits) {
    throw std::length_error("bas_target: more than 6 qubits unsupported");
  }
  const Index n = state_count(n_qubits);
  RealVector probs = RealVector::Zero(n);
  for (Index image = 0; image < n; ++image) {
    if (row_constant(image, rows, cols) || col_constant(image, rows, cols)) {
      probs(image) = 1.0;
    }
  }
  return ProbabilityDistribution(probs / probs.sum());
}

ProbabilityDistribution poisson_target(TargetKind kind, Real lambda,
                                       Index n_states) {
  if (kind != TargetKind::poisson1 && kind != TargetKind::poisson2) {
    throw std::invalid_argument("poisson_target: kind must be a Poisson kind");
  }
  if (lambda <= 0.0) {
    throw std::domain_error("poisson_target: lambda must be positive");
  }
  if (n_states < 2) {
    throw std::domain_error("poisson_target: need at least two states");
  }
  RealVector probs = RealVector::Zero(n_states);
  Real pmf = std::exp(-lambda);  // k = 0 term, then the recurrence
  for (Index k = 0; k + 1 < n_states; ++k) {
    probs(k) = pmf;
    pmf *= lambda / static_cast<Real>(k + 1);
  }
  probs /= probs.sum();
  if (kind == TargetKind::poisson2) probs.reverseInPlace();
  return ProbabilityDistribution(std::move(probs));
}

ProbabilityDistribution make_target(const TargetSpec& spec, int n_qubits) {
  const Index n = state_count(n_qubits);
  switch (spec.kind) {
    case TargetKind::bas22:
      if (n_qubits != 4) {
        throw std::invalid_argument("bas22 target requires four qubits");
      }
      return bas_target(2, 2);
    case TargetKind::poisson1:
    case TargetKind::poisson2:
      return poisson_target(spec.kind, spec.lambda, n);
    case TargetKind::custom: {
      if (!spec.custom_probs) {
        throw std::invalid_argument("custom target needs explicit probs");
      }
      if (spec.custom_probs->size() != n) {
        throw std::invalid_argument("custom target has wrong length");
      }
      return ProbabilityDistribution(*spec.custom_probs);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace qcbm
