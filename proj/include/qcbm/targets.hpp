#pragma once

#include <optional>
#include <string>

#include "qcbm/distribution.hpp"

namespace qcbm {

enum class TargetKind { bas22, poisson1, poisson2, custom };

TargetKind target_kind_from_name(const std::string& name);
std::string target_kind_name(TargetKind kind);

struct TargetSpec {
  TargetKind kind = TargetKind::bas22;
  Real lambda = 5.0;  // Poisson kinds only
  std::optional<RealVector> custom_probs;
};

// Bars-and-stripes distribution over rows*cols pixels: uniform over all
// images whose rows are constant or whose columns are constant. Pixel
// (r, c) maps to qubit r*cols + c.
ProbabilityDistribution bas_target(int rows = 2, int cols = 2);

// Discretized Poisson over n_states basis labels. poisson1 truncates the
// pmf at k = n_states-2 and pins p(n_states-1) = 0 before renormalizing;
// poisson2 is the left-right flip poisson2(k) = poisson1(n_states-1-k).
ProbabilityDistribution poisson_target(TargetKind kind, Real lambda,
                                       Index n_states = 16);

ProbabilityDistribution make_target(const TargetSpec& spec, int n_qubits);

}  // namespace qcbm
