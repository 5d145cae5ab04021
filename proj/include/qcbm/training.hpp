#pragma once

#include <string>
#include <vector>

#include "qcbm/execution.hpp"
#include "qcbm/kernel.hpp"
#include "qcbm/mitigation.hpp"
#include "qcbm/targets.hpp"

namespace qcbm {

// Squared-MMD quadratic form (q - p)^T K (q - p).
template <typename DerivedQ, typename DerivedP>
Real mmd_loss(const Eigen::MatrixBase<DerivedQ>& q,
              const Eigen::MatrixBase<DerivedP>& p,
              const KernelMatrix& kernel) {
  if (q.size() != p.size() || q.size() != kernel.size()) {
    throw std::invalid_argument("mmd_loss: dimension mismatch");
  }
  const RealVector d = q - p;
  return d.dot(kernel.entries() * d);
}

Real mmd_loss(const ProbabilityDistribution& q,
              const ProbabilityDistribution& p, const KernelMatrix& kernel);

// How a parameter vector is turned into a mitigated distribution: build
// the ansatz circuit, route onto the device, then either take exact
// probabilities or sample `shots` measurements.
struct EvalBackend {
  AnsatzSpec spec;
  DeviceProfile device;
  bool exact = false;
  long shots = 2048;
};

struct Evaluation {
  CountVector raw;
  CountVector mitigated;
  ProbabilityDistribution q;  // normalized mitigated distribution
};

Evaluation evaluate_parameters(const RealVector& theta,
                               const EvalBackend& backend,
                               const AssignmentErrorMatrix& aem,
                               std::uint64_t stream_seed);

struct GradientResult {
  RealVector gradient;
  Evaluation base;  // unshifted evaluation, shared with the loss
};

// Parameter-shift gradient of the MMD loss over mitigated distributions:
// grad_s = (q+ - q-)^T K (q - p) with shifts of +-pi/2 per slot.
// 56 shifted evaluations plus one base evaluation. Per-evaluation streams
// derive from (seed, step, slot, shift sign).
GradientResult mmd_gradient(const RealVector& theta,
                            const EvalBackend& backend,
                            const ProbabilityDistribution& target,
                            const KernelMatrix& kernel,
                            const AssignmentErrorMatrix& aem,
                            std::uint64_t seed, long step = 0);

struct AdamConfig {
  Real alpha = 0.25;
  Real beta1 = 0.9;
  Real beta2 = 0.999;
  Real epsilon = 1e-8;
};

struct AdamState {
  RealVector first_moment;
  RealVector second_moment;
  long step_count = 0;
  AdamConfig config;

  static AdamState init(Index n, AdamConfig config = {});
};

// Bias-corrected Adam update; returns the new parameter vector.
RealVector adam_step(AdamState& state, const RealVector& grad,
                     const RealVector& theta);

enum class InitKind { random, from_file };

struct TrainConfig {
  TargetSpec target;
  AnsatzSpec spec;
  DeviceProfile device;
  AemClass aem_kind = AemClass::identity;
  int steps = 25;
  long shots_per_eval = 2048;
  std::uint64_t seed = 0;
  InitKind init = InitKind::random;
  RealVector init_theta;  // init == from_file
  Real alpha = 0.25;
  Real kernel_sigma = 0.1;
  bool exact = false;  // exact-probability mode (sampling bypassed)

  void validate() const;
};

struct TrainStep {
  RealVector theta;
  RealVector raw_counts;
  RealVector mitigated;  // mitigated distribution
  Real loss = 0.0;
  bool degenerate = false;  // mitigation clipped to zero; update skipped
};

struct TrainTrace {
  std::vector<TrainStep> steps;  // length config.steps + 1
  std::uint64_t config_hash = 0;
  std::string aem_ref;
  AemClass aem_class = AemClass::identity;
};

// DDCL loop: evaluate -> mitigate -> loss -> mitigated gradient -> Adam.
// The AEM is fixed for the whole run. Bit-reproducible given
// (seed, config, AEM).
TrainTrace train(const TrainConfig& config, const AssignmentErrorMatrix& aem);

RealVector random_initial_parameters(const AnsatzSpec& spec,
                                     std::uint64_t seed);

}  // namespace qcbm
