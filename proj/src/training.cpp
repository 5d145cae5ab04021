#include "qcbm/training.hpp"

#include <cmath>
#include <numbers>

#include "qcbm/basis.hpp"

namespace qcbm {

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;
constexpr Real kShift = kPi / 2.0;

// Stream labels: base evaluation is slot 0; shifted evaluations use
// (slot + 1, sign) so the contract (seed, step, slot, shift sign) holds.
std::uint64_t eval_seed(std::uint64_t seed, long step, int slot, int sign) {
  return derive_seed(seed, static_cast<std::uint64_t>(step),
                     static_cast<std::uint64_t>(slot + 1),
                     static_cast<std::uint64_t>(sign));
}

}  // namespace

Real mmd_loss(const ProbabilityDistribution& q,
              const ProbabilityDistribution& p, const KernelMatrix& kernel) {
  return mmd_loss(q.probs(), p.probs(), kernel);
}

Evaluation evaluate_parameters(const RealVector& theta,
                               const EvalBackend& backend,
                               const AssignmentErrorMatrix& aem,
                               std::uint64_t stream_seed) {
  const Circuit circuit = build_circuit(backend.spec, theta);
  CountVector raw = [&] {
    if (backend.exact) {
      return CountVector(run_exact(circuit, backend.device).probs());
    }
    RngStream rng = make_stream(stream_seed);
    return run_sampled(circuit, backend.device, backend.shots, rng);
  }();
  CountVector mitigated = mitigate(raw, aem);
  ProbabilityDistribution q = normalize(mitigated);
  return Evaluation{std::move(raw), std::move(mitigated), std::move(q)};
}

GradientResult mmd_gradient(const RealVector& theta,
                            const EvalBackend& backend,
                            const ProbabilityDistribution& target,
                            const KernelMatrix& kernel,
                            const AssignmentErrorMatrix& aem,
                            std::uint64_t seed, long step) {
  Evaluation base =
      evaluate_parameters(theta, backend, aem, eval_seed(seed, step, -1, 0));
  const RealVector weighted =
      kernel.entries() * (base.q.probs() - target.probs());

  RealVector grad(theta.size());
  RealVector shifted = theta;
  for (Index s = 0; s < theta.size(); ++s) {
    const Real saved = theta(s);
    auto eval_shift = [&](Real delta, int sign) {
      shifted(s) = saved + delta;
      try {
        return evaluate_parameters(shifted, backend, aem,
                                   eval_seed(seed, step, static_cast<int>(s),
                                             sign));
      } catch (const MitigationError& e) {
        throw MitigationError("slot " + std::to_string(s) +
                              (sign ? " (-)" : " (+)") + ": " + e.what());
      }
    };
    const Evaluation plus = eval_shift(kShift, 0);
    const Evaluation minus = eval_shift(-kShift, 1);
    shifted(s) = saved;
    grad(s) = (plus.q.probs() - minus.q.probs()).dot(weighted);
  }
  return GradientResult{std::move(grad), std::move(base)};
}

AdamState AdamState::init(Index n, AdamConfig config) {
  AdamState s;
  s.first_moment = RealVector::Zero(n);
  s.second_moment = RealVector::Zero(n);
  s.step_count = 0;
  s.config = config;
  return s;
}

RealVector adam_step(AdamState& state, const RealVector& grad,
                     const RealVector& theta) {
  if (grad.size() != theta.size() ||
      grad.size() != state.first_moment.size()) {
    throw std::invalid_argument("adam_step: dimension mismatch");
  }
  const AdamConfig& c = state.config;
  state.step_count += 1;
  state.first_moment = c.beta1 * state.first_moment + (1.0 - c.beta1) * grad;
  state.second_moment = c.beta2 * state.second_moment +
                        (1.0 - c.beta2) * grad.cwiseProduct(grad);
  const Real bias1 = 1.0 - std::pow(c.beta1, static_cast<Real>(state.step_count));
  const Real bias2 = 1.0 - std::pow(c.beta2, static_cast<Real>(state.step_count));
  const RealVector m_hat = state.first_moment / bias1;
  const RealVector v_hat = state.second_moment / bias2;
  return theta -
         c.alpha * (m_hat.array() / (v_hat.array().sqrt() + c.epsilon)).matrix();
}

RealVector random_initial_parameters(const AnsatzSpec& spec,
                                     std::uint64_t seed) {
  RngStream rng = make_stream(derive_seed(seed, 0x696e6974ULL));
  RealVector theta(spec.parameter_count());
  for (Index i = 0; i < theta.size(); ++i) {
    theta(i) = (2.0 * uniform_unit(rng) - 1.0) * kPi;
  }
  return theta;
}

void TrainConfig::validate() const {
  spec.validate();
  device.validate();
  if (steps < 0) throw std::domain_error("TrainConfig: negative step count");
  if (shots_per_eval < 1) {
    throw std::domain_error("TrainConfig: shots_per_eval must be >= 1");
  }
  if (alpha <= 0.0) throw std::domain_error("TrainConfig: alpha must be > 0");
  if (kernel_sigma <= 0.0) {
    throw std::domain_error("TrainConfig: kernel sigma must be > 0");
  }
  if (init == InitKind::from_file &&
      init_theta.size() != spec.parameter_count()) {
    throw std::invalid_argument("TrainConfig: initial parameters have wrong length");
  }
}

TrainTrace train(const TrainConfig& config, const AssignmentErrorMatrix& aem) {
  config.validate();
  if (aem.kernel_class() != config.aem_kind) {
    throw std::invalid_argument("train: AEM class does not match config");
  }
  if (aem.size() != state_count(config.spec.n_qubits)) {
    throw std::invalid_argument("train: AEM size does not match ansatz");
  }

  const ProbabilityDistribution target =
      make_target(config.target, config.spec.n_qubits);
  const KernelMatrix kernel =
      KernelMatrix::rbf(target.size(), config.kernel_sigma);
  const EvalBackend backend{config.spec, config.device, config.exact,
                            config.shots_per_eval};

  RealVector theta = config.init == InitKind::random
                         ? random_initial_parameters(config.spec, config.seed)
                         : config.init_theta;
  AdamState adam = AdamState::init(theta.size(), AdamConfig{config.alpha});

  TrainTrace trace;
  trace.aem_class = aem.kernel_class();
  trace.steps.reserve(static_cast<std::size_t>(config.steps) + 1);

  for (long step = 0; step <= config.steps; ++step) {
    TrainStep record;
    record.theta = theta;
    try {
      if (step == config.steps) {  // final point: evaluate only
        const Evaluation eval = evaluate_parameters(
            theta, backend, aem, eval_seed(config.seed, step, -1, 0));
        record.raw_counts = eval.raw.counts();
        record.mitigated = eval.q.probs();
        record.loss = mmd_loss(eval.q, target, kernel);
      } else {
        GradientResult g = mmd_gradient(theta, backend, target, kernel, aem,
                                        config.seed, step);
        record.raw_counts = g.base.raw.counts();
        record.mitigated = g.base.q.probs();
        record.loss = mmd_loss(g.base.q, target, kernel);
        theta = adam_step(adam, g.gradient, theta);
      }
    } catch (const MitigationError&) {
      // distorted mitigated amplitude: keep the parameters, log the step
      record.degenerate = true;
      record.raw_counts = RealVector::Zero(target.size());
      record.mitigated = RealVector::Zero(target.size());
      record.loss = std::numeric_limits<Real>::infinity();
    }
    trace.steps.push_back(std::move(record));
  }
  return trace;
}

}  // namespace qcbm
