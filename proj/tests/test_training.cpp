#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcbm/training.hpp"

using namespace qcbm;

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;

RealVector random_theta(Index n, RngStream& rng) {
  RealVector theta(n);
  for (Index i = 0; i < n; ++i) {
    theta(i) = (2.0 * uniform_unit(rng) - 1.0) * kPi;
  }
  return theta;
}

EvalBackend exact_backend(EntanglerLayout layout) {
  EvalBackend backend;
  backend.spec.entangler = layout;
  backend.device = device_preset("noiseless");
  backend.exact = true;
  return backend;
}

RealVector random_distribution(RngStream& rng, Index n) {
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = -std::log(uniform_unit(rng) + 1e-300);
  return v / v.sum();
}

}  // namespace

TEST_CASE("rbf kernel") {
  const KernelMatrix k = KernelMatrix::rbf(16, 0.1);
  CHECK(k.entries().diagonal() == RealVector::Ones(16));
  CHECK(k.entries() == k.entries().transpose());
  // distant entries underflow to zero at this bandwidth
  CHECK((k.entries().array() >= 0.0).all());
  CHECK((k.entries().array() <= 1.0).all());
  const KernelMatrix mild = KernelMatrix::rbf(16, 4.0);
  CHECK((mild.entries().array() > 0.0).all());

  // sigma = 0.1 makes the off-diagonal vanish at double precision
  CHECK(k.entries()(0, 1) == doctest::Approx(std::exp(-50.0)).epsilon(1e-12));
  CHECK((k.entries() - RealMatrix::Identity(16, 16))
            .lpNorm<Eigen::Infinity>() < 1e-20);

  CHECK_THROWS_AS(KernelMatrix::rbf(16, 0.0), std::domain_error);
}

TEST_CASE("mmd loss values") {
  const KernelMatrix k = KernelMatrix::rbf(2, 0.1);
  RealVector q(2), p(2);
  q << 1.0, 0.0;
  p << 0.0, 1.0;
  CHECK(mmd_loss(q, p, k) ==
        doctest::Approx(2.0 - 2.0 * std::exp(-50.0)).epsilon(1e-12));
  CHECK(mmd_loss(q, q, k) == 0.0);

  // huge bandwidth annihilates differences of normalized vectors
  const KernelMatrix wide = KernelMatrix::rbf(2, 1e9);
  CHECK(mmd_loss(q, p, wide) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(mmd_loss(RealVector::Ones(3) / 3.0, p, k),
                  std::invalid_argument);
}

TEST_CASE("mmd loss is a non-negative near-identity quadratic at sigma 0.1") {
  const KernelMatrix k = KernelMatrix::rbf(16, 0.1);
  RngStream rng = make_stream(19);
  for (int trial = 0; trial < 100; ++trial) {
    const RealVector q = random_distribution(rng, 16);
    const RealVector p = random_distribution(rng, 16);
    const Real loss = mmd_loss(q, p, k);
    CHECK(loss >= 0.0);
    CHECK(loss == doctest::Approx((q - p).squaredNorm()).epsilon(1e-15));
    if ((q - p).lpNorm<Eigen::Infinity>() > 1e-12) CHECK(loss > 0.0);
    CHECK(mmd_loss(q, q, k) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("parameter-shift gradient matches finite differences") {
  const ProbabilityDistribution target = bas_target(2, 2);
  const KernelMatrix kernel = KernelMatrix::rbf(16, 0.1);
  const AssignmentErrorMatrix id = AssignmentErrorMatrix::identity(16);
  RngStream rng = make_stream(29);

  for (auto layout : {EntanglerLayout::dc3_star, EntanglerLayout::dc2}) {
    const EvalBackend backend = exact_backend(layout);
    for (int trial = 0; trial < 10; ++trial) {
      const RealVector theta = random_theta(28, rng);
      const GradientResult shift =
          mmd_gradient(theta, backend, target, kernel, id, 0);

      const Real eps = 1e-6;
      for (Index s = 0; s < 28; ++s) {
        RealVector t = theta;
        t(s) = theta(s) + eps;
        const Real up = mmd_loss(evaluate_parameters(t, backend, id, 0).q,
                                 target, kernel);
        t(s) = theta(s) - eps;
        const Real down = mmd_loss(evaluate_parameters(t, backend, id, 0).q,
                                   target, kernel);
        const Real fd = (up - down) / (2.0 * eps);
        CHECK(std::abs(shift.gradient(s) - fd) <= 1e-5);
      }
    }
  }
}

TEST_CASE("trailing rz slots have zero gradient") {
  // layer C's RZ gates commute with the measurement, so their shifts
  // cannot move any probability
  const ProbabilityDistribution target = bas_target(2, 2);
  const KernelMatrix kernel = KernelMatrix::rbf(16, 0.1);
  const AssignmentErrorMatrix id = AssignmentErrorMatrix::identity(16);
  const EvalBackend backend = exact_backend(EntanglerLayout::dc3_star);
  RngStream rng = make_stream(37);
  const RealVector theta = random_theta(28, rng);
  const GradientResult g = mmd_gradient(theta, backend, target, kernel, id, 0);
  for (int q = 0; q < 4; ++q) {
    const Index rz_slot = 20 + 2 * q + 1;
    CHECK(std::abs(g.gradient(rz_slot)) <= 1e-12);
  }
}

TEST_CASE("adam") {
  SUBCASE("zero gradient leaves parameters unchanged") {
    AdamState state = AdamState::init(4, AdamConfig{0.25});
    const RealVector theta = RealVector::Ones(4);
    const RealVector next = adam_step(state, RealVector::Zero(4), theta);
    CHECK(next == theta);
  }

  SUBCASE("first step moves each component by about alpha") {
    AdamState state = AdamState::init(3, AdamConfig{0.25});
    RealVector grad(3);
    grad << 0.5, -2.0, 1e-3;
    const RealVector theta = RealVector::Zero(3);
    const RealVector next = adam_step(state, grad, theta);
    for (Index i = 0; i < 3; ++i) {
      CHECK(std::abs(next(i)) == doctest::Approx(0.25).epsilon(1e-4));
      CHECK(std::signbit(next(i)) != std::signbit(grad(i)));
    }
    CHECK(state.step_count == 1);
  }

  SUBCASE("identical inputs give identical outputs") {
    AdamState a = AdamState::init(2, AdamConfig{0.1});
    AdamState b = AdamState::init(2, AdamConfig{0.1});
    RealVector grad(2);
    grad << 0.3, -0.7;
    const RealVector theta = RealVector::Ones(2);
    CHECK(adam_step(a, grad, theta) == adam_step(b, grad, theta));
  }
}

TEST_CASE("train basics") {
  TrainConfig config;
  config.target.kind = TargetKind::bas22;
  config.spec.entangler = EntanglerLayout::dc3_star;
  config.device = device_preset("noiseless");
  config.exact = true;
  config.seed = 4;

  SUBCASE("zero steps records only the initial point") {
    config.steps = 0;
    const TrainTrace trace =
        train(config, AssignmentErrorMatrix::identity(16));
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].theta.size() == 28);
    CHECK(trace.steps[0].loss >= 0.0);
  }

  SUBCASE("trace length is steps plus one and loss decreases") {
    config.steps = 30;
    const TrainTrace trace =
        train(config, AssignmentErrorMatrix::identity(16));
    REQUIRE(trace.steps.size() == 31);
    CHECK(trace.steps.back().loss < trace.steps.front().loss);
  }

  SUBCASE("bit-reproducible given seed, config and AEM") {
    config.steps = 5;
    config.exact = false;
    config.device = device_preset("P_B");
    config.spec.entangler = EntanglerLayout::dc2;
    config.shots_per_eval = 256;
    const AssignmentErrorMatrix id = AssignmentErrorMatrix::identity(16);
    const TrainTrace a = train(config, id);
    const TrainTrace b = train(config, id);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t t = 0; t < a.steps.size(); ++t) {
      CHECK(a.steps[t].theta == b.steps[t].theta);
      CHECK(a.steps[t].raw_counts == b.steps[t].raw_counts);
      CHECK(a.steps[t].loss == b.steps[t].loss);
    }
  }

  SUBCASE("aem class must match the config") {
    config.aem_kind = AemClass::hw;
    CHECK_THROWS_AS(train(config, AssignmentErrorMatrix::identity(16)),
                    std::invalid_argument);
  }

  SUBCASE("from-file initialization is honored") {
    config.steps = 0;
    config.init = InitKind::from_file;
    config.init_theta = RealVector::Constant(28, 0.25);
    const TrainTrace trace =
        train(config, AssignmentErrorMatrix::identity(16));
    CHECK(trace.steps[0].theta == RealVector::Constant(28, 0.25));
  }
}

TEST_CASE("gradient vanishes where q equals p") {
  // zero parameters prepare |0000>; against a delta target the weighting
  // vector K (q - p) is exactly zero, so every shift cancels
  const EvalBackend backend = exact_backend(EntanglerLayout::dc3_star);
  const AssignmentErrorMatrix id = AssignmentErrorMatrix::identity(16);
  TargetSpec delta;
  delta.kind = TargetKind::custom;
  delta.custom_probs = ProbabilityDistribution::delta(16, 0).probs();
  const GradientResult g =
      mmd_gradient(RealVector::Zero(28), backend,
                   make_target(delta, 4), KernelMatrix::rbf(16, 0.1), id, 0);
  CHECK(g.gradient.lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("gradient at a converged noiseless optimum is numerically zero") {
  TrainConfig config;
  config.target.kind = TargetKind::bas22;
  config.spec.entangler = EntanglerLayout::dc3_star;
  config.device = device_preset("noiseless");
  config.exact = true;
  config.steps = 200;
  config.seed = 1;
  const AssignmentErrorMatrix id = AssignmentErrorMatrix::identity(16);
  const TrainTrace trace = train(config, id);
  CHECK(trace.steps.back().loss < trace.steps.front().loss);

  // polish to a stationary point: gradient descent with Armijo
  // backtracking and step growth to cover the flat directions
  const EvalBackend backend = exact_backend(EntanglerLayout::dc3_star);
  const ProbabilityDistribution target = bas_target(2, 2);
  const KernelMatrix kernel = KernelMatrix::rbf(16, 0.1);
  auto loss_at = [&](const RealVector& t) {
    return mmd_loss(evaluate_parameters(t, backend, id, 0).q, target, kernel);
  };
  RealVector theta = trace.steps.back().theta;
  RealVector grad;
  Real eta = 0.25;
  for (int it = 0; it < 3000; ++it) {
    grad = mmd_gradient(theta, backend, target, kernel, id, 0).gradient;
    if (grad.lpNorm<Eigen::Infinity>() <= 1e-9) break;
    const Real l0 = loss_at(theta);
    const Real slope = grad.squaredNorm();
    while (eta > 1e-12 && loss_at(theta - eta * grad) > l0 - 0.25 * eta * slope) {
      eta *= 0.5;
    }
    theta -= eta * grad;
    eta = std::min(eta * 1.5, 1e6);
  }
  CHECK(grad.lpNorm<Eigen::Infinity>() <= 1e-8);
}
