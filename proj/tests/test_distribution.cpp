#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "qcbm/basis.hpp"
#include "qcbm/distribution.hpp"
#include "qcbm/resampling.hpp"
#include "qcbm/targets.hpp"

using namespace qcbm;

namespace {

// Brute-force oracle: reshape the image bits into a rows x cols grid and
// test row/column constancy pixel by pixel.
std::set<int> enumerate_bas_support(int rows, int cols) {
  std::set<int> support;
  const int n_pixels = rows * cols;
  for (int image = 0; image < (1 << n_pixels); ++image) {
    auto pixel = [&](int r, int c) { return (image >> (r * cols + c)) & 1; };
    bool rows_ok = true;
    for (int r = 0; r < rows && rows_ok; ++r) {
      for (int c = 1; c < cols; ++c) {
        if (pixel(r, c) != pixel(r, 0)) {
          rows_ok = false;
          break;
        }
      }
    }
    bool cols_ok = true;
    for (int c = 0; c < cols && cols_ok; ++c) {
      for (int r = 1; r < rows; ++r) {
        if (pixel(r, c) != pixel(0, c)) {
          cols_ok = false;
          break;
        }
      }
    }
    if (rows_ok || cols_ok) support.insert(image);
  }
  return support;
}

// Independent pmf route via lgamma, against the implementation's
// multiplicative recurrence.
RealVector poisson_oracle(Real lambda, Index n_states) {
  RealVector p = RealVector::Zero(n_states);
  for (Index k = 0; k + 1 < n_states; ++k) {
    p(k) = std::exp(static_cast<Real>(k) * std::log(lambda) - lambda -
                    std::lgamma(static_cast<Real>(k) + 1.0));
  }
  return p / p.sum();
}

RealVector random_distribution(RngStream& rng, Index n) {
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = -std::log(uniform_unit(rng) + 1e-300);
  return v / v.sum();
}

}  // namespace

TEST_CASE("basis state index and label conventions") {
  CHECK(BasisState::from_index(4, 4).bit(2));
  CHECK_FALSE(BasisState::from_index(4, 4).bit(0));
  CHECK(BasisState::from_index(4, 4).str() == "0010");  // qubit 0 leftmost
  CHECK(BasisState::from_bits({true, true, false, false}).index == 3);
  CHECK(basis_label(4, 3) == "1100");
  CHECK_THROWS_AS(BasisState::from_index(4, 16), std::out_of_range);
  CHECK(qubit_count(16) == 4);
  CHECK_THROWS_AS(qubit_count(12), std::invalid_argument);
}

TEST_CASE("bas target matches the brute-force enumeration") {
  const auto support = enumerate_bas_support(2, 2);
  CHECK(support == std::set<int>{0, 3, 5, 10, 12, 15});
  CHECK(support.size() == 6);

  const ProbabilityDistribution p = bas_target(2, 2);
  REQUIRE(p.size() == 16);
  for (Index i = 0; i < 16; ++i) {
    if (support.count(static_cast<int>(i))) {
      CHECK(p(i) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    } else {
      CHECK(p(i) == 0.0);
    }
  }

  // display-convention spot check against the documented support set
  std::set<std::string> labels;
  for (int s : support) labels.insert(basis_label(4, s));
  CHECK(labels == std::set<std::string>{"0000", "0011", "1100", "0101",
                                        "1010", "1111"});
}

TEST_CASE("bas target support for every grid up to six pixels") {
  for (auto [rows, cols] : {std::pair{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1},
                            {2, 2}, {2, 3}, {3, 2}, {1, 6}, {6, 1}}) {
    const auto support = enumerate_bas_support(rows, cols);
    const ProbabilityDistribution p = bas_target(rows, cols);
    int nonzero = 0;
    for (Index i = 0; i < p.size(); ++i) {
      const bool in_support = support.count(static_cast<int>(i)) > 0;
      CHECK(in_support == (p(i) > 0.0));
      if (p(i) > 0.0) {
        ++nonzero;
        CHECK(p(i) == doctest::Approx(1.0 / support.size()).epsilon(1e-12));
      }
    }
    CHECK(nonzero == static_cast<int>(support.size()));
  }
}

TEST_CASE("bas target edge cases") {
  const ProbabilityDistribution p = bas_target(1, 1);
  CHECK(p(0) == doctest::Approx(0.5));
  CHECK(p(1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(bas_target(3, 3), std::length_error);
  CHECK_THROWS_AS(bas_target(0, 2), std::domain_error);
}

TEST_CASE("poisson targets") {
  const ProbabilityDistribution p1 = poisson_target(TargetKind::poisson1, 5.0);
  REQUIRE(p1.size() == 16);
  CHECK(p1(15) == 0.0);

  const RealVector oracle = poisson_oracle(5.0, 16);
  for (Index k = 0; k < 16; ++k) {
    CHECK(p1(k) == doctest::Approx(oracle(k)).epsilon(1e-12));
  }

  // smallest nonzero amplitude sits at k = 14, near the reported 5e-4
  Real min_nonzero = 1.0;
  Index argmin = -1;
  for (Index k = 0; k < 16; ++k) {
    if (p1(k) > 0.0 && p1(k) < min_nonzero) {
      min_nonzero = p1(k);
      argmin = k;
    }
  }
  CHECK(argmin == 14);
  CHECK(min_nonzero > 3e-4);
  CHECK(min_nonzero < 7e-4);
  CHECK(min_nonzero == doctest::Approx(4.717e-4).epsilon(1e-3));

  const ProbabilityDistribution p2 = poisson_target(TargetKind::poisson2, 5.0);
  CHECK(p2(0) == 0.0);
  for (Index k = 0; k < 16; ++k) {
    CHECK(p2(k) == p1(15 - k));  // exact flip
  }

  CHECK_THROWS_AS(poisson_target(TargetKind::poisson1, -1.0),
                  std::domain_error);
  CHECK_THROWS_AS(poisson_target(TargetKind::bas22, 5.0),
                  std::invalid_argument);
}

TEST_CASE("kl divergence values") {
  const ProbabilityDistribution bas = bas_target(2, 2);
  CHECK(kl_divergence(bas, bas) == 0.0);

  // six terms of (1/6) ln((1/6)/(1/16)) by hand
  const Real by_hand = 6.0 * (1.0 / 6.0) * std::log((1.0 / 6.0) / (1.0 / 16.0));
  CHECK(by_hand == doctest::Approx(0.980829253012).epsilon(1e-10));
  CHECK(kl_divergence(bas, ProbabilityDistribution::uniform(16)) ==
        doctest::Approx(by_hand).epsilon(1e-12));

  // q vanishing on a support state diverges
  RealVector q = bas.probs();
  q(0) = 0.0;
  q /= q.sum();
  CHECK(std::isinf(kl_divergence(bas, ProbabilityDistribution(q))));

  // p-zero terms contribute nothing even when q is zero there
  RealVector p = RealVector::Zero(4), r = RealVector::Zero(4);
  p(0) = 1.0;
  r(0) = 1.0;
  CHECK(kl_divergence(ProbabilityDistribution(p),
                      ProbabilityDistribution(r)) == 0.0);

  CHECK_THROWS_AS(
      kl_divergence(bas, ProbabilityDistribution::uniform(8)),
      std::invalid_argument);
}

TEST_CASE("kl divergence is non-negative with equality iff equal") {
  RngStream rng = make_stream(17);
  for (int trial = 0; trial < 200; ++trial) {
    const RealVector p = random_distribution(rng, 16);
    const RealVector q = random_distribution(rng, 16);
    const Real kl = kl_divergence(p, q);
    CHECK(kl >= 0.0);
    if ((p - q).lpNorm<Eigen::Infinity>() > 1e-12) CHECK(kl > 0.0);
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("probability distribution invariants") {
  CHECK_THROWS_AS(ProbabilityDistribution(RealVector::Constant(4, 0.3)),
                  std::domain_error);
  RealVector negative = RealVector::Zero(4);
  negative(0) = 1.5;
  negative(1) = -0.5;
  CHECK_THROWS_AS(ProbabilityDistribution{negative}, std::domain_error);
  CHECK_THROWS_AS(ProbabilityDistribution{RealVector{}},
                  std::invalid_argument);
}

TEST_CASE("subsample") {
  RngStream rng = make_stream(42);

  SUBCASE("delta source concentrates all shots") {
    const CountVector counts =
        subsample(ProbabilityDistribution::delta(16, 5), 512, rng);
    CHECK(counts(5) == 512.0);
    CHECK(counts.effective_shots() == 512.0);
  }

  SUBCASE("same seed reproduces bit-identical counts") {
    const ProbabilityDistribution u = ProbabilityDistribution::uniform(16);
    RngStream a = make_stream(7), b = make_stream(7);
    const CountVector ca = subsample(u, 4096, a);
    const CountVector cb = subsample(u, 4096, b);
    CHECK(ca.counts() == cb.counts());
    CHECK(ca.effective_shots() == 4096.0);
  }

  SUBCASE("zero states never drawn") {
    RealVector w = RealVector::Zero(2);
    w(0) = 10.0;
    const CountVector counts = subsample(CountVector(w), 7, rng);
    CHECK(counts(0) == 7.0);
    CHECK(counts(1) == 0.0);
  }

  SUBCASE("empirical distribution converges in L1") {
    const ProbabilityDistribution u = ProbabilityDistribution::uniform(16);
    const CountVector counts = subsample(u, 100000, rng);
    const Real l1 =
        (counts.counts() / 100000.0 - u.probs()).lpNorm<1>();
    CHECK(l1 <= 0.05);
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(subsample(CountVector(RealVector::Zero(4)), 10, rng),
                    std::domain_error);
    CHECK_THROWS_AS(
        subsample(ProbabilityDistribution::uniform(4), 0, rng),
        std::domain_error);
  }
}

TEST_CASE("composite pooling") {
  RngStream rng = make_stream(3);
  const ProbabilityDistribution u = ProbabilityDistribution::uniform(16);

  std::vector<CountVector> batches;
  for (int b = 0; b < 5; ++b) batches.push_back(subsample(u, 2048, rng));
  const CountVector pooled = composite(batches);
  CHECK(pooled.effective_shots() == 10240.0);

  std::vector<CountVector> two;
  for (int b = 0; b < 2; ++b) two.push_back(subsample(u, 8192, rng));
  CHECK(composite(two).effective_shots() == 16384.0);

  const CountVector single = composite({batches.front()});
  CHECK(single.counts() == batches.front().counts());

  CHECK_THROWS_AS(composite({}), std::domain_error);
}

TEST_CASE("mean_kl") {
  RngStream rng = make_stream(11);
  const ProbabilityDistribution bas = bas_target(2, 2);

  SUBCASE("self-distance shrinks with shot size") {
    const CountVector source = CountVector(bas.probs() * 10240.0);
    const MeanKl coarse = mean_kl(bas, source, 512, 10, rng);
    const MeanKl fine = mean_kl(bas, source, 100000, 10, rng);
    CHECK(coarse.divergences == 0);
    CHECK(fine.mean < coarse.mean);
    CHECK(fine.mean < 0.01);
  }

  SUBCASE("single repeat has zero stddev") {
    const MeanKl m = mean_kl(bas, CountVector(bas.probs()), 2048, 1, rng);
    CHECK(m.stddev == 0.0);
  }

  SUBCASE("missing support state diverges every repeat") {
    RealVector counts = bas.probs() * 2048.0;
    counts(0) = 0.0;  // zero out a support state
    const MeanKl m = mean_kl(bas, CountVector(counts), 2048, 10, rng);
    CHECK(std::isinf(m.mean));
    CHECK(m.divergences == 10);
  }

  SUBCASE("repeats must be positive") {
    CHECK_THROWS_AS(mean_kl(bas, CountVector(bas.probs()), 100, 0, rng),
                    std::domain_error);
  }
}

TEST_CASE("threshold filter") {
  const ProbabilityDistribution u = ProbabilityDistribution::uniform(16);
  CHECK(threshold_filter(u, 0.05).probs() == u.probs());

  RealVector v(2);
  v << 0.9, 0.1;
  const ProbabilityDistribution filtered =
      threshold_filter(ProbabilityDistribution(v), 0.2);
  CHECK(filtered(0) == 1.0);
  CHECK(filtered(1) == 0.0);

  const ProbabilityDistribution delta = ProbabilityDistribution::delta(16, 3);
  CHECK(threshold_filter(delta, 0.99).probs() == delta.probs());

  CHECK_THROWS_AS(threshold_filter(u, 0.99), std::domain_error);
  CHECK_THROWS_AS(threshold_filter(u, 0.0), std::domain_error);
}

TEST_CASE("normalize") {
  RealVector counts(2);
  counts << 3.0, 1.0;
  const ProbabilityDistribution p = normalize(CountVector(counts));
  CHECK(p(0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(normalize(CountVector(RealVector::Zero(4))),
                  std::domain_error);
}
