#include "qcbm/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace qcbm {

KernelMatrix KernelMatrix::rbf(Index n_states, Real sigma) {
  if (n_states < 1) throw std::domain_error("KernelMatrix: empty");
  if (sigma <= 0.0) throw std::domain_error("KernelMatrix: sigma must be > 0");
  RealMatrix k(n_states, n_states);
  const Real inv = 1.0 / (2.0 * sigma * sigma);
  for (Index x = 0; x < n_states; ++x) {
    for (Index y = 0; y <= x; ++y) {
      const Real d = static_cast<Real>(x - y);
      const Real v = std::exp(-d * d * inv);
      k(x, y) = v;
      k(y, x) = v;
    }
  }
  return KernelMatrix(std::move(k), sigma);
}

KernelMatrix::KernelMatrix(RealMatrix entries, Real sigma)
    : entries_(std::move(entries)), sigma_(sigma) {
  const Eigen::SelfAdjointEigenSolver<RealMatrix> eig(entries_,
                                                      Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw std::domain_error("KernelMatrix: not positive semi-definite");
  }
}

}  // namespace qcbm
