#pragma once

#include "qcbm/types.hpp"

namespace qcbm {

// Radial basis function kernel over integer basis-state labels,
// K(x, y) = exp(-(x - y)^2 / (2 sigma^2)). Positive semi-definiteness is
// checked once at construction.
class KernelMatrix {
 public:
  static KernelMatrix rbf(Index n_states, Real sigma);

  Index size() const { return entries_.rows(); }
  Real sigma() const { return sigma_; }
  const RealMatrix& entries() const { return entries_; }

 private:
  KernelMatrix(RealMatrix entries, Real sigma);

  RealMatrix entries_;
  Real sigma_;
};

}  // namespace qcbm
