#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace qcbm {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar>
using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealVector = Vector<Real>;
using RealMatrix = Matrix<Real>;
using ComplexVector = Vector<Complex>;
using ComplexMatrix = Matrix<Complex>;

using Index = Eigen::Index;

// Raised when a calibration matrix is unusable (singular, ill-conditioned,
// malformed on disk).
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when mitigation clips every count to zero.
struct MitigationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RoutingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qcbm
