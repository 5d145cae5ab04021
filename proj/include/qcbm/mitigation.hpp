#pragma once

#include <filesystem>
#include <string>

#include "qcbm/ansatz.hpp"
#include "qcbm/device.hpp"
#include "qcbm/distribution.hpp"

namespace qcbm {

enum class AemClass { identity, hw, circ };

AemClass aem_class_from_name(const std::string& name);
std::string aem_class_name(AemClass kind);

struct AemMeta {
  std::string device;
  std::string layout;  // circ class only
  long shots = 0;      // 0 = exact (infinite-shot) construction
  std::string created;
};

// Row-stochastic assignment-error matrix: entries(i, j) = P(measure j |
// prepare i). Validated at construction: non-negative entries, row sums
// within 1e-9 of 1, condition number below 1e6, and exact identity
// entries for the identity class.
class AssignmentErrorMatrix {
 public:
  AssignmentErrorMatrix(AemClass kernel_class, RealMatrix entries,
                        AemMeta meta);

  static AssignmentErrorMatrix identity(Index n_states);

  AemClass kernel_class() const { return kernel_class_; }
  Index size() const { return entries_.rows(); }
  const RealMatrix& entries() const { return entries_; }
  const AemMeta& meta() const { return meta_; }

 private:
  AemClass kernel_class_;
  RealMatrix entries_;
  AemMeta meta_;
};

// Builds an AEM by sampling each calibration circuit at `shots` shots on
// the given device. Rows use per-circuit streams derived from `seed`.
AssignmentErrorMatrix build_aem(AemClass kind, const AnsatzSpec& spec,
                                const DeviceProfile& device, long shots,
                                std::uint64_t seed);

// Infinite-shot variant: rows are the exact noisy distributions.
AssignmentErrorMatrix build_aem_exact(AemClass kind, const AnsatzSpec& spec,
                                      const DeviceProfile& device);

// Solve entries^T c' = raw, clip negatives to zero. The clipped total is
// the effective shot size n_s' of the mitigated counts. Throws
// MitigationError when everything clips to zero.
CountVector mitigate(const CountVector& raw,
                     const AssignmentErrorMatrix& aem);

// Frobenius distance from the identity, sqrt(sum_ij |d_ij - K_ij|^2).
Real frobenius_distance(const AssignmentErrorMatrix& aem);

template <typename Derived>
Real frobenius_from_identity(const Eigen::MatrixBase<Derived>& entries) {
  using Scalar = typename Derived::Scalar;
  return (Matrix<Scalar>::Identity(entries.rows(), entries.cols()) - entries)
      .norm();
}

struct AemDiagnostics {
  Real condition_number = 1.0;  // spectral, from singular values
  Real min_row_fidelity = 1.0;  // min_i entries(i, i)
};

AemDiagnostics aem_condition_diagnostics(const AssignmentErrorMatrix& aem);

void save_aem(const AssignmentErrorMatrix& aem,
              const std::filesystem::path& path);
AssignmentErrorMatrix load_aem(const std::filesystem::path& path);

}  // namespace qcbm
