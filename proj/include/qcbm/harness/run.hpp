#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "qcbm/harness/config.hpp"
#include "qcbm/resampling.hpp"

namespace qcbm {

struct MetricsRow {
  int step = 0;
  AemClass post = AemClass::identity;
  long shot_size = 0;
  Real mean_kl = 0.0;
  Real stddev_kl = 0.0;
  int divergences = 0;
};

// Replays every recorded parameter snapshot through the batch plan,
// pools the batches into a composite, mitigates with each post-processing
// AEM and sweeps the sub-sample shot sizes. One row per
// (snapshot, post AEM, shot size).
std::vector<MetricsRow> evaluate_trace(
    const TrainTrace& trace, const AnsatzSpec& spec,
    const DeviceProfile& device, const ProbabilityDistribution& target,
    const BatchPlan& batch,
    const std::vector<const AssignmentErrorMatrix*>& post_aems,
    const std::vector<long>& shot_sizes, int repeats, std::uint64_t seed);

struct DriftStudyResult {
  std::vector<Real> norms;  // Frobenius distance per AEM in the series
  std::vector<std::vector<MetricsRow>> sweeps;  // evaluate_trace per AEM
};

// Post-processes one trace under every AEM in a series, reporting each
// matrix's distance from the identity next to its KL sweep.
DriftStudyResult aem_drift_study(
    const std::vector<AssignmentErrorMatrix>& series, const TrainTrace& trace,
    const AnsatzSpec& spec, const DeviceProfile& device,
    const ProbabilityDistribution& target, const BatchPlan& batch,
    const std::vector<long>& shot_sizes, int repeats, std::uint64_t seed);

// Noise model with every parameter jittered by a relative factor drawn
// uniformly from [-rel, +rel]; stands in for day-to-day hardware drift.
NoiseModel jitter_noise(const NoiseModel& noise, Real rel, RngStream& rng);

// AEM series built under per-date jittered noise; meta records the
// synthetic date label.
std::vector<AssignmentErrorMatrix> jittered_aem_series(
    AemClass kind, const AnsatzSpec& spec, const DeviceProfile& device,
    int dates, Real jitter, long shots, std::uint64_t seed);

// --- run directory persistence ---

void save_trace(const TrainTrace& trace, const std::filesystem::path& path);
TrainTrace load_trace(const std::filesystem::path& path);

void save_metrics(const std::vector<MetricsRow>& rows,
                  const std::filesystem::path& path);
std::vector<MetricsRow> load_metrics(const std::filesystem::path& path);

std::filesystem::path aem_path(const std::filesystem::path& run_dir,
                               AemClass kind);

// Decimal rendering used in all tabular files: 12 significant digits,
// infinities as the token "inf".
std::string format_real(Real value);

}  // namespace qcbm
