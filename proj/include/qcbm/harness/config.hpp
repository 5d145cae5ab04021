#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qcbm/training.hpp"

#include <nlohmann/json_fwd.hpp>

namespace qcbm {

struct BatchPlan {
  int count = 5;
  long shots = 2048;

  long effective_shots() const { return count * shots; }
};

struct DriftPlan {
  int dates = 0;  // 0 disables the drift study
  Real jitter = 0.2;
  AemClass kind = AemClass::hw;
};

struct CalibrationPlan {
  std::vector<AemClass> kinds = {AemClass::identity, AemClass::hw,
                                 AemClass::circ};
  long shots = 4096;
};

// Full experiment description: training setup plus the evaluation batch
// plan, post-processing AEM kinds, and sub-sample sweep.
struct ExperimentConfig {
  TrainConfig train;
  CalibrationPlan calibration;
  BatchPlan batch;
  std::vector<AemClass> post_aems = {AemClass::identity, AemClass::hw,
                                     AemClass::circ};
  std::vector<long> subsample_shots = {4096, 2048, 512};
  int repeats = 10;
  DriftPlan drift;

  void validate() const;
};

// Fail-closed parser: unknown fields anywhere in the document are an
// error, as are malformed values. Named batch presets: "tokyo" (5 x 2048)
// and "valencia" (2 x 8192).
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config_file(const std::filesystem::path& path);

nlohmann::json config_to_json(const ExperimentConfig& config);

// FNV-1a over the canonical serialized form.
std::uint64_t config_hash(const ExperimentConfig& config);

// Built-in experiment presets (device + layout + schedule + batch plan),
// e.g. "tokyo_pb_dc2", "boeblingen_t0_dc3", "valencia_dc3".
nlohmann::json experiment_preset(const std::string& name);
std::vector<std::string> experiment_preset_names();

ExperimentConfig default_config();

}  // namespace qcbm
