#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qcbm/harness/run.hpp"

namespace qcbm {

struct ReportRow {
  AemClass train_aem = AemClass::identity;
  AemClass post_aem = AemClass::identity;
  long shot_size = 0;
  Real min_mean_kl = 0.0;
  int step_of_min = 0;
  int divergent_steps = 0;  // snapshots whose mean KL diverged
  Real min_mmd = 0.0;       // minimum loss recorded in the trace
};

// Summary of one evaluated run: minimum mean KL per (post AEM, shot size)
// over the finite rows, plus the minimum MMD loss from the trace.
std::vector<ReportRow> summarize(const std::vector<MetricsRow>& metrics,
                                 const TrainTrace& trace);

std::string report_csv(const std::vector<ReportRow>& rows);

// Pivot table at one shot size: rows = train AEM (one per run),
// columns = post AEM kinds.
std::string report_grid(const std::vector<std::vector<ReportRow>>& runs,
                        long shot_size);

void save_report(const std::vector<ReportRow>& rows,
                 const std::filesystem::path& path);

}  // namespace qcbm
