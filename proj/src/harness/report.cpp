#include "qcbm/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qcbm {

std::vector<ReportRow> summarize(const std::vector<MetricsRow>& metrics,
                                 const TrainTrace& trace) {
  Real min_mmd = std::numeric_limits<Real>::infinity();
  for (const TrainStep& s : trace.steps) min_mmd = std::min(min_mmd, s.loss);

  // keyed by (post kind, shot size) in first-seen order
  std::vector<std::pair<AemClass, long>> order;
  std::map<std::pair<int, long>, ReportRow> best;
  for (const MetricsRow& r : metrics) {
    const auto key = std::make_pair(static_cast<int>(r.post), r.shot_size);
    auto it = best.find(key);
    if (it == best.end()) {
      order.emplace_back(r.post, r.shot_size);
      ReportRow row;
      row.train_aem = trace.aem_class;
      row.post_aem = r.post;
      row.shot_size = r.shot_size;
      row.min_mean_kl = std::numeric_limits<Real>::infinity();
      row.step_of_min = -1;
      row.min_mmd = min_mmd;
      it = best.emplace(key, row).first;
    }
    if (std::isinf(r.mean_kl)) {
      it->second.divergent_steps += 1;
    } else if (r.mean_kl < it->second.min_mean_kl) {
      it->second.min_mean_kl = r.mean_kl;
      it->second.step_of_min = r.step;
    }
  }

  std::vector<ReportRow> rows;
  rows.reserve(order.size());
  for (const auto& [post, shots] : order) {
    rows.push_back(best.at({static_cast<int>(post), shots}));
  }
  return rows;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "train_aem,post_aem,shot_size,min_mean_kl,step_of_min,"
         "divergent_steps,min_mmd\n";
  for (const ReportRow& r : rows) {
    out << aem_class_name(r.train_aem) << ',' << aem_class_name(r.post_aem)
        << ',' << r.shot_size << ',' << format_real(r.min_mean_kl) << ','
        << r.step_of_min << ',' << r.divergent_steps << ','
        << format_real(r.min_mmd) << "\n";
  }
  return out.str();
}

std::string report_grid(const std::vector<std::vector<ReportRow>>& runs,
                        long shot_size) {
  std::vector<AemClass> columns;
  for (const auto& rows : runs) {
    for (const ReportRow& r : rows) {
      if (r.shot_size != shot_size) continue;
      if (std::find(columns.begin(), columns.end(), r.post_aem) ==
          columns.end()) {
        columns.push_back(r.post_aem);
      }
    }
  }

  std::ostringstream out;
  out << "min mean KL at " << shot_size << "-shot sub-samples\n";
  out << "train AEM";
  for (AemClass c : columns) out << '\t' << aem_class_name(c) << " (post)";
  out << "\tmin MMD\n";
  for (const auto& rows : runs) {
    if (rows.empty()) continue;
    out << aem_class_name(rows.front().train_aem);
    for (AemClass c : columns) {
      const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) {
        return r.post_aem == c && r.shot_size == shot_size;
      });
      out << '\t' << (it == rows.end() ? "-" : format_real(it->min_mean_kl));
    }
    out << '\t' << format_real(rows.front().min_mmd) << "\n";
  }
  return out.str();
}

void save_report(const std::vector<ReportRow>& rows,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << report_csv(rows);
}

}  // namespace qcbm
