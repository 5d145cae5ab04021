#include "qcbm/harness/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qcbm {

using nlohmann::json;

std::string format_real(Real value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::vector<MetricsRow> evaluate_trace(
    const TrainTrace& trace, const AnsatzSpec& spec,
    const DeviceProfile& device, const ProbabilityDistribution& target,
    const BatchPlan& batch,
    const std::vector<const AssignmentErrorMatrix*>& post_aems,
    const std::vector<long>& shot_sizes, int repeats, std::uint64_t seed) {
  if (batch.count < 1 || batch.shots < 1) {
    throw std::domain_error("evaluate_trace: bad batch plan");
  }
  for (const auto* aem : post_aems) {
    if (aem->size() != target.size()) {
      throw std::invalid_argument("evaluate_trace: AEM dimension mismatch");
    }
  }

  std::vector<MetricsRow> rows;
  rows.reserve(trace.steps.size() * post_aems.size() * shot_sizes.size());
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    const Circuit circuit = build_circuit(spec, trace.steps[t].theta);
    std::vector<CountVector> batches;
    batches.reserve(static_cast<std::size_t>(batch.count));
    for (int b = 0; b < batch.count; ++b) {
      RngStream rng = make_stream(derive_seed(
          seed, static_cast<std::uint64_t>(t), 0xba7c4ULL,
          static_cast<std::uint64_t>(b)));
      batches.push_back(run_sampled(circuit, device, batch.shots, rng));
    }
    const CountVector pooled = composite(batches);

    for (std::size_t k = 0; k < post_aems.size(); ++k) {
      const CountVector mitigated = [&]() -> CountVector {
        try {
          return mitigate(pooled, *post_aems[k]);
        } catch (const MitigationError&) {
          return CountVector(RealVector::Zero(pooled.size()));
        }
      }();
      const bool degenerate = mitigated.effective_shots() <= 0.0;
      for (std::size_t s = 0; s < shot_sizes.size(); ++s) {
        MetricsRow row;
        row.step = static_cast<int>(t);
        row.post = post_aems[k]->kernel_class();
        row.shot_size = shot_sizes[s];
        if (degenerate) {
          row.mean_kl = std::numeric_limits<Real>::infinity();
          row.divergences = repeats;
        } else {
          RngStream rng = make_stream(derive_seed(
              seed, static_cast<std::uint64_t>(t),
              0x5a3ULL + static_cast<std::uint64_t>(k),
              static_cast<std::uint64_t>(s)));
          const MeanKl m =
              mean_kl(target, mitigated, shot_sizes[s], repeats, rng);
          row.mean_kl = m.mean;
          row.stddev_kl = m.stddev;
          row.divergences = m.divergences;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

NoiseModel jitter_noise(const NoiseModel& noise, Real rel, RngStream& rng) {
  auto wiggle = [&](Real p) {
    const Real factor = 1.0 + rel * (2.0 * uniform_unit(rng) - 1.0);
    return std::clamp(p * factor, 0.0, 1.0);
  };
  NoiseModel out = noise;
  for (auto& [p01, p10] : out.readout) {
    p01 = wiggle(p01);
    p10 = wiggle(p10);
  }
  out.depol_1q = wiggle(out.depol_1q);
  out.depol_2q = wiggle(out.depol_2q);
  return out;
}

std::vector<AssignmentErrorMatrix> jittered_aem_series(
    AemClass kind, const AnsatzSpec& spec, const DeviceProfile& device,
    int dates, Real jitter, long shots, std::uint64_t seed) {
  std::vector<AssignmentErrorMatrix> series;
  series.reserve(static_cast<std::size_t>(dates));
  for (int d = 0; d < dates; ++d) {
    RngStream rng =
        make_stream(derive_seed(seed, 0xd81f7ULL, static_cast<std::uint64_t>(d)));
    DeviceProfile drifted = device;
    drifted.noise = jitter_noise(device.noise, jitter, rng);
    series.push_back(build_aem(kind, spec, drifted, shots,
                               derive_seed(seed, 0xae3ULL,
                                           static_cast<std::uint64_t>(d))));
  }
  return series;
}

DriftStudyResult aem_drift_study(
    const std::vector<AssignmentErrorMatrix>& series, const TrainTrace& trace,
    const AnsatzSpec& spec, const DeviceProfile& device,
    const ProbabilityDistribution& target, const BatchPlan& batch,
    const std::vector<long>& shot_sizes, int repeats, std::uint64_t seed) {
  if (series.empty()) {
    throw std::domain_error("aem_drift_study: empty AEM series");
  }
  for (const auto& aem : series) {
    if (aem.size() != series.front().size()) {
      throw std::invalid_argument("aem_drift_study: AEM dimension mismatch");
    }
  }
  DriftStudyResult result;
  for (const auto& aem : series) {
    result.norms.push_back(frobenius_distance(aem));
    result.sweeps.push_back(evaluate_trace(trace, spec, device, target, batch,
                                           {&aem}, shot_sizes, repeats, seed));
  }
  return result;
}

// --- persistence ---

namespace {

json vector_to_json(const RealVector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

RealVector json_to_vector(const json& arr) {
  RealVector v(arr.size());
  for (Index i = 0; i < v.size(); ++i) {
    v(i) = arr[static_cast<std::size_t>(i)].get<Real>();
  }
  return v;
}

}  // namespace

void save_trace(const TrainTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  json header;
  header["config_hash"] = trace.config_hash;
  header["aem"] = trace.aem_ref;
  header["aem_class"] = aem_class_name(trace.aem_class);
  out << header.dump() << "\n";
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    const TrainStep& s = trace.steps[t];
    json rec;
    rec["step"] = t;
    rec["theta"] = vector_to_json(s.theta);
    rec["raw_counts"] = vector_to_json(s.raw_counts);
    rec["mitigated"] = vector_to_json(s.mitigated);
    rec["loss"] = std::isinf(s.loss) ? json("inf") : json(s.loss);
    rec["degenerate"] = s.degenerate;
    out << rec.dump() << "\n";
  }
}

TrainTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trace " + path.string());
  TrainTrace trace;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("trace " + path.string() + " is empty");
  }
  const json header = json::parse(line);
  trace.config_hash = header.at("config_hash").get<std::uint64_t>();
  trace.aem_ref = header.at("aem").get<std::string>();
  trace.aem_class = aem_class_from_name(header.at("aem_class"));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line);
    TrainStep s;
    s.theta = json_to_vector(rec.at("theta"));
    s.raw_counts = json_to_vector(rec.at("raw_counts"));
    s.mitigated = json_to_vector(rec.at("mitigated"));
    s.loss = rec.at("loss").is_string()
                 ? std::numeric_limits<Real>::infinity()
                 : rec.at("loss").get<Real>();
    s.degenerate = rec.value("degenerate", false);
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

void save_metrics(const std::vector<MetricsRow>& rows,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "step,post_aem,shot_size,mean_kl,stddev_kl,divergences\n";
  for (const MetricsRow& r : rows) {
    out << r.step << ',' << aem_class_name(r.post) << ',' << r.shot_size
        << ',' << format_real(r.mean_kl) << ',' << format_real(r.stddev_kl)
        << ',' << r.divergences << "\n";
  }
}

std::vector<MetricsRow> load_metrics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read metrics " + path.string());
  std::vector<MetricsRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    MetricsRow r;
    std::getline(ss, field, ',');
    r.step = std::stoi(field);
    std::getline(ss, field, ',');
    r.post = aem_class_from_name(field);
    std::getline(ss, field, ',');
    r.shot_size = std::stol(field);
    std::getline(ss, field, ',');
    r.mean_kl = field == "inf" ? std::numeric_limits<Real>::infinity()
                               : std::stod(field);
    std::getline(ss, field, ',');
    r.stddev_kl = std::stod(field);
    std::getline(ss, field, ',');
    r.divergences = std::stoi(field);
    rows.push_back(r);
  }
  return rows;
}

std::filesystem::path aem_path(const std::filesystem::path& run_dir,
                               AemClass kind) {
  return run_dir / "aem" / (aem_class_name(kind) + ".json");
}

}  // namespace qcbm
