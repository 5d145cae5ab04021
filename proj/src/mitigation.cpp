#include "qcbm/mitigation.hpp"

#include <chrono>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qcbm/basis.hpp"
#include "qcbm/execution.hpp"
#include "qcbm/resampling.hpp"

namespace qcbm {

namespace {

constexpr Real kRowSumTolerance = 1e-9;
constexpr Real kMaxCondition = 1e6;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Real spectral_condition(const RealMatrix& m) {
  const Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const Real smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<Real>::infinity();
  return sv(0) / smin;
}

}  // namespace

AemClass aem_class_from_name(const std::string& name) {
  if (name == "identity") return AemClass::identity;
  if (name == "hw") return AemClass::hw;
  if (name == "circ") return AemClass::circ;
  throw std::invalid_argument("unknown AEM class: " + name);
}

std::string aem_class_name(AemClass kind) {
  switch (kind) {
    case AemClass::identity: return "identity";
    case AemClass::hw: return "hw";
    case AemClass::circ: return "circ";
  }
  throw std::logic_error("unreachable");
}

AssignmentErrorMatrix::AssignmentErrorMatrix(AemClass kernel_class,
                                             RealMatrix entries, AemMeta meta)
    : kernel_class_(kernel_class),
      entries_(std::move(entries)),
      meta_(std::move(meta)) {
  const std::string label = aem_class_name(kernel_class_) + " AEM";
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw CalibrationError(label + ": matrix not square");
  }
  if ((entries_.array() < 0.0).any()) {
    throw CalibrationError(label + ": negative entry");
  }
  for (Index i = 0; i < entries_.rows(); ++i) {
    if (std::abs(entries_.row(i).sum() - 1.0) > kRowSumTolerance) {
      throw CalibrationError(label + ": row " + std::to_string(i) +
                             " is not stochastic");
    }
  }
  if (kernel_class_ == AemClass::identity) {
    if (entries_ != RealMatrix::Identity(entries_.rows(), entries_.cols())) {
      throw CalibrationError(label + ": identity class must be exactly 1");
    }
    return;  // trivially invertible
  }
  const Real cond = spectral_condition(entries_);
  if (!(cond <= kMaxCondition)) {
    throw CalibrationError(label + " (device " + meta_.device +
                           "): near-singular, condition " +
                           std::to_string(cond));
  }
}

AssignmentErrorMatrix AssignmentErrorMatrix::identity(Index n_states) {
  return AssignmentErrorMatrix(AemClass::identity,
                               RealMatrix::Identity(n_states, n_states),
                               AemMeta{"", "", 0, utc_timestamp()});
}

namespace {

std::vector<Circuit> calibration_circuits(AemClass kind,
                                          const AnsatzSpec& spec) {
  if (kind == AemClass::hw) return hw_calibration_circuits(spec.n_qubits);
  std::vector<Circuit> circuits;
  const Index n = state_count(spec.n_qubits);
  circuits.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    circuits.push_back(
        build_circuit(spec, circ_calibration_params(spec, static_cast<int>(i))));
  }
  return circuits;
}

AemMeta make_meta(AemClass kind, const AnsatzSpec& spec,
                  const DeviceProfile& device, long shots) {
  AemMeta meta;
  meta.device = device.name;
  meta.layout = kind == AemClass::circ ? entangler_name(spec.entangler) : "";
  meta.shots = shots;
  meta.created = utc_timestamp();
  return meta;
}

}  // namespace

AssignmentErrorMatrix build_aem(AemClass kind, const AnsatzSpec& spec,
                                const DeviceProfile& device, long shots,
                                std::uint64_t seed) {
  if (kind == AemClass::identity) {
    return AssignmentErrorMatrix::identity(state_count(spec.n_qubits));
  }
  if (shots < 1) throw std::domain_error("build_aem: shots must be >= 1");
  device.validate();
  const auto circuits = calibration_circuits(kind, spec);
  const Index n = state_count(spec.n_qubits);
  RealMatrix entries(n, n);
  for (Index i = 0; i < n; ++i) {
    RngStream stream = make_stream(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const CountVector counts =
        run_sampled(circuits[static_cast<std::size_t>(i)], device, shots, stream);
    entries.row(i) = counts.counts().transpose() / counts.effective_shots();
  }
  return AssignmentErrorMatrix(kind, std::move(entries),
                               make_meta(kind, spec, device, shots));
}

AssignmentErrorMatrix build_aem_exact(AemClass kind, const AnsatzSpec& spec,
                                      const DeviceProfile& device) {
  if (kind == AemClass::identity) {
    return AssignmentErrorMatrix::identity(state_count(spec.n_qubits));
  }
  device.validate();
  const auto circuits = calibration_circuits(kind, spec);
  const Index n = state_count(spec.n_qubits);
  RealMatrix entries(n, n);
  for (Index i = 0; i < n; ++i) {
    entries.row(i) =
        run_exact(circuits[static_cast<std::size_t>(i)], device).probs().transpose();
  }
  return AssignmentErrorMatrix(kind, std::move(entries),
                               make_meta(kind, spec, device, 0));
}

CountVector mitigate(const CountVector& raw, const AssignmentErrorMatrix& aem) {
  if (raw.size() != aem.size()) {
    throw std::invalid_argument("mitigate: dimension mismatch");
  }
  if (aem.kernel_class() == AemClass::identity) {
    return raw;  // bit-exact no-op
  }
  // measured = entries^T . true, so recover counts by solving the
  // transposed system rather than forming an explicit inverse.
  const RealVector solved =
      aem.entries().transpose().partialPivLu().solve(raw.counts());
  const RealVector clipped = solved.cwiseMax(0.0);
  if (clipped.sum() <= 0.0) {
    throw MitigationError("mitigate: all counts clipped to zero");
  }
  return CountVector(clipped);
}

Real frobenius_distance(const AssignmentErrorMatrix& aem) {
  return frobenius_from_identity(aem.entries());
}

AemDiagnostics aem_condition_diagnostics(const AssignmentErrorMatrix& aem) {
  AemDiagnostics d;
  d.condition_number = spectral_condition(aem.entries());
  d.min_row_fidelity = aem.entries().diagonal().minCoeff();
  return d;
}

void save_aem(const AssignmentErrorMatrix& aem,
              const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["kernel_class"] = aem_class_name(aem.kernel_class());
  doc["n_states"] = aem.size();
  doc["meta"] = {{"device", aem.meta().device},
                 {"layout", aem.meta().layout},
                 {"shots", aem.meta().shots},
                 {"created", aem.meta().created}};
  std::vector<std::vector<Real>> rows;
  for (Index i = 0; i < aem.size(); ++i) {
    rows.emplace_back(aem.entries().row(i).begin(), aem.entries().row(i).end());
  }
  doc["entries"] = rows;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

AssignmentErrorMatrix load_aem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CalibrationError("cannot read AEM file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CalibrationError("malformed AEM file " + path.string() + ": " +
                           e.what());
  }
  const AemClass kind = aem_class_from_name(doc.at("kernel_class"));
  const Index n = doc.at("n_states").get<Index>();
  RealMatrix entries(n, n);
  const auto& rows = doc.at("entries");
  if (static_cast<Index>(rows.size()) != n) {
    throw CalibrationError("AEM file " + path.string() + ": bad row count");
  }
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != n) {
      throw CalibrationError("AEM file " + path.string() + ": bad row length");
    }
    for (Index j = 0; j < n; ++j) {
      entries(i, j) = row[static_cast<std::size_t>(j)].get<Real>();
    }
  }
  const auto& meta = doc.at("meta");
  return AssignmentErrorMatrix(
      kind, std::move(entries),
      AemMeta{meta.at("device").get<std::string>(),
              meta.at("layout").get<std::string>(),
              meta.at("shots").get<long>(),
              meta.at("created").get<std::string>()});
}

}  // namespace qcbm
