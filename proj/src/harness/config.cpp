#include "qcbm/harness/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace qcbm {

using nlohmann::json;

namespace {

void expect_keys(const json& obj, const std::set<std::string>& allowed,
                 const std::string& where) {
  if (!obj.is_object()) {
    throw std::invalid_argument("config: " + where + " must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw std::invalid_argument("config: unknown field \"" + key +
                                  "\" in " + where);
    }
  }
}

TargetSpec parse_target(const json& obj) {
  expect_keys(obj, {"kind", "lambda", "probs"}, "target");
  TargetSpec t;
  t.kind = target_kind_from_name(obj.value("kind", std::string("bas22")));
  t.lambda = obj.value("lambda", 5.0);
  if (obj.contains("probs")) {
    const auto& arr = obj.at("probs");
    RealVector v(arr.size());
    for (Index i = 0; i < v.size(); ++i) {
      v(i) = arr[static_cast<std::size_t>(i)].get<Real>();
    }
    t.custom_probs = std::move(v);
  }
  if (t.kind == TargetKind::custom && !t.custom_probs) {
    throw std::invalid_argument("config: custom target requires probs");
  }
  return t;
}

json target_to_json(const TargetSpec& t) {
  json obj;
  obj["kind"] = target_kind_name(t.kind);
  if (t.kind == TargetKind::poisson1 || t.kind == TargetKind::poisson2) {
    obj["lambda"] = t.lambda;
  }
  if (t.custom_probs) {
    obj["probs"] = std::vector<Real>(t.custom_probs->begin(),
                                     t.custom_probs->end());
  }
  return obj;
}

AnsatzSpec parse_ansatz(const json& obj) {
  expect_keys(obj, {"n_qubits", "entangler"}, "ansatz");
  AnsatzSpec spec;
  spec.n_qubits = obj.value("n_qubits", 4);
  spec.entangler =
      entangler_from_name(obj.value("entangler", std::string("dc3_star")));
  return spec;
}

DeviceProfile parse_device(const json& obj) {
  if (obj.contains("preset")) {
    expect_keys(obj, {"preset"}, "device");
    return device_preset(obj.at("preset").get<std::string>());
  }
  expect_keys(obj, {"name", "coupling", "readout", "depol_1q", "depol_2q"},
              "device");
  DeviceProfile d;
  d.name = obj.value("name", std::string("custom"));
  for (const auto& edge : obj.at("coupling")) {
    if (!edge.is_array() || edge.size() != 2) {
      throw std::invalid_argument("config: coupling edges are [a, b] pairs");
    }
    d.coupling.emplace_back(edge[0].get<int>(), edge[1].get<int>());
  }
  const auto& readout = obj.at("readout");
  d.n_qubits = static_cast<int>(readout.size());
  for (const auto& pair : readout) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument(
          "config: readout entries are [p01, p10] pairs");
    }
    d.noise.readout.emplace_back(pair[0].get<Real>(), pair[1].get<Real>());
  }
  d.noise.depol_1q = obj.value("depol_1q", 0.0);
  d.noise.depol_2q = obj.value("depol_2q", 0.0);
  d.validate();
  return d;
}

json device_to_json(const DeviceProfile& d) {
  json obj;
  obj["name"] = d.name;
  json edges = json::array();
  for (const auto& [a, b] : d.coupling) edges.push_back({a, b});
  obj["coupling"] = std::move(edges);
  json readout = json::array();
  for (const auto& [p01, p10] : d.noise.readout) readout.push_back({p01, p10});
  obj["readout"] = std::move(readout);
  obj["depol_1q"] = d.noise.depol_1q;
  obj["depol_2q"] = d.noise.depol_2q;
  return obj;
}

std::vector<AemClass> parse_aem_list(const json& arr,
                                     const std::string& where) {
  if (!arr.is_array() || arr.empty()) {
    throw std::invalid_argument("config: " + where +
                                " must be a non-empty array");
  }
  std::vector<AemClass> kinds;
  for (const auto& name : arr) {
    kinds.push_back(aem_class_from_name(name.get<std::string>()));
  }
  return kinds;
}

RealVector load_theta_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot read parameter file " +
                                path.string());
  }
  json doc;
  in >> doc;
  const auto& arr = doc.is_object() ? doc.at("theta") : doc;
  RealVector theta(arr.size());
  for (Index i = 0; i < theta.size(); ++i) {
    theta(i) = arr[static_cast<std::size_t>(i)].get<Real>();
  }
  return theta;
}

void parse_train(const json& obj, TrainConfig& train) {
  expect_keys(obj,
              {"aem", "steps", "shots_per_eval", "alpha", "sigma", "init",
               "exact"},
              "train");
  train.aem_kind =
      aem_class_from_name(obj.value("aem", std::string("identity")));
  train.steps = obj.value("steps", 25);
  train.shots_per_eval = obj.value("shots_per_eval", 2048L);
  train.alpha = obj.value("alpha", 0.25);
  train.kernel_sigma = obj.value("sigma", 0.1);
  train.exact = obj.value("exact", false);
  if (obj.contains("init")) {
    const auto& init = obj.at("init");
    if (init.is_string()) {
      if (init.get<std::string>() != "random") {
        throw std::invalid_argument("config: init must be \"random\", "
                                    "{\"from_file\": path} or {\"theta\": [...]}");
      }
      train.init = InitKind::random;
    } else {
      expect_keys(init, {"from_file", "theta"}, "train.init");
      train.init = InitKind::from_file;
      if (init.contains("from_file")) {
        train.init_theta =
            load_theta_file(init.at("from_file").get<std::string>());
      } else {
        const auto& arr = init.at("theta");
        train.init_theta.resize(static_cast<Index>(arr.size()));
        for (Index i = 0; i < train.init_theta.size(); ++i) {
          train.init_theta(i) = arr[static_cast<std::size_t>(i)].get<Real>();
        }
      }
    }
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  train.validate();
  if (calibration.shots < 1 || batch.shots < 1 || batch.count < 1) {
    throw std::domain_error("config: shot/batch counts must be >= 1");
  }
  if (repeats < 1) throw std::domain_error("config: repeats must be >= 1");
  if (post_aems.empty()) throw std::domain_error("config: no post AEM kinds");
  for (long s : subsample_shots) {
    if (s < 1) throw std::domain_error("config: sub-sample shots must be >= 1");
  }
  if (drift.dates < 0 || drift.jitter < 0.0 || drift.jitter >= 1.0) {
    throw std::domain_error("config: bad drift plan");
  }
}

ExperimentConfig parse_config(const json& doc) {
  expect_keys(doc,
              {"seed", "target", "ansatz", "device", "train", "calibrate",
               "evaluate", "drift"},
              "top level");
  ExperimentConfig cfg = {};
  cfg.train.seed = doc.value("seed", 0ULL);
  if (doc.contains("target")) cfg.train.target = parse_target(doc.at("target"));
  if (doc.contains("ansatz")) cfg.train.spec = parse_ansatz(doc.at("ansatz"));
  cfg.train.device = doc.contains("device") ? parse_device(doc.at("device"))
                                            : device_preset("P_B");
  if (doc.contains("train")) parse_train(doc.at("train"), cfg.train);

  if (doc.contains("calibrate")) {
    const auto& cal = doc.at("calibrate");
    expect_keys(cal, {"kinds", "shots"}, "calibrate");
    if (cal.contains("kinds")) {
      cfg.calibration.kinds = parse_aem_list(cal.at("kinds"), "calibrate.kinds");
    }
    cfg.calibration.shots = cal.value("shots", 4096L);
  }

  if (doc.contains("evaluate")) {
    const auto& ev = doc.at("evaluate");
    expect_keys(ev,
                {"preset", "batch_count", "batch_shots", "post_aems",
                 "subsample_shots", "repeats"},
                "evaluate");
    if (ev.contains("preset")) {
      const std::string preset = ev.at("preset").get<std::string>();
      if (ev.contains("batch_count") || ev.contains("batch_shots")) {
        throw std::invalid_argument(
            "config: evaluate.preset excludes explicit batch fields");
      }
      if (preset == "tokyo") {
        cfg.batch = {5, 2048};
      } else if (preset == "valencia") {
        cfg.batch = {2, 8192};
      } else {
        throw std::invalid_argument("config: unknown batch preset " + preset);
      }
    } else {
      cfg.batch.count = ev.value("batch_count", 5);
      cfg.batch.shots = ev.value("batch_shots", 2048L);
    }
    if (ev.contains("post_aems")) {
      cfg.post_aems = parse_aem_list(ev.at("post_aems"), "evaluate.post_aems");
    }
    if (ev.contains("subsample_shots")) {
      cfg.subsample_shots.clear();
      for (const auto& s : ev.at("subsample_shots")) {
        cfg.subsample_shots.push_back(s.get<long>());
      }
    }
    cfg.repeats = ev.value("repeats", 10);
  }

  if (doc.contains("drift")) {
    const auto& dr = doc.at("drift");
    expect_keys(dr, {"dates", "jitter", "kind"}, "drift");
    cfg.drift.dates = dr.value("dates", 0);
    cfg.drift.jitter = dr.value("jitter", 0.2);
    cfg.drift.kind = aem_class_from_name(dr.value("kind", std::string("hw")));
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read config file " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file " + path.string() +
                                " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json config_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["seed"] = cfg.train.seed;
  doc["target"] = target_to_json(cfg.train.target);
  doc["ansatz"] = {{"n_qubits", cfg.train.spec.n_qubits},
                   {"entangler", entangler_name(cfg.train.spec.entangler)}};
  doc["device"] = device_to_json(cfg.train.device);

  json train;
  train["aem"] = aem_class_name(cfg.train.aem_kind);
  train["steps"] = cfg.train.steps;
  train["shots_per_eval"] = cfg.train.shots_per_eval;
  train["alpha"] = cfg.train.alpha;
  train["sigma"] = cfg.train.kernel_sigma;
  train["exact"] = cfg.train.exact;
  if (cfg.train.init == InitKind::random) {
    train["init"] = "random";
  } else {
    train["init"] = {{"theta", std::vector<Real>(cfg.train.init_theta.begin(),
                                                 cfg.train.init_theta.end())}};
  }
  doc["train"] = std::move(train);

  json kinds = json::array();
  for (AemClass k : cfg.calibration.kinds) kinds.push_back(aem_class_name(k));
  doc["calibrate"] = {{"kinds", std::move(kinds)},
                      {"shots", cfg.calibration.shots}};

  json post = json::array();
  for (AemClass k : cfg.post_aems) post.push_back(aem_class_name(k));
  doc["evaluate"] = {{"batch_count", cfg.batch.count},
                     {"batch_shots", cfg.batch.shots},
                     {"post_aems", std::move(post)},
                     {"subsample_shots", cfg.subsample_shots},
                     {"repeats", cfg.repeats}};

  if (cfg.drift.dates > 0) {
    doc["drift"] = {{"dates", cfg.drift.dates},
                    {"jitter", cfg.drift.jitter},
                    {"kind", aem_class_name(cfg.drift.kind)}};
  }
  return doc;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  const std::string dump = config_to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig default_config() {
  ExperimentConfig cfg = {};
  cfg.train.device = device_preset("P_B");
  return cfg;
}

json experiment_preset(const std::string& name) {
  const json tokyo_batch = {{"preset", "tokyo"}};
  const json valencia_batch = {{"preset", "valencia"}};
  json p;
  if (name == "tokyo_pa_dc2") {
    p = {{"device", {{"preset", "P_A"}}},
         {"ansatz", {{"entangler", "dc2"}}},
         {"train", {{"steps", 25}}},
         {"evaluate", tokyo_batch}};
  } else if (name == "tokyo_pb_dc2") {
    p = {{"device", {{"preset", "P_B"}}},
         {"ansatz", {{"entangler", "dc2"}}},
         {"train", {{"steps", 25}}},
         {"evaluate", tokyo_batch}};
  } else if (name == "tokyo_pb_dc3") {
    p = {{"device", {{"preset", "P_B"}}},
         {"ansatz", {{"entangler", "dc3_line"}}},
         {"train", {{"steps", 25}}},
         {"evaluate", tokyo_batch}};
  } else if (name == "tokyo_t1_dc3") {
    p = {{"device", {{"preset", "T_1"}}},
         {"ansatz", {{"entangler", "dc3_star"}}},
         {"train", {{"steps", 25}}},
         {"evaluate", tokyo_batch}};
  } else if (name == "boeblingen_t0_dc3") {
    p = {{"device", {{"preset", "T_0"}}},
         {"ansatz", {{"entangler", "dc3_star"}}},
         {"train", {{"steps", 20}}},
         {"evaluate", tokyo_batch}};
  } else if (name == "boeblingen_t1_dc3") {
    p = {{"device", {{"preset", "T_1"}}},
         {"ansatz", {{"entangler", "dc3_star"}}},
         {"train", {{"steps", 20}}},
         {"evaluate", tokyo_batch}};
  } else if (name == "boeblingen_t0_dc2") {
    // mismatched entangler/coupling: compilation adds SWAP chains
    p = {{"device", {{"preset", "T_0"}}},
         {"ansatz", {{"entangler", "dc2"}}},
         {"train", {{"steps", 20}}},
         {"evaluate", tokyo_batch}};
  } else if (name == "valencia_dc3") {
    p = {{"device", {{"preset", "valencia"}}},
         {"ansatz", {{"entangler", "dc3_star"}}},
         {"train", {{"steps", 15}}},
         {"evaluate", valencia_batch}};
  } else if (name == "valencia_dc3_pretrained") {
    p = {{"device", {{"preset", "valencia"}}},
         {"ansatz", {{"entangler", "dc3_star"}}},
         {"train", {{"steps", 7}, {"alpha", 0.1}}},
         {"evaluate", valencia_batch}};
  } else {
    throw std::invalid_argument("unknown experiment preset: " + name);
  }
  return p;
}

std::vector<std::string> experiment_preset_names() {
  return {"tokyo_pa_dc2",      "tokyo_pb_dc2",      "tokyo_pb_dc3",
          "tokyo_t1_dc3",      "boeblingen_t0_dc3", "boeblingen_t1_dc3",
          "boeblingen_t0_dc2", "valencia_dc3",      "valencia_dc3_pretrained"};
}

}  // namespace qcbm
