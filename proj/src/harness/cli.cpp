#include "qcbm/harness/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcbm/basis.hpp"
#include "qcbm/harness/config.hpp"
#include "qcbm/harness/report.hpp"
#include "qcbm/harness/run.hpp"

namespace qcbm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Deep merge with whole-section replacement for the polymorphic blocks
// (device, target, train.init), so a preset/file override does not leave
// stale sibling keys behind.
void merge_into(json& base, const json& overlay, const std::string& path) {
  if (!overlay.is_object() || !base.is_object()) {
    base = overlay;
    return;
  }
  for (const auto& [key, value] : overlay.items()) {
    const std::string sub = path.empty() ? key : path + "." + key;
    if (sub == "device" || sub == "target" || sub == "train.init" ||
        sub == "evaluate") {
      base[key] = value;
      continue;
    }
    if (base.contains(key)) {
      merge_into(base[key], value, sub);
    } else {
      base[key] = value;
    }
  }
}

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

ExperimentConfig resolve_config(const CommonOpts& opts) {
  json doc = config_to_json(default_config());
  if (!opts.preset.empty()) {
    merge_into(doc, experiment_preset(opts.preset), "");
  }
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) {
      throw std::invalid_argument("cannot read config file " +
                                  opts.config_path);
    }
    json file;
    try {
      in >> file;
    } catch (const json::exception& e) {
      throw std::invalid_argument("config file " + opts.config_path +
                                  " is not valid JSON: " + e.what());
    }
    merge_into(doc, file, "");
  }
  ExperimentConfig cfg = parse_config(doc);
  if (opts.seed_set) cfg.train.seed = opts.seed;
  return cfg;
}

void write_config_copy(const ExperimentConfig& cfg, const fs::path& dir) {
  std::ofstream out(dir / "config.json");
  if (!out) throw std::runtime_error("cannot write config copy");
  out << config_to_json(cfg).dump(2) << "\n";
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_out) {
  cmd->add_option("--config", opts.config_path, "experiment config file");
  cmd->add_option("--preset", opts.preset, "named experiment preset");
  auto* out = cmd->add_option("--out", opts.out_dir, "run directory");
  if (needs_out) out->required();
  cmd->add_option("--seed", opts.seed, "seed override")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
}

int cmd_targets(const std::string& kind_name, Real lambda, int n_qubits) {
  TargetSpec spec;
  spec.kind = target_kind_from_name(kind_name);
  spec.lambda = lambda;
  const ProbabilityDistribution p = make_target(spec, n_qubits);
  for (Index i = 0; i < p.size(); ++i) {
    std::cout << i << ' ' << basis_label(n_qubits, i) << ' '
              << format_real(p(i)) << "\n";
  }
  return 0;
}

int cmd_calibrate(const CommonOpts& opts) {
  const ExperimentConfig cfg = resolve_config(opts);
  const fs::path dir(opts.out_dir);
  fs::create_directories(dir / "aem");
  write_config_copy(cfg, dir);
  for (AemClass kind : cfg.calibration.kinds) {
    const AssignmentErrorMatrix aem =
        build_aem(kind, cfg.train.spec, cfg.train.device,
                  cfg.calibration.shots,
                  derive_seed(cfg.train.seed, 0xca1ULL,
                              static_cast<std::uint64_t>(kind)));
    save_aem(aem, aem_path(dir, kind));
    std::cout << "calibrated " << aem_class_name(kind)
              << " AEM: |1-K| = " << format_real(frobenius_distance(aem))
              << ", min fidelity = "
              << format_real(aem_condition_diagnostics(aem).min_row_fidelity)
              << "\n";
  }
  return 0;
}

int cmd_train(const CommonOpts& opts) {
  const ExperimentConfig cfg = resolve_config(opts);
  const fs::path dir(opts.out_dir);
  const fs::path aem_file = aem_path(dir, cfg.train.aem_kind);
  if (!fs::exists(aem_file)) {
    std::cerr << "missing AEM file " << aem_file
              << " (run `qcbm calibrate` first)\n";
    return 1;
  }
  const AssignmentErrorMatrix aem = load_aem(aem_file);
  fs::create_directories(dir);
  write_config_copy(cfg, dir);

  TrainTrace trace = train(cfg.train, aem);
  trace.config_hash = config_hash(cfg);
  trace.aem_ref = "aem/" + aem_class_name(cfg.train.aem_kind) + ".json";
  save_trace(trace, dir / "trace.jsonl");

  const RealVector& final_theta = trace.steps.back().theta;
  json theta_doc;
  theta_doc["theta"] =
      std::vector<Real>(final_theta.begin(), final_theta.end());
  std::ofstream theta_out(dir / "theta_final.json");
  theta_out << theta_doc.dump(2) << "\n";

  Real min_loss = std::numeric_limits<Real>::infinity();
  for (const TrainStep& s : trace.steps) min_loss = std::min(min_loss, s.loss);
  std::cout << "trained " << cfg.train.steps << " steps, min MMD loss "
            << format_real(min_loss) << "\n";
  return 0;
}

int cmd_evaluate(const CommonOpts& opts) {
  const fs::path dir(opts.out_dir);
  CommonOpts from_run = opts;
  from_run.config_path = (dir / "config.json").string();
  from_run.preset.clear();
  const ExperimentConfig cfg = resolve_config(from_run);

  const TrainTrace trace = load_trace(dir / "trace.jsonl");
  std::vector<AssignmentErrorMatrix> aems;
  aems.reserve(cfg.post_aems.size());
  for (AemClass kind : cfg.post_aems) {
    const fs::path file = aem_path(dir, kind);
    if (!fs::exists(file)) {
      std::cerr << "missing AEM file " << file
                << " (run `qcbm calibrate` first)\n";
      return 1;
    }
    aems.push_back(load_aem(file));
  }
  std::vector<const AssignmentErrorMatrix*> post;
  for (const auto& aem : aems) post.push_back(&aem);

  const ProbabilityDistribution target =
      make_target(cfg.train.target, cfg.train.spec.n_qubits);
  const auto metrics = evaluate_trace(
      trace, cfg.train.spec, cfg.train.device, target, cfg.batch, post,
      cfg.subsample_shots, cfg.repeats, derive_seed(cfg.train.seed, 0xe7a1ULL));
  save_metrics(metrics, dir / "metrics.csv");
  std::cout << "evaluated " << trace.steps.size() << " snapshots x "
            << post.size() << " AEM kinds x " << cfg.subsample_shots.size()
            << " shot sizes\n";

  if (cfg.drift.dates > 0) {
    const auto series = jittered_aem_series(
        cfg.drift.kind, cfg.train.spec, cfg.train.device, cfg.drift.dates,
        cfg.drift.jitter, cfg.calibration.shots,
        derive_seed(cfg.train.seed, 0xd41f7ULL));
    const auto drift = aem_drift_study(
        series, trace, cfg.train.spec, cfg.train.device, target, cfg.batch,
        cfg.subsample_shots, cfg.repeats, derive_seed(cfg.train.seed, 0xe7a1ULL));
    std::ofstream out(dir / "drift.csv");
    out << "date,frobenius,step,post_aem,shot_size,mean_kl,stddev_kl,"
           "divergences\n";
    for (std::size_t d = 0; d < series.size(); ++d) {
      for (const MetricsRow& r : drift.sweeps[d]) {
        out << d << ',' << format_real(drift.norms[d]) << ',' << r.step << ','
            << aem_class_name(r.post) << ',' << r.shot_size << ','
            << format_real(r.mean_kl) << ',' << format_real(r.stddev_kl)
            << ',' << r.divergences << "\n";
      }
    }
    std::cout << "drift study over " << series.size() << " synthetic dates\n";
  }
  return 0;
}

int cmd_report(const std::vector<std::string>& dirs) {
  std::vector<std::vector<ReportRow>> runs;
  long grid_shots = 2048;
  bool have_2048 = false;
  for (const std::string& dir_name : dirs) {
    const fs::path dir(dir_name);
    const auto metrics = load_metrics(dir / "metrics.csv");
    const TrainTrace trace = load_trace(dir / "trace.jsonl");
    auto rows = summarize(metrics, trace);
    save_report(rows, dir / "report.csv");
    for (const ReportRow& r : rows) have_2048 |= r.shot_size == 2048;
    if (!rows.empty() && !have_2048) grid_shots = rows.front().shot_size;
    runs.push_back(std::move(rows));
  }
  std::cout << report_grid(runs, grid_shots);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"quantum circuit Born machine training with assignment-error "
               "mitigation"};
  app.require_subcommand(1);

  std::string target_kind = "bas22";
  Real lambda = 5.0;
  int n_qubits = 4;
  auto* targets = app.add_subcommand("targets", "print a target distribution");
  targets->add_option("--kind", target_kind,
                      "bas22 | poisson1 | poisson2");
  targets->add_option("--lambda", lambda, "Poisson rate");
  targets->add_option("--n-qubits", n_qubits, "register size");

  CommonOpts cal_opts, train_opts, eval_opts;
  auto* calibrate =
      app.add_subcommand("calibrate", "build and store assignment error "
                                      "matrices");
  add_common(calibrate, cal_opts, true);
  auto* train_cmd =
      app.add_subcommand("train", "run mitigated DDCL training");
  add_common(train_cmd, train_opts, true);
  auto* evaluate =
      app.add_subcommand("evaluate", "replay a trace through the batch plan "
                                     "and KL sweeps");
  add_common(evaluate, eval_opts, true);

  std::vector<std::string> report_dirs;
  auto* report = app.add_subcommand("report", "summarize evaluated runs");
  report->add_option("dirs", report_dirs, "run directories")->required();

  std::vector<const char*> argv;
  argv.push_back("qcbm");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (targets->parsed()) return cmd_targets(target_kind, lambda, n_qubits);
    if (calibrate->parsed()) return cmd_calibrate(cal_opts);
    if (train_cmd->parsed()) return cmd_train(train_opts);
    if (evaluate->parsed()) return cmd_evaluate(eval_opts);
    if (report->parsed()) return cmd_report(report_dirs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace qcbm
