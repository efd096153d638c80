#include "dqc1/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace dqc1 {

namespace {

using nlohmann::json;

struct CliOptions {
  std::int64_t samples = -1;
  std::vector<double> etas;
  std::string seed;
  std::string sampler;
  int workers = -1;
  std::string out;
  std::string format;
  std::string config_file;
  double target_purity = -1;
  int max_steps = -1;
};

ControlSampler parse_sampler(const std::string& text) {
  ControlSampler s;
  if (text == "pure") {
    s.kind = ControlSampler::Kind::pure_haar;
  } else if (text == "hs") {
    s.kind = ControlSampler::Kind::mixed_hs;
  } else if (text.rfind("alpha=", 0) == 0) {
    s.kind = ControlSampler::Kind::alpha;
    s.alpha = std::stod(text.substr(6));
  } else {
    throw std::invalid_argument("control sampler must be pure | hs | alpha=<value>");
  }
  return s;
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open config file: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config file parse error: ") + e.what());
  }
  if (j.contains("samples")) cfg.samples = j["samples"].get<std::int64_t>();
  if (j.contains("eta_values")) cfg.eta_values = j["eta_values"].get<std::vector<double>>();
  if (j.contains("seed")) {
    if (j["seed"].is_string()) cfg.seed = parse_seed(j["seed"].get<std::string>());
    else cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("control_sampler")) {
    cfg.control_sampler = parse_sampler(j["control_sampler"].get<std::string>());
    cfg.control_sampler_overridden = true;
  }
  if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
  if (j.contains("output_path")) cfg.output_path = j["output_path"].get<std::string>();
  if (j.contains("format")) {
    std::string f = j["format"].get<std::string>();
    if (f == "csv") cfg.format = OutputFormat::csv;
    else if (f == "json") cfg.format = OutputFormat::json;
    else throw std::invalid_argument("config format must be csv or json");
  }
  if (j.contains("target_purity")) cfg.target_purity = j["target_purity"].get<double>();
  if (j.contains("max_steps")) cfg.max_steps = j["max_steps"].get<int>();
}

int default_workers() {
  if (const char* env = std::getenv("DQC1_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

void add_common_options(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--samples", opt.samples, "number of Monte Carlo samples");
  sub->add_option("--eta", opt.etas, "eta grid values in [0,1]")->delimiter(',');
  sub->add_option("--seed", opt.seed, "64-bit seed, decimal or 0x-hex");
  sub->add_option("--control-sampler", opt.sampler, "pure | hs | alpha=<value>");
  sub->add_option("--workers", opt.workers, "worker thread count (default $DQC1_WORKERS or 1)");
  sub->add_option("--out", opt.out, "output file path");
  sub->add_option("--format", opt.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--config", opt.config_file, "JSON config file; flags override its values");
}

ExperimentConfig build_config(ExperimentKind kind, const CliOptions& opt) {
  ExperimentConfig cfg;
  cfg.experiment = kind;
  cfg.workers = default_workers();
  if (!opt.config_file.empty()) load_config_file(opt.config_file, cfg);
  cfg.experiment = kind;  // subcommand wins over config file
  if (opt.samples >= 0) cfg.samples = opt.samples;
  if (!opt.etas.empty()) cfg.eta_values = opt.etas;
  if (!opt.seed.empty()) cfg.seed = parse_seed(opt.seed);
  if (!opt.sampler.empty()) {
    cfg.control_sampler = parse_sampler(opt.sampler);
    cfg.control_sampler_overridden = true;
  }
  if (opt.workers >= 1) cfg.workers = opt.workers;
  if (!opt.out.empty()) cfg.output_path = opt.out;
  if (!opt.format.empty()) cfg.format = opt.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (opt.target_purity >= 0) cfg.target_purity = opt.target_purity;
  if (opt.max_steps >= 0) cfg.max_steps = opt.max_steps;
  cfg.validate();
  return cfg;
}

int run_one(ExperimentKind kind, const CliOptions& opt) {
  ExperimentConfig cfg = build_config(kind, opt);
  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult result = run_experiment(cfg);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(result, cfg, wall);
  std::cout << experiment_name(kind) << ": " << result.records.size() << " records in " << wall
            << " s\n";
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"two-qubit DQC1 simulator with post-selection filtering"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  static constexpr ExperimentKind kKinds[] = {
      ExperimentKind::standard_scatter,      ExperimentKind::fidelity_benchmark,
      ExperimentKind::purity_vs_eta,         ExperimentKind::correlations_vs_purity,
      ExperimentKind::density_of_states,     ExperimentKind::purification,
  };
  static constexpr const char* kDescriptions[] = {
      "correlations of the unfiltered circuit over random draws",
      "pairwise fidelity of post-selected outputs per eta",
      "mean optimal auxiliary purity per eta",
      "normalized correlations binned by achieved auxiliary purity",
      "fraction of filtered states above the unfiltered maxima per eta",
      "iterated filter-and-reinsert purification runs",
  };

  std::vector<CliOptions> opts(std::size(kKinds));
  ExperimentKind chosen{};
  bool run_experiment_flag = false;
  for (std::size_t k = 0; k < std::size(kKinds); ++k) {
    CLI::App* sub = app.add_subcommand(experiment_name(kKinds[k]), kDescriptions[k]);
    add_common_options(sub, opts[k]);
    if (kKinds[k] == ExperimentKind::purification) {
      sub->add_option("--target-purity", opts[k].target_purity, "stop once reached (default 0.99)");
      sub->add_option("--max-steps", opts[k].max_steps, "step cap per run (default 50)");
    }
    sub->callback([&, k] {
      chosen = kKinds[k];
      run_experiment_flag = true;
    });
  }

  bool run_validate_flag = false;
  std::string validate_seed;
  CLI::App* val = app.add_subcommand("validate", "run the module invariant suites");
  val->add_option("--seed", validate_seed, "64-bit seed, decimal or 0x-hex");
  val->callback([&] { run_validate_flag = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_validate_flag) {
      std::uint64_t seed = validate_seed.empty() ? 20240801ULL : parse_seed(validate_seed);
      return run_validation(std::cout, seed) == 0 ? 0 : 1;
    }
    if (run_experiment_flag) {
      for (std::size_t k = 0; k < std::size(kKinds); ++k)
        if (kKinds[k] == chosen) return run_one(chosen, opts[k]);
    }
    return 0;
  } catch (const io_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dqc1
