#include "dqc1/harness.hpp"

#include "dqc1/correlations.hpp"

#include <json.hpp>

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace dqc1 {

using nlohmann::json;

const char* kToolVersion = "dqc1 0.1.0";

namespace {

constexpr double kPi = 3.14159265358979323846;

// Standard-DQC1 maxima used as density-of-states thresholds.
constexpr double kDiscordThreshold = 0.1244;
constexpr double kCoherenceThreshold = 0.9992;
constexpr double kBellThreshold = 1.9974;

std::vector<double> default_etas(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::fidelity_benchmark: return {0.0, 0.5, 1.0};
    case ExperimentKind::correlations_vs_purity: {
      std::vector<double> g;
      for (int i = 0; i <= 10; ++i) g.push_back(i / 10.0);
      return g;
    }
    case ExperimentKind::purity_vs_eta:
    case ExperimentKind::density_of_states: return {0.0, 0.25, 0.5, 0.75, 1.0};
    default: return {};
  }
}

ControlSampler default_sampler(ExperimentKind kind) {
  // The scatter experiment samples mixed states; the filtering studies start
  // from pure control states.
  ControlSampler s;
  s.kind = kind == ExperimentKind::standard_scatter ? ControlSampler::Kind::mixed_hs
                                                    : ControlSampler::Kind::pure_haar;
  return s;
}

ExperimentConfig with_defaults(const ExperimentConfig& in) {
  ExperimentConfig cfg = in;
  if (cfg.eta_values.empty()) cfg.eta_values = default_etas(cfg.experiment);
  if (!cfg.control_sampler_overridden) cfg.control_sampler = default_sampler(cfg.experiment);
  cfg.validate();
  return cfg;
}

// Runs fn(sample_index) over [0, n) on the requested number of workers.
// Work is claimed through an atomic counter; each sample writes only to its
// own output slot, so the result is identical for any worker count.
template <typename Fn>
void parallel_samples(std::int64_t n, int workers, const Fn& fn) {
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  auto loop = [&] {
    for (;;) {
      std::int64_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
  for (auto& t : pool) t.join();
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double mean_of(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  return v.empty() ? 0.0 : m / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v);
  double var = 0;
  for (double x : v) var += (x - m) * (x - m);
  return std::sqrt(var / (static_cast<double>(v.size()) - 1) / static_cast<double>(v.size()));
}

FilterSpec random_direction_spec(double eta, RngStream& rng) {
  double theta = std::acos(1.0 - 2.0 * rng.uniform());
  double phi = 2.0 * kPi * rng.uniform();
  return {eta, theta, phi};
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = experiment_name(cfg.experiment);
  j["samples"] = cfg.samples;
  j["eta_values"] = cfg.eta_values;
  j["seed"] = std::to_string(cfg.seed);  // string keeps 64-bit exactness
  switch (cfg.control_sampler.kind) {
    case ControlSampler::Kind::pure_haar: j["control_sampler"] = "pure"; break;
    case ControlSampler::Kind::mixed_hs: j["control_sampler"] = "hs"; break;
    case ControlSampler::Kind::alpha:
      j["control_sampler"] = "alpha=" + format_double(cfg.control_sampler.alpha);
      break;
  }
  j["workers"] = cfg.workers;
  j["output_path"] = cfg.output_path;
  j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
  if (cfg.experiment == ExperimentKind::purification) {
    j["target_purity"] = cfg.target_purity;
    j["max_steps"] = cfg.max_steps;
  }
  return j;
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::standard_scatter: return "standard-scatter";
    case ExperimentKind::fidelity_benchmark: return "fidelity-benchmark";
    case ExperimentKind::purity_vs_eta: return "purity-vs-eta";
    case ExperimentKind::correlations_vs_purity: return "correlations-vs-purity";
    case ExperimentKind::density_of_states: return "density-of-states";
    case ExperimentKind::purification: return "purification";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  for (double e : eta_values)
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("config: eta values must be in [0,1]");
  if (control_sampler.kind == ControlSampler::Kind::alpha &&
      !(control_sampler.alpha >= 0.0 && control_sampler.alpha <= 1.0))
    throw std::invalid_argument("config: alpha must be in [0,1]");
  if (!(target_purity > 0.5 && target_purity < 1.0))
    throw std::invalid_argument("config: target purity must be in (0.5, 1)");
  if (max_steps < 1) throw std::invalid_argument("config: max steps must be >= 1");
}

double SampleRecord::field(const std::string& column) const {
  if (column == "sample_index") return static_cast<double>(sample_index);
  if (column == "step_index") return static_cast<double>(step_index);
  if (column == "eta") return eta;
  if (column == "bell") return bell;
  if (column == "negativity") return negativity;
  if (column == "discord") return discord;
  if (column == "coherence") return coherence;
  if (column == "bell_norm") return bell;
  if (column == "negativity_norm") return negativity;
  if (column == "discord_norm") return discord;
  if (column == "coherence_norm") return coherence;
  if (column == "purity_aux") return purity_aux;
  if (column == "success_probability") return success_probability;
  if (column == "fidelity") return fidelity;
  if (column == "filter_eta") return filter_eta;
  if (column == "filter_theta") return filter_theta;
  if (column == "filter_phi") return filter_phi;
  if (column == "frac_discord") return frac_discord;
  if (column == "frac_coherence") return frac_coherence;
  if (column == "frac_bell") return frac_bell;
  throw std::invalid_argument("unknown record column: " + column);
}

void SampleRecord::set_field(const std::string& column, double value) {
  if (column == "sample_index") sample_index = static_cast<std::int64_t>(value);
  else if (column == "step_index") step_index = static_cast<int>(value);
  else if (column == "eta") eta = value;
  else if (column == "bell" || column == "bell_norm") bell = value;
  else if (column == "negativity" || column == "negativity_norm") negativity = value;
  else if (column == "discord" || column == "discord_norm") discord = value;
  else if (column == "coherence" || column == "coherence_norm") coherence = value;
  else if (column == "purity_aux") purity_aux = value;
  else if (column == "success_probability") success_probability = value;
  else if (column == "fidelity") fidelity = value;
  else if (column == "filter_eta") filter_eta = value;
  else if (column == "filter_theta") filter_theta = value;
  else if (column == "filter_phi") filter_phi = value;
  else if (column == "frac_discord") frac_discord = value;
  else if (column == "frac_coherence") frac_coherence = value;
  else if (column == "frac_bell") frac_bell = value;
  else throw std::invalid_argument("unknown record column: " + column);
}

ExperimentResult run_standard_scatter(const ExperimentConfig& in) {
  ExperimentConfig cfg = with_defaults(in);
  ExperimentResult out;
  out.columns = {"sample_index", "bell", "negativity", "discord", "coherence", "purity_aux"};
  out.records.resize(cfg.samples);

  parallel_samples(cfg.samples, cfg.workers, [&](std::int64_t i) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
    Matrix2c rho0 = cfg.control_sampler.draw(rng);
    Matrix2c u1 = haar_unitary<2>(rng);
    Matrix4c rho_bf = dqc1_output(rho0, u1);
    SampleRecord& r = out.records[i];
    r.sample_index = i;
    r.bell = bell_quantity(rho_bf);
    r.negativity = negativity(rho_bf);
    r.discord = geometric_discord(rho_bf);
    // Coherence of the control qubit, the circuit's working resource; the
    // two-qubit value is basis-inflated by the readout Hadamard.
    r.coherence = l1_coherence(partial_trace(rho_bf, Subsystem::control));
    r.purity_aux = purity(partial_trace(rho_bf, Subsystem::auxiliary));
  });

  json summary;
  double mb = 0, mn = 0, md = 0, mc = 0;
  for (const auto& r : out.records) {
    mb = std::max(mb, r.bell);
    mn = std::max(mn, r.negativity);
    md = std::max(md, r.discord);
    mc = std::max(mc, r.coherence);
  }
  summary["max_bell"] = mb;
  summary["max_negativity"] = mn;
  summary["max_discord"] = md;
  summary["max_coherence"] = mc;
  out.summary_text = summary.dump();
  return out;
}

ExperimentResult run_fidelity_benchmark(const ExperimentConfig& in) {
  ExperimentConfig cfg = with_defaults(in);
  ExperimentResult out;
  out.columns = {"sample_index", "eta", "fidelity"};
  const auto g = static_cast<std::int64_t>(cfg.eta_values.size());
  out.records.resize(g * cfg.samples);

  parallel_samples(g * cfg.samples, cfg.workers, [&](std::int64_t row) {
    std::int64_t gi = row / cfg.samples;
    double eta = cfg.eta_values[gi];
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(row));
    Matrix4c states[2];
    for (auto& st : states) {
      Matrix2c rho0 = cfg.control_sampler.draw(rng);
      Matrix2c u1 = haar_unitary<2>(rng);
      Matrix4c rho_bf = dqc1_output(rho0, u1);
      for (;;) {
        try {
          st = apply_filter(rho_bf, random_direction_spec(eta, rng)).state;
          break;
        } catch (const filter_annihilated&) {
          // zero-weight direction; redraw
        }
      }
    }
    SampleRecord& r = out.records[row];
    r.sample_index = row;
    r.eta = eta;
    r.fidelity = fidelity(states[0], states[1]);
  });

  json summary;
  summary["per_eta"] = json::array();
  for (std::int64_t gi = 0; gi < g; ++gi) {
    std::vector<double> fids;
    fids.reserve(cfg.samples);
    std::vector<std::int64_t> hist(50, 0);
    for (std::int64_t i = 0; i < cfg.samples; ++i) {
      double f = out.records[gi * cfg.samples + i].fidelity;
      fids.push_back(f);
      int bin = std::min(49, static_cast<int>(f * 50.0));
      ++hist[std::max(0, bin)];
    }
    json e;
    e["eta"] = cfg.eta_values[gi];
    e["mean_fidelity"] = mean_of(fids);
    e["stderr_fidelity"] = stderr_of(fids);
    e["histogram_bins"] = 50;
    e["histogram"] = hist;
    summary["per_eta"].push_back(e);
  }
  out.summary_text = summary.dump();
  return out;
}

ExperimentResult run_purity_vs_eta(const ExperimentConfig& in) {
  ExperimentConfig cfg = with_defaults(in);
  auto stats = avg_max_purity_vs_eta(cfg.eta_values, cfg.samples, cfg.control_sampler, cfg.seed,
                                     cfg.workers);
  ExperimentResult out;
  out.columns = {"sample_index", "eta", "purity_aux"};
  json summary;
  summary["per_eta"] = json::array();
  for (std::size_t gi = 0; gi < stats.size(); ++gi) {
    const auto& st = stats[gi];
    for (std::int64_t i = 0; i < cfg.samples; ++i) {
      SampleRecord r;
      r.sample_index = static_cast<std::int64_t>(gi) * cfg.samples + i;
      r.eta = st.eta;
      r.purity_aux = st.per_sample[i];
      out.records.push_back(r);
    }
    json e;
    e["eta"] = st.eta;
    e["mean_purity"] = st.mean_purity;
    e["stderr_purity"] = st.stderr_purity;
    summary["per_eta"].push_back(e);
  }
  out.summary_text = summary.dump();
  return out;
}

ExperimentResult run_correlations_vs_purity(const ExperimentConfig& in) {
  ExperimentConfig cfg = with_defaults(in);
  ExperimentResult out;
  out.columns = {"sample_index", "eta",          "purity_aux",   "bell_norm",
                 "negativity_norm", "discord_norm", "coherence_norm"};
  const auto g = static_cast<std::int64_t>(cfg.eta_values.size());
  out.records.resize(g * cfg.samples);

  parallel_samples(cfg.samples, cfg.workers, [&](std::int64_t i) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
    Matrix2c rho0 = cfg.control_sampler.draw(rng);
    Matrix2c u1 = haar_unitary<2>(rng);
    Matrix4c rho_bf = dqc1_output(rho0, u1);
    for (std::int64_t gi = 0; gi < g; ++gi) {
      OptimizeResult opt = optimize_filter(rho_bf, EtaMode::fixed_eta(cfg.eta_values[gi]));
      FilteredState fs = apply_filter(rho_bf, opt.spec);
      SampleRecord& r = out.records[gi * cfg.samples + i];
      r.sample_index = gi * cfg.samples + i;
      r.eta = cfg.eta_values[gi];
      r.purity_aux = opt.aux_purity;
      r.bell = normalize_correlation(bell_quantity(fs.state), Measure::bell);
      r.negativity = normalize_correlation(negativity(fs.state), Measure::negativity);
      r.discord = normalize_correlation(geometric_discord(fs.state), Measure::discord);
      r.coherence = normalize_correlation(l1_coherence(fs.state), Measure::coherence);
    }
  });

  // 25 equal-width purity bins over [0.5, 1].
  constexpr int kBins = 25;
  struct Bin {
    std::int64_t count = 0;
    double sum[4] = {0, 0, 0, 0};
    double mx[4] = {0, 0, 0, 0};
  };
  std::vector<Bin> bins(kBins);
  for (const auto& r : out.records) {
    int b = std::min(kBins - 1, std::max(0, static_cast<int>((r.purity_aux - 0.5) / 0.5 * kBins)));
    Bin& bin = bins[b];
    ++bin.count;
    const double vals[4] = {r.bell, r.negativity, r.discord, r.coherence};
    for (int m = 0; m < 4; ++m) {
      bin.sum[m] += vals[m];
      bin.mx[m] = std::max(bin.mx[m], vals[m]);
    }
  }
  json summary;
  summary["bins"] = json::array();
  static const char* names[4] = {"bell_norm", "negativity_norm", "discord_norm", "coherence_norm"};
  for (int b = 0; b < kBins; ++b) {
    json jb;
    jb["purity_lo"] = 0.5 + 0.5 * b / kBins;
    jb["purity_hi"] = 0.5 + 0.5 * (b + 1) / kBins;
    jb["count"] = bins[b].count;
    for (int m = 0; m < 4; ++m) {
      jb[std::string("mean_") + names[m]] = bins[b].count ? bins[b].sum[m] / bins[b].count : 0.0;
      jb[std::string("max_") + names[m]] = bins[b].mx[m];
    }
    summary["bins"].push_back(jb);
  }
  out.summary_text = summary.dump();
  return out;
}

ExperimentResult run_density_of_states(const ExperimentConfig& in) {
  ExperimentConfig cfg = with_defaults(in);
  const auto g = static_cast<std::int64_t>(cfg.eta_values.size());
  // indicator counts per eta: [discord, coherence, bell]
  std::vector<std::array<std::atomic<std::int64_t>, 3>> counts(g);
  for (auto& c : counts)
    for (auto& a : c) a.store(0);

  parallel_samples(cfg.samples, cfg.workers, [&](std::int64_t i) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
    Matrix2c rho0 = cfg.control_sampler.draw(rng);
    Matrix2c u1 = haar_unitary<2>(rng);
    Matrix4c rho_bf = dqc1_output(rho0, u1);
    for (std::int64_t gi = 0; gi < g; ++gi) {
      OptimizeResult opt = optimize_filter(rho_bf, EtaMode::fixed_eta(cfg.eta_values[gi]));
      FilteredState fs = apply_filter(rho_bf, opt.spec);
      if (geometric_discord(fs.state) > kDiscordThreshold) ++counts[gi][0];
      if (l1_coherence(partial_trace(fs.state, Subsystem::control)) > kCoherenceThreshold)
        ++counts[gi][1];
      if (bell_quantity(fs.state) > kBellThreshold) ++counts[gi][2];
    }
  });

  ExperimentResult out;
  out.columns = {"sample_index", "eta", "frac_discord", "frac_coherence", "frac_bell"};
  json summary;
  summary["thresholds"] = {{"discord", kDiscordThreshold},
                           {"coherence", kCoherenceThreshold},
                           {"bell", kBellThreshold}};
  summary["samples_per_eta"] = cfg.samples;
  summary["per_eta"] = json::array();
  for (std::int64_t gi = 0; gi < g; ++gi) {
    SampleRecord r;
    r.sample_index = gi;
    r.eta = cfg.eta_values[gi];
    r.frac_discord = static_cast<double>(counts[gi][0]) / cfg.samples;
    r.frac_coherence = static_cast<double>(counts[gi][1]) / cfg.samples;
    r.frac_bell = static_cast<double>(counts[gi][2]) / cfg.samples;
    out.records.push_back(r);
    summary["per_eta"].push_back({{"eta", r.eta},
                                  {"frac_discord", r.frac_discord},
                                  {"frac_coherence", r.frac_coherence},
                                  {"frac_bell", r.frac_bell}});
  }
  out.summary_text = summary.dump();
  return out;
}

ExperimentResult run_purification(const ExperimentConfig& in) {
  ExperimentConfig cfg = with_defaults(in);
  std::vector<PurificationTrace> traces(cfg.samples);

  parallel_samples(cfg.samples, cfg.workers, [&](std::int64_t i) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
    Matrix2c rho0 = cfg.control_sampler.draw(rng);
    Matrix2c u1 = haar_unitary<2>(rng);
    traces[i] = purification_run(rho0, u1, rng, cfg.target_purity, cfg.max_steps);
  });

  ExperimentResult out;
  out.columns = {"sample_index", "step_index",          "filter_eta", "filter_theta",
                 "filter_phi",   "success_probability", "purity_aux", "bell",
                 "negativity",   "discord",             "coherence"};
  std::vector<double> step_counts;
  std::int64_t converged = 0;
  struct StepAgg {
    std::int64_t n = 0;
    double purity = 0, bell = 0, neg = 0, dis = 0, coh = 0;
  };
  std::vector<StepAgg> agg;
  for (std::int64_t i = 0; i < cfg.samples; ++i) {
    const auto& tr = traces[i];
    if (tr.converged) {
      ++converged;
      step_counts.push_back(static_cast<double>(tr.steps.size()));
    }
    for (const auto& st : tr.steps) {
      SampleRecord r;
      r.sample_index = i;
      r.step_index = st.step_index;
      r.filter_eta = st.filter.eta;
      r.filter_theta = st.filter.theta;
      r.filter_phi = st.filter.phi;
      r.success_probability = st.success_probability;
      r.purity_aux = st.aux_purity;
      r.bell = st.bell;
      r.negativity = st.negativity;
      r.discord = st.discord;
      r.coherence = st.coherence;
      out.records.push_back(r);
      if (static_cast<std::size_t>(st.step_index) > agg.size())
        agg.resize(st.step_index);
      StepAgg& a = agg[st.step_index - 1];
      ++a.n;
      a.purity += st.aux_purity;
      a.bell += st.bell;
      a.neg += st.negativity;
      a.dis += st.discord;
      a.coh += st.coherence;
    }
  }

  json summary;
  summary["runs"] = cfg.samples;
  summary["converged_runs"] = converged;
  summary["convergence_rate"] = static_cast<double>(converged) / cfg.samples;
  summary["mean_steps_converged"] = mean_of(step_counts);
  summary["stderr_steps_converged"] = stderr_of(step_counts);
  summary["per_step"] = json::array();
  for (std::size_t k = 0; k < agg.size(); ++k) {
    const StepAgg& a = agg[k];
    if (a.n == 0) continue;
    summary["per_step"].push_back({{"step_index", k + 1},
                                   {"runs", a.n},
                                   {"mean_aux_purity", a.purity / a.n},
                                   {"mean_bell", a.bell / a.n},
                                   {"mean_negativity", a.neg / a.n},
                                   {"mean_discord", a.dis / a.n},
                                   {"mean_coherence", a.coh / a.n}});
  }
  // final-step statistics over converged runs
  std::vector<double> fb, fn;
  for (const auto& tr : traces) {
    if (!tr.converged || tr.steps.empty()) continue;
    fb.push_back(tr.steps.back().bell);
    fn.push_back(normalize_correlation(tr.steps.back().negativity, Measure::negativity));
  }
  double bell_gt2 = 0;
  for (double b : fb) bell_gt2 += b > 2.0 ? 1.0 : 0.0;
  summary["final_fraction_bell_gt_2"] = fb.empty() ? 0.0 : bell_gt2 / fb.size();
  summary["final_mean_normalized_negativity"] = mean_of(fn);
  out.summary_text = summary.dump();
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::standard_scatter: return run_standard_scatter(cfg);
    case ExperimentKind::fidelity_benchmark: return run_fidelity_benchmark(cfg);
    case ExperimentKind::purity_vs_eta: return run_purity_vs_eta(cfg);
    case ExperimentKind::correlations_vs_purity: return run_correlations_vs_purity(cfg);
    case ExperimentKind::density_of_states: return run_density_of_states(cfg);
    case ExperimentKind::purification: return run_purification(cfg);
  }
  throw std::invalid_argument("unknown experiment");
}

void emit(const ExperimentResult& result, const ExperimentConfig& in, double wall_seconds) {
  ExperimentConfig cfg = with_defaults(in);
  std::string path = cfg.output_path;
  if (path.empty())
    path = std::string("dqc1_") + experiment_name(cfg.experiment) +
           (cfg.format == OutputFormat::csv ? ".csv" : ".json");

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw io_error("cannot open output file: " + path);

  if (cfg.format == OutputFormat::csv) {
    for (std::size_t c = 0; c < result.columns.size(); ++c)
      os << (c ? "," : "") << result.columns[c];
    os << "\n";
    for (const auto& r : result.records) {
      for (std::size_t c = 0; c < result.columns.size(); ++c) {
        if (c) os << ",";
        const std::string& col = result.columns[c];
        if (col == "sample_index") os << r.sample_index;
        else if (col == "step_index") os << r.step_index;
        else os << format_double(r.field(col));
      }
      os << "\n";
    }
  } else {
    json j;
    j["config"] = config_json(cfg);
    j["records"] = json::array();
    for (const auto& r : result.records) {
      json jr;
      for (const auto& col : result.columns) {
        if (col == "sample_index") jr[col] = r.sample_index;
        else if (col == "step_index") jr[col] = r.step_index;
        else jr[col] = r.field(col);
      }
      j["records"].push_back(std::move(jr));
    }
    j["summary"] = json::parse(result.summary_text.empty() ? "{}" : result.summary_text);
    os << j.dump(2) << "\n";
  }
  os.flush();
  if (!os) throw io_error("write failed: " + path);

  std::ofstream meta(path + ".meta.json", std::ios::binary | std::ios::trunc);
  if (!meta) throw io_error("cannot open sidecar file: " + path + ".meta.json");
  json m;
  m["config"] = config_json(cfg);
  m["seed"] = std::to_string(cfg.seed);
  m["tool_version"] = kToolVersion;
  m["wall_time_seconds"] = wall_seconds;
  m["summary"] = json::parse(result.summary_text.empty() ? "{}" : result.summary_text);
  meta << m.dump(2) << "\n";
  meta.flush();
  if (!meta) throw io_error("write failed: " + path + ".meta.json");
}

std::pair<std::vector<std::string>, std::vector<SampleRecord>> read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open file: " + path);
  std::string line;
  if (!std::getline(is, line)) throw io_error("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> columns;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) columns.push_back(cell);
  }
  std::vector<SampleRecord> records;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    SampleRecord r;
    std::size_t pos = 0, col = 0;
    while (col < columns.size()) {
      std::size_t comma = line.find(',', pos);
      std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
      double v = 0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{}) throw io_error("bad csv number: " + cell);
      r.set_field(columns[col], v);
      ++col;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    records.push_back(r);
  }
  return {columns, records};
}

std::uint64_t parse_seed(const std::string& text) {
  std::string t = text;
  int base = 10;
  std::size_t off = 0;
  if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) {
    base = 16;
    off = 2;
  }
  std::uint64_t value = 0;
  auto [p, ec] = std::from_chars(t.data() + off, t.data() + t.size(), value, base);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw std::invalid_argument("invalid seed: " + text);
  return value;
}

}  // namespace dqc1
