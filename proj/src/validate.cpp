#include "dqc1/correlations.hpp"
#include "dqc1/harness.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace dqc1 {

namespace {

struct Suite {
  std::ostream& os;
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    os << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!detail.empty()) os << "  (" << detail << ")";
    os << "\n";
    if (!ok) ++failures;
  }
};

Matrix2c random_unitary2(RngStream& rng) { return haar_unitary<2>(rng); }

Matrix4c random_hermitian4(RngStream& rng) {
  Matrix4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = rng.complex_normal();
  return 0.5 * (g + g.adjoint());
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int run_validation(std::ostream& os, std::uint64_t seed) {
  Suite s{os};

  {  // qla: density invariants and trace-norm lower bound on random states
    bool ok = true;
    double worst_tn = 2.0;
    for (int i = 0; i < 2000 && ok; ++i) {
      RngStream rng(seed, 1000000 + i);
      Matrix4c rho = hs_mixed_state<4>(rng);
      ok = is_density_matrix(rho);
      double tn = trace_norm(partial_transpose(rho, Subsystem::control));
      worst_tn = std::min(worst_tn, tn);
      ok = ok && tn >= 1.0 - 1e-12;
    }
    s.check("qla.density_invariants_and_ppt_trace_norm", ok,
            "min trace norm " + std::to_string(worst_tn));
  }
  {  // qla: psd_sqrt squares back
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
      RngStream rng(seed, 1100000 + i);
      Matrix4c rho = hs_mixed_state<4>(rng);
      Matrix4c root = psd_sqrt(rho);
      ok = ((root * root - rho).cwiseAbs().maxCoeff() <= 1e-9);
    }
    s.check("qla.psd_sqrt_squares_back", ok);
  }
  {  // qla: fidelity symmetry and unitary invariance
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
      RngStream rng(seed, 1200000 + i);
      Matrix4c a = hs_mixed_state<4>(rng);
      Matrix4c b = hs_mixed_state<4>(rng);
      Matrix4c u = haar_unitary<4>(rng);
      double f1 = fidelity(a, b);
      double f2 = fidelity(b, a);
      double f3 = fidelity((u * a * u.adjoint()).eval(), (u * b * u.adjoint()).eval());
      ok = std::abs(f1 - f2) <= 1e-9 && std::abs(f1 - f3) <= 1e-9;
    }
    s.check("qla.fidelity_symmetry_and_unitary_invariance", ok);
  }
  {  // qla: eigensolver residuals
    bool ok = true;
    for (int i = 0; i < 500 && ok; ++i) {
      RngStream rng(seed, 1300000 + i);
      Matrix4c h = random_hermitian4(rng);
      auto eig = hermitian_eig(h);
      for (int k = 0; k < 4; ++k) {
        double resid =
            (h * eig.vectors.col(k) - eig.values[k] * eig.vectors.col(k)).cwiseAbs().maxCoeff();
        ok = ok && resid <= 1e-10;
      }
      ok = ok && (eig.vectors.adjoint() * eig.vectors - Matrix4c::Identity())
                         .cwiseAbs()
                         .maxCoeff() <= 1e-10;
      for (int k = 0; k + 1 < 4; ++k) ok = ok && eig.values[k] >= eig.values[k + 1];
    }
    s.check("qla.hermitian_eig_residuals", ok);
  }
  {  // sampling: unitarity and determinism
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
      RngStream rng(seed, 1400000 + i);
      Matrix2c u = haar_unitary<2>(rng);
      ok = is_unitary(u, 1e-12);
      RngStream rng2(seed, 1400000 + i);
      Matrix2c u2 = haar_unitary<2>(rng2);
      ok = ok && (u - u2).cwiseAbs().maxCoeff() == 0.0;
    }
    s.check("sampling.unitarity_and_stream_determinism", ok);
  }
  {  // sampling: Haar first-entry moment and pure-state Bloch centering
    int n = 20000;
    double m00 = 0;
    Eigen::Vector3d bloch = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i) {
      RngStream rng(seed, 1500000 + i);
      m00 += std::norm(haar_unitary<2>(rng)(0, 0));
      bloch += fano_decompose(kron(haar_pure_state<2>(rng), 0.5 * identity2()).eval()).s;
    }
    m00 /= n;
    bloch /= n;
    bool ok = std::abs(m00 - 0.5) < 0.02 && bloch.cwiseAbs().maxCoeff() < 0.03;
    s.check("sampling.haar_moments", ok,
            "E|U00|^2 = " + std::to_string(m00));
  }
  {  // sampling: HS measure matches partial trace of Haar-pure dim-4
    int n = 20000;
    double p1 = 0, p2 = 0;
    for (int i = 0; i < n; ++i) {
      RngStream rng(seed, 1600000 + i);
      p1 += purity(hs_mixed_state<2>(rng));
      p2 += purity(partial_trace(haar_pure_state<4>(rng), Subsystem::control));
    }
    bool ok = std::abs(p1 / n - p2 / n) < 0.01;
    s.check("sampling.hs_measure_vs_purified_construction", ok,
            "mean purities " + std::to_string(p1 / n) + " vs " + std::to_string(p2 / n));
  }
  {  // circuit: output invariants; unfiltered auxiliary marginal is exactly I/2
    bool ok = true;
    for (int i = 0; i < 2000 && ok; ++i) {
      RngStream rng(seed, 1700000 + i);
      Matrix2c rho0 = hs_mixed_state<2>(rng);
      Matrix4c rho_bf = dqc1_output(rho0, random_unitary2(rng));
      ok = is_density_matrix(rho_bf);
      Matrix2c aux = partial_trace(rho_bf, Subsystem::auxiliary);
      ok = ok && (aux - 0.5 * identity2()).cwiseAbs().maxCoeff() <= 1e-12;
      ok = ok && std::abs(purity(aux) - 0.5) <= 1e-12;
    }
    s.check("circuit.output_invariants_aux_maximally_mixed", ok);
  }
  {  // circuit: trace readout is alpha-independent and exact
    bool ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
      RngStream rng(seed, 1800000 + i);
      Matrix2c u1 = random_unitary2(rng);
      complexd want = u1.trace() / 2.0;
      for (double alpha : {0.25, 0.5, 1.0})
        ok = ok && std::abs(normalized_trace_estimate(alpha, u1) - want) <= 1e-10;
    }
    s.check("circuit.trace_readout_alpha_independent", ok);
  }
  {  // circuit: filter success probability and covariance under control rotations
    bool ok = true;
    for (int i = 0; i < 500 && ok; ++i) {
      RngStream rng(seed, 1900000 + i);
      Matrix2c rho0 = hs_mixed_state<2>(rng);
      Matrix4c rho_bf = dqc1_output(rho0, random_unitary2(rng));
      FilterSpec spec{0.2 + 0.6 * rng.uniform(), std::acos(1 - 2 * rng.uniform()),
                      2 * M_PI * rng.uniform()};
      FilteredState fs = apply_filter(rho_bf, spec);
      ok = std::abs(fs.state.trace().real() - 1.0) <= 1e-12 && fs.success_probability > 0 &&
           fs.success_probability <= 1.0 + 1e-12 && is_density_matrix(fs.state);

      Matrix2c v = random_unitary2(rng);
      Eigen::Vector2cd col = v.adjoint() * spec.column();
      FilterSpec rotated = spec;
      rotated.theta = 2.0 * std::atan2(std::abs(col(1)), std::abs(col(0)));
      rotated.phi = std::arg(col(1)) - std::arg(col(0));
      Matrix4c vI = kron(v, identity2());
      Matrix4c conj_in = (vI.adjoint() * rho_bf * vI).eval();
      FilteredState fs2 = apply_filter(conj_in, rotated);
      Matrix4c lifted = vI * fs2.state * vI.adjoint();
      ok = ok && (lifted - fs.state).cwiseAbs().maxCoeff() <= 1e-10;
    }
    s.check("circuit.filter_covariance", ok);
  }
  {  // correlations: local unitary invariance + reconstruction
    bool ok = true;
    for (int i = 0; i < 300 && ok; ++i) {
      RngStream rng(seed, 2000000 + i);
      Matrix4c rho = hs_mixed_state<4>(rng);
      Matrix2c v = random_unitary2(rng);
      Matrix2c w = random_unitary2(rng);
      Matrix4c vw = kron(v, w);
      Matrix4c rho2 = (vw * rho * vw.adjoint()).eval();
      ok = std::abs(bell_quantity(rho) - bell_quantity(rho2)) <= 1e-9 &&
           std::abs(negativity(rho) - negativity(rho2)) <= 1e-9 &&
           std::abs(geometric_discord(rho) - geometric_discord(rho2)) <= 1e-9;
      ok = ok && (fano_reconstruct(fano_decompose(rho)) - rho).cwiseAbs().maxCoeff() <= 1e-10;
    }
    s.check("correlations.local_unitary_invariance_and_reconstruction", ok);
  }
  {  // correlations: standard DQC1 has zero negativity; B>2 implies N>0 on generic states
    bool ok = true;
    double max_neg = 0;
    for (int i = 0; i < 2000 && ok; ++i) {
      RngStream rng(seed, 2100000 + i);
      Matrix2c rho0 = hs_mixed_state<2>(rng);
      Matrix4c rho_bf = dqc1_output(rho0, random_unitary2(rng));
      max_neg = std::max(max_neg, negativity(rho_bf));
      ok = negativity(rho_bf) <= 1e-10 && bell_quantity(rho_bf) <= 2.0 + 1e-9;
      Matrix4c psi = haar_pure_state<4>(rng);
      if (bell_quantity(psi) > 2.0) ok = ok && negativity(psi) > 0;
    }
    s.check("correlations.standard_dqc1_unentangled", ok,
            "max negativity " + std::to_string(max_neg));
  }
  {  // purifier: optimized filter never loses to the unfiltered baseline
    bool ok = true;
    for (int i = 0; i < 60 && ok; ++i) {
      RngStream rng(seed, 2200000 + i);
      Matrix2c rho0 = haar_pure_state<2>(rng);
      Matrix4c rho_bf = dqc1_output(rho0, random_unitary2(rng));
      double base = purity(partial_trace(rho_bf, Subsystem::auxiliary));
      OptimizeResult res = optimize_filter(rho_bf, EtaMode::free_eta());
      ok = res.aux_purity >= base - 1e-12;
      auto direct = filtered_aux_purity(rho_bf, res.spec);
      ok = ok && direct && std::abs(*direct - res.aux_purity) <= 1e-9;
    }
    s.check("purifier.optimizer_beats_identity_baseline", ok);
  }
  {  // purifier: optimized filter beats uniform random search
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
      RngStream rng(seed, 2300000 + i);
      Matrix2c rho0 = haar_pure_state<2>(rng);
      Matrix4c rho_bf = dqc1_output(rho0, random_unitary2(rng));
      OptimizeResult res = optimize_filter(rho_bf, EtaMode::free_eta());
      for (int k = 0; k < 200; ++k) {
        FilterSpec spec{rng.uniform(), std::acos(1 - 2 * rng.uniform()), 2 * M_PI * rng.uniform()};
        auto p = filtered_aux_purity(rho_bf, spec);
        if (p) ok = ok && res.aux_purity >= *p - 1e-6;
      }
    }
    s.check("purifier.optimizer_beats_random_search", ok);
  }
  {  // purifier: purification traces are monotone and well-formed
    bool ok = true;
    for (int i = 0; i < 40 && ok; ++i) {
      RngStream rng(seed, 2400000 + i);
      Matrix2c rho0 = haar_pure_state<2>(rng);
      Matrix2c u1 = random_unitary2(rng);
      PurificationTrace tr = purification_run(rho0, u1, rng);
      double prev = 0.5;
      for (const auto& st : tr.steps) {
        ok = ok && st.aux_purity >= prev - 1e-9;
        ok = ok && st.success_probability > 0 && st.success_probability <= 1.0 + 1e-12;
        prev = st.aux_purity;
      }
      if (tr.converged) ok = ok && tr.steps.back().aux_purity >= 0.99 - 1e-6;
    }
    s.check("purifier.purification_monotone_and_well_formed", ok);
  }
  {  // harness: worker-count independence of emitted records
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "dqc1_validate";
    fs::create_directories(dir);
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::standard_scatter;
    cfg.samples = 400;
    cfg.seed = seed;
    cfg.workers = 1;
    cfg.output_path = (dir / "w1.csv").string();
    emit(run_experiment(cfg), cfg, 0.0);
    cfg.workers = 4;
    cfg.output_path = (dir / "w4.csv").string();
    emit(run_experiment(cfg), cfg, 0.0);
    bool ok = read_file((dir / "w1.csv").string()) == read_file((dir / "w4.csv").string());
    s.check("harness.worker_count_determinism", ok);
  }
  {  // harness: csv round trip
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::standard_scatter;
    cfg.samples = 50;
    cfg.seed = seed + 7;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "dqc1_validate";
    fs::create_directories(dir);
    cfg.output_path = (dir / "rt.csv").string();
    ExperimentResult res = run_experiment(cfg);
    emit(res, cfg, 0.0);
    auto [cols, recs] = read_csv(cfg.output_path);
    bool ok = cols == res.columns && recs.size() == res.records.size();
    for (std::size_t i = 0; i < recs.size() && ok; ++i)
      for (const auto& c : cols)
        if (c != "sample_index" && c != "step_index")
          ok = ok && recs[i].field(c) == res.records[i].field(c);
    s.check("harness.csv_round_trip", ok);
  }

  os << (s.failures == 0 ? "validation passed" : "validation FAILED") << " ("
     << s.failures << " failing suite" << (s.failures == 1 ? "" : "s") << ")\n";
  return s.failures;
}

}  // namespace dqc1
