#pragma once

#include "dqc1/circuit.hpp"
#include "dqc1/sampling.hpp"

#include <optional>
#include <vector>

namespace dqc1 {

/// eta handling in optimize_filter: free search over (theta, phi, logit eta)
/// or a 2-parameter search at a pinned eta.
struct EtaMode {
  std::optional<double> fixed;

  static EtaMode free_eta() { return {}; }
  static EtaMode fixed_eta(double eta) { return {eta}; }
};

struct OptimizeResult {
  FilterSpec spec;
  double aux_purity = 0.0;
};

struct optimization_failure : std::runtime_error {
  optimization_failure() : std::runtime_error("filter optimization found no feasible candidate") {}
};

/// Purity of the auxiliary marginal after filtering with spec; empty when the
/// filter annihilates the state.
std::optional<double> filtered_aux_purity(const Matrix4c& rho_bf, const FilterSpec& spec);

/// Maximizes the filtered auxiliary purity by multi-start Nelder-Mead:
/// 64 Fibonacci-sphere directions x {0.05, 0.20, ..., 0.95} eta starts in the
/// free mode (plus an explicit eta = 1 baseline), simplex convergence at
/// diameter < 1e-6 or 500 evaluations per start, and a tightened polish pass
/// from the winner. Ties within 1e-9 purity prefer larger eta.
OptimizeResult optimize_filter(const Matrix4c& rho_bf, const EtaMode& mode);

struct EtaPurityStat {
  double eta = 0.0;
  double mean_purity = 0.0;
  double stderr_purity = 0.0;
  std::vector<double> per_sample;  // ordered by sample index
};

/// Fig-5-style sweep: for each eta, draw (rho0, u1) per sample (stream id =
/// sample index, shared across the grid), run optimize_filter at fixed eta and
/// average the optimal purities.
std::vector<EtaPurityStat> avg_max_purity_vs_eta(const std::vector<double>& eta_grid,
                                                 std::int64_t samples,
                                                 const ControlSampler& sampler,
                                                 std::uint64_t seed, int workers = 1);

struct PurificationStep {
  int step_index = 0;  // 1-based
  FilterSpec filter;
  double success_probability = 0.0;
  double aux_purity = 0.0;
  double bell = 0.0;
  double negativity = 0.0;
  double discord = 0.0;
  double coherence = 0.0;  // two-qubit l1 coherence of rho_f
};

struct PurificationTrace {
  Matrix2c rho0;
  Matrix2c u1;
  std::vector<PurificationStep> steps;
  bool converged = false;
};

inline constexpr int kPurifyCandidates = 4;
inline constexpr double kPurifyEta = 0.5;

/// Iterates the filter-and-reinsert loop: at each pass the auxiliary input is
/// the previous pass's post-selected marginal. The per-pass filter is the best
/// of kPurifyCandidates Haar-random directions at eta = kPurifyEta plus an
/// auxiliary-preserving projector (eta = 0 along |+>), so the recorded purity
/// never decreases. Stops once the filtered auxiliary purity reaches
/// target_purity (within 1e-6) or after max_steps passes.
PurificationTrace purification_run(const Matrix2c& rho0, const Matrix2c& u1, RngStream& rng,
                                   double target_purity = 0.99, int max_steps = 50);

}  // namespace dqc1
