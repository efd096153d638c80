#include "dqc1/purifier.hpp"

#include "dqc1/correlations.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace dqc1 {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTieTol = 1e-9;

double logit(double e) { return std::log(e / (1.0 - e)); }
double expit(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// 64 directions from the Fibonacci spiral, as (theta, phi).
std::vector<std::pair<double, double>> fibonacci_sphere(int n) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n;
    pts.emplace_back(std::acos(z), std::fmod(i * golden, 2.0 * kPi));
  }
  return pts;
}

// Canonical Bloch angles: theta in [0, pi], phi in [0, 2 pi).
void canonicalize_angles(double& theta, double& phi) {
  double st = std::sin(theta);
  double nx = st * std::cos(phi), ny = st * std::sin(phi), nz = std::cos(theta);
  theta = std::acos(std::clamp(nz, -1.0, 1.0));
  phi = std::atan2(ny, nx);
  if (std::abs(nx) < 1e-15 && std::abs(ny) < 1e-15) phi = 0.0;
  if (phi < 0) phi += 2.0 * kPi;
}

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
};

// Standard simplex minimization; stops at diameter < tol or max_evals.
template <typename F>
NelderMeadResult nelder_mead(const F& f, std::vector<double> x0, const std::vector<double>& steps,
                             double tol, int max_evals) {
  const int n = static_cast<int>(x0.size());
  std::vector<std::vector<double>> xs(n + 1, x0);
  for (int i = 0; i < n; ++i) xs[i + 1][i] += steps[i];
  std::vector<double> fv(n + 1);
  int evals = 0;
  for (int i = 0; i <= n; ++i) fv[i] = f(xs[i]), ++evals;

  std::vector<int> order(n + 1);
  auto sorted = [&] {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
  };
  auto dist = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    for (int i = 0; i < n; ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(d);
  };

  while (evals < max_evals) {
    sorted();
    double diam = 0;
    for (int i = 1; i <= n; ++i) diam = std::max(diam, dist(xs[order[i]], xs[order[0]]));
    if (diam < tol) break;

    int worst = order[n];
    std::vector<double> centroid(n, 0.0);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) centroid[i] += xs[order[k]][i] / n;

    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (int i = 0; i < n; ++i) p[i] = centroid[i] + t * (centroid[i] - xs[worst][i]);
      return p;
    };

    std::vector<double> xr = blend(1.0);
    double fr = f(xr);
    ++evals;
    if (fr < fv[order[0]]) {
      std::vector<double> xe = blend(2.0);
      double fe = f(xe);
      ++evals;
      if (fe < fr) xs[worst] = std::move(xe), fv[worst] = fe;
      else xs[worst] = std::move(xr), fv[worst] = fr;
    } else if (fr < fv[order[n - 1]]) {
      xs[worst] = std::move(xr), fv[worst] = fr;
    } else {
      std::vector<double> xc = blend(-0.5);
      double fc = f(xc);
      ++evals;
      if (fc < fv[worst]) {
        xs[worst] = std::move(xc), fv[worst] = fc;
      } else {
        int best = order[0];
        for (int k = 0; k <= n; ++k) {
          if (k == best) continue;
          for (int i = 0; i < n; ++i) xs[k][i] = xs[best][i] + 0.5 * (xs[k][i] - xs[best][i]);
          fv[k] = f(xs[k]);
          ++evals;
        }
      }
    }
  }
  sorted();
  return {xs[order[0]], fv[order[0]]};
}

struct BestTracker {
  bool any = false;
  double purity = -1.0;
  FilterSpec spec;

  // Prefer higher purity; within kTieTol prefer larger eta.
  void offer(double p, const FilterSpec& s) {
    if (!any || p > purity + kTieTol || (p > purity - kTieTol && s.eta > spec.eta)) {
      any = true;
      purity = p;
      spec = s;
    }
  }
};

}  // namespace

std::optional<double> filtered_aux_purity(const Matrix4c& rho_bf, const FilterSpec& spec) {
  Matrix4c k = kron(filter_matrix(spec), identity2());
  Matrix4c sigma = k * rho_bf * k;
  double p = sigma.trace().real();
  if (p < kAnnihilationThreshold) return std::nullopt;
  // auxiliary marginal of sigma / p
  complexd m00 = sigma(0, 0) + sigma(2, 2);
  complexd m11 = sigma(1, 1) + sigma(3, 3);
  complexd m01 = sigma(0, 1) + sigma(2, 3);
  double pur = (std::norm(m00) + std::norm(m11) + 2.0 * std::norm(m01)) / (p * p);
  return pur;
}

OptimizeResult optimize_filter(const Matrix4c& rho_bf, const EtaMode& mode) {
  static const std::vector<std::pair<double, double>> kSphere = fibonacci_sphere(64);

  BestTracker best;
  if (!mode.fixed) {
    // eta = 1 keeps the state untouched and never annihilates.
    FilterSpec identity{1.0, 0.0, 0.0};
    best.offer(*filtered_aux_purity(rho_bf, identity), identity);

    auto objective = [&](const std::vector<double>& x) {
      auto p = filtered_aux_purity(rho_bf, FilterSpec{expit(x[2]), x[0], x[1]});
      return p ? -*p : 1e6;
    };
    std::vector<double> eta_starts;
    for (double e = 0.05; e < 0.96; e += 0.15) eta_starts.push_back(e);

    NelderMeadResult champion;
    bool have_champion = false;
    for (const auto& [th, ph] : kSphere) {
      for (double e : eta_starts) {
        auto r = nelder_mead(objective, {th, ph, logit(e)}, {0.25, 0.25, 0.5}, 1e-6, 500);
        if (!have_champion || r.fx < champion.fx) champion = r, have_champion = true;
      }
    }
    if (have_champion && champion.fx < 1e6) {
      auto polished = nelder_mead(objective, champion.x, {1e-3, 1e-3, 1e-3}, 1e-10, 200);
      if (polished.fx < champion.fx) champion = polished;
      FilterSpec s{expit(champion.x[2]), champion.x[0], champion.x[1]};
      canonicalize_angles(s.theta, s.phi);
      best.offer(-champion.fx, s);
    }
  } else {
    double eta = *mode.fixed;
    if (!(eta >= 0.0 && eta <= 1.0))
      throw std::invalid_argument("optimize_filter: fixed eta must be in [0,1]");
    auto objective = [&](const std::vector<double>& x) {
      auto p = filtered_aux_purity(rho_bf, FilterSpec{eta, x[0], x[1]});
      return p ? -*p : 1e6;
    };
    NelderMeadResult champion;
    bool have_champion = false;
    for (const auto& [th, ph] : kSphere) {
      // grid point itself is the fixed-mode baseline
      std::vector<double> x0{th, ph};
      double f0 = objective(x0);
      if (f0 < 1e6) {
        FilterSpec s{eta, th, ph};
        canonicalize_angles(s.theta, s.phi);
        best.offer(-f0, s);
      }
      auto r = nelder_mead(objective, x0, {0.25, 0.25}, 1e-6, 500);
      if (!have_champion || r.fx < champion.fx) champion = r, have_champion = true;
    }
    if (have_champion && champion.fx < 1e6) {
      auto polished = nelder_mead(objective, champion.x, {1e-3, 1e-3}, 1e-10, 200);
      if (polished.fx < champion.fx) champion = polished;
      FilterSpec s{eta, champion.x[0], champion.x[1]};
      canonicalize_angles(s.theta, s.phi);
      best.offer(-champion.fx, s);
    }
  }

  if (!best.any) throw optimization_failure{};
  return {best.spec, best.purity};
}

std::vector<EtaPurityStat> avg_max_purity_vs_eta(const std::vector<double>& eta_grid,
                                                 std::int64_t samples,
                                                 const ControlSampler& sampler,
                                                 std::uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("avg_max_purity_vs_eta: samples must be >= 1");
  const int g = static_cast<int>(eta_grid.size());
  std::vector<std::vector<double>> purities(g, std::vector<double>(samples, 0.0));

  std::atomic<std::int64_t> next{0};
  auto work = [&] {
    for (;;) {
      std::int64_t s = next.fetch_add(1);
      if (s >= samples) return;
      RngStream rng(seed, static_cast<std::uint64_t>(s));
      Matrix2c rho0 = sampler.draw(rng);
      Matrix2c u1 = haar_unitary<2>(rng);
      Matrix4c rho_bf = dqc1_output(rho0, u1);
      for (int i = 0; i < g; ++i)
        purities[i][s] = optimize_filter(rho_bf, EtaMode::fixed_eta(eta_grid[i])).aux_purity;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::vector<EtaPurityStat> out(g);
  for (int i = 0; i < g; ++i) {
    out[i].eta = eta_grid[i];
    out[i].per_sample = purities[i];
    double mean = 0;
    for (double p : purities[i]) mean += p;
    mean /= samples;
    double var = 0;
    for (double p : purities[i]) var += (p - mean) * (p - mean);
    out[i].mean_purity = mean;
    out[i].stderr_purity = samples > 1 ? std::sqrt(var / (samples - 1) / samples) : 0.0;
  }
  return out;
}

PurificationTrace purification_run(const Matrix2c& rho0, const Matrix2c& u1, RngStream& rng,
                                   double target_purity, int max_steps) {
  if (!(target_purity > 0.5 && target_purity < 1.0))
    throw std::invalid_argument("purification_run: target purity must be in (0.5, 1)");
  require_density_matrix(rho0);
  require_unitary(u1);

  PurificationTrace trace;
  trace.rho0 = rho0;
  trace.u1 = u1;

  Matrix2c aux = 0.5 * Matrix2c::Identity();
  for (int k = 1; k <= max_steps; ++k) {
    Matrix4c rho_bf = dqc1_output(rho0, u1, aux);

    // Candidate filters: identity, the auxiliary-preserving projector along
    // |+> (its conditional state is exactly the current auxiliary), and
    // kPurifyCandidates Haar-random directions at the working eta.
    std::vector<FilterSpec> candidates;
    candidates.push_back({1.0, 0.0, 0.0});
    candidates.push_back({0.0, kPi / 2.0, 0.0});
    for (int c = 0; c < kPurifyCandidates; ++c) {
      double theta = std::acos(1.0 - 2.0 * rng.uniform());
      double phi = 2.0 * kPi * rng.uniform();
      candidates.push_back({kPurifyEta, theta, phi});
    }

    BestTracker best;
    for (const auto& spec : candidates) {
      auto p = filtered_aux_purity(rho_bf, spec);
      if (p) best.offer(*p, spec);
    }
    if (!best.any) throw optimization_failure{};

    FilteredState fs = apply_filter(rho_bf, best.spec);
    aux = partial_trace(fs.state, Subsystem::auxiliary);

    PurificationStep step;
    step.step_index = k;
    step.filter = best.spec;
    step.success_probability = fs.success_probability;
    step.aux_purity = purity(aux);
    step.bell = bell_quantity(fs.state);
    step.negativity = negativity(fs.state);
    step.discord = geometric_discord(fs.state);
    step.coherence = l1_coherence(fs.state);
    trace.steps.push_back(step);

    if (step.aux_purity >= target_purity - 1e-6) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

}  // namespace dqc1
