#include "dqc1/correlations.hpp"

#include <array>
#include <cmath>

namespace dqc1 {

namespace {

std::array<Matrix2c, 3> paulis() { return {sigma_x(), sigma_y(), sigma_z()}; }

}  // namespace

FanoDecomposition fano_decompose(const Matrix4c& rho) {
  auto sig = paulis();
  FanoDecomposition f;
  Matrix2c id = identity2();
  for (int i = 0; i < 3; ++i) {
    f.s(i) = (rho * kron(sig[i], id)).trace().real();
    f.r(i) = (rho * kron(id, sig[i])).trace().real();
    for (int j = 0; j < 3; ++j) f.c(i, j) = (rho * kron(sig[i], sig[j])).trace().real();
  }
  return f;
}

Matrix4c fano_reconstruct(const FanoDecomposition& f) {
  auto sig = paulis();
  Matrix2c id = identity2();
  Matrix4c rho = Matrix4c::Identity();
  for (int i = 0; i < 3; ++i) {
    rho += f.s(i) * kron(sig[i], id);
    rho += f.r(i) * kron(id, sig[i]);
    for (int j = 0; j < 3; ++j) rho += f.c(i, j) * kron(sig[i], sig[j]);
  }
  return 0.25 * rho;
}

double bell_quantity(const Matrix4c& rho) {
  Eigen::Matrix3d t = fano_decompose(rho).c;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(t * t.transpose());
  const auto& ev = solver.eigenvalues();  // ascending
  double m12 = ev(2) + ev(1);
  return 2.0 * std::sqrt(m12 > 0 ? m12 : 0.0);
}

double negativity(const Matrix4c& rho) {
  double n = (trace_norm(partial_transpose(rho, Subsystem::control)) - 1.0) / 2.0;
  return n < 0 ? 0.0 : n;
}

double geometric_discord(const Matrix4c& rho) {
  FanoDecomposition f = fano_decompose(rho);
  Eigen::Matrix3d lambda = f.s * f.s.transpose() + f.c * f.c.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(lambda);
  double d = 0.25 * (f.s.squaredNorm() + f.c.squaredNorm() - solver.eigenvalues()(2));
  return d < 0 ? 0.0 : d;
}

double measure_max(Measure which) {
  switch (which) {
    case Measure::bell: return 2.0 * std::sqrt(2.0);
    case Measure::negativity: return 0.5;
    case Measure::discord: return 0.5;
    case Measure::coherence: default: return 3.0;
  }
}

double normalize_correlation(double value, Measure which) {
  double mx = measure_max(which);
  if (value < -1e-9 || value > mx * (1.0 + 1e-9))
    throw std::invalid_argument("normalize_correlation: value outside theoretical range");
  double v = value / mx;
  return v < 0 ? 0.0 : (v > 1 ? 1.0 : v);
}

}  // namespace dqc1
