#include "dqc1/circuit.hpp"

#include "dqc1/sampling.hpp"

namespace dqc1 {

Matrix4c controlled_u(const Matrix2c& u1) {
  require_unitary(u1);
  Matrix4c cu = Matrix4c::Identity();
  cu.block<2, 2>(2, 2) = u1;
  return cu;
}

Matrix4c dqc1_output(const Matrix2c& rho0, const Matrix2c& u1, const Matrix2c& aux) {
  Matrix4c hi = kron(hadamard(), identity2());
  Matrix4c m = hi * controlled_u(u1) * hi;
  Matrix4c rho = m * kron(rho0, aux) * m.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

Matrix2c filter_matrix(const FilterSpec& spec) {
  if (!(spec.eta >= 0.0 && spec.eta <= 1.0))
    throw std::invalid_argument("filter_matrix: eta must be in [0,1]");
  Eigen::Vector2cd u = spec.column();
  Matrix2c f = spec.eta * Matrix2c::Identity() + (1.0 - spec.eta) * (u * u.adjoint());
  return 0.5 * (f + f.adjoint());
}

FilteredState apply_filter(const Matrix4c& rho_bf, const FilterSpec& spec) {
  Matrix4c k = kron(filter_matrix(spec), identity2());
  Matrix4c sigma = k * rho_bf * k.adjoint();
  double p = sigma.trace().real();
  if (p < kAnnihilationThreshold) throw filter_annihilated{};
  sigma /= p;
  return {0.5 * (sigma + sigma.adjoint()), p};
}

complexd normalized_trace_estimate(double alpha, const Matrix2c& u1) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("normalized_trace_estimate: alpha must be in (0,1]");
  Matrix4c rho_bf = dqc1_output(control_state(alpha), u1);
  double ez = (rho_bf * kron(sigma_z(), identity2())).trace().real();
  double ey = (rho_bf * kron(sigma_y(), identity2())).trace().real();
  return complexd(ez, -ey) / alpha;
}

}  // namespace dqc1
