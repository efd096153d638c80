#include "dqc1/sampling.hpp"

namespace dqc1 {

Matrix2c control_state(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("control_state: alpha must be in [0,1]");
  Matrix2c rho = Matrix2c::Zero();
  rho(0, 0) = (1.0 + alpha) / 2.0;
  rho(1, 1) = (1.0 - alpha) / 2.0;
  return rho;
}

Matrix4c nmr_state(double epsilon, const Matrix4c& psi) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("nmr_state: epsilon must be in [0,1]");
  require_density_matrix(psi);
  if (std::abs(purity(psi) - 1.0) > 1e-9)
    throw std::invalid_argument("nmr_state: psi must be a pure state");
  return ((1.0 - epsilon) / 4.0) * Matrix4c::Identity() + epsilon * psi;
}

}  // namespace dqc1
