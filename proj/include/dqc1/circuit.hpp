#pragma once

#include "dqc1/qla.hpp"

#include <stdexcept>

namespace dqc1 {

inline Matrix2c hadamard() {
  Matrix2c h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

/// |0><0| (x) I + |1><1| (x) u1 in the control (x) auxiliary ordering.
Matrix4c controlled_u(const Matrix2c& u1);

/// Circuit output (H(x)I) CU (H(x)I) (rho0 (x) aux) (H(x)I) CU^dag (H(x)I).
/// aux defaults to I/2 and is replaced by the re-inserted state during
/// purification passes.
Matrix4c dqc1_output(const Matrix2c& rho0, const Matrix2c& u1,
                     const Matrix2c& aux = 0.5 * Matrix2c::Identity());

/// Post-selection filter parameters: success parameter eta and the Bloch
/// angles of the distinguished column |u> = (cos(theta/2), e^{i phi} sin(theta/2)).
struct FilterSpec {
  double eta = 1.0;
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector2cd column() const {
    return {complexd(std::cos(theta / 2.0), 0.0),
            std::polar(std::sin(theta / 2.0), phi)};
  }
};

/// F = eta I + (1-eta) |u><u|; eigenvalues {1, eta}.
Matrix2c filter_matrix(const FilterSpec& spec);

struct FilteredState {
  Matrix4c state;              // post-selected rho_f
  double success_probability;  // tr[(F(x)I) rho (F(x)I)]
};

/// Thrown when the filter leaves no weight to renormalise (success
/// probability below 1e-12); optimizers treat the candidate as infeasible.
struct filter_annihilated : std::runtime_error {
  filter_annihilated() : std::runtime_error("filter annihilated the state") {}
};

inline constexpr double kAnnihilationThreshold = 1e-12;

/// rho_f = (F(x)I) rho (F(x)I) / tr[...]; F acts on the control qubit.
FilteredState apply_filter(const Matrix4c& rho_bf, const FilterSpec& spec);

/// Trace-estimation readout: z = tr(u1)/2 recovered from Pauli expectation
/// values on the control qubit of dqc1_output(control_state(alpha), u1).
/// The trailing Hadamard maps sigma_x -> sigma_z and sigma_y -> -sigma_y,
/// so z = (<sigma_z (x) I> - i <sigma_y (x) I>) / alpha.
complexd normalized_trace_estimate(double alpha, const Matrix2c& u1);

}  // namespace dqc1
