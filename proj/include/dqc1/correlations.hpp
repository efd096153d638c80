#pragma once

#include "dqc1/qla.hpp"

namespace dqc1 {

/// Bloch vectors and correlation matrix of a two-qubit state:
/// rho = (1/4)[I(x)I + I(x)(r.sigma) + (s.sigma)(x)I + sum c_ij sigma_i (x) sigma_j].
struct FanoDecomposition {
  Eigen::Vector3d s;  // control Bloch vector
  Eigen::Vector3d r;  // auxiliary Bloch vector
  Eigen::Matrix3d c;  // correlation matrix c_ij
};

FanoDecomposition fano_decompose(const Matrix4c& rho);

/// Inverse of fano_decompose.
Matrix4c fano_reconstruct(const FanoDecomposition& f);

/// Horodecki criterion value 2 sqrt(m1 + m2) with m1 >= m2 the top
/// eigenvalues of C C^T. Values above 2 signal possible CHSH violation.
double bell_quantity(const Matrix4c& rho);

/// (||rho^{T_control}||_1 - 1) / 2, clamped at zero from below.
double negativity(const Matrix4c& rho);

/// Geometric discord with the control qubit as the measured side:
/// (|s|^2 + ||C||_F^2 - lambda_max(s s^T + C C^T)) / 4.
double geometric_discord(const Matrix4c& rho);

/// Sum of |rho_ij| over i != j. Works for one- and two-qubit states.
template <typename Derived>
double l1_coherence(const Eigen::MatrixBase<Derived>& rho) {
  return rho.cwiseAbs().sum() - rho.diagonal().cwiseAbs().sum();
}

enum class Measure { bell, negativity, discord, coherence };

/// Theoretical maximum of a measure for two qubits.
double measure_max(Measure which);

/// value / theoretical maximum; rejects values outside the measure's range.
double normalize_correlation(double value, Measure which);

}  // namespace dqc1
