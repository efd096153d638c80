#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <complex>
#include <stdexcept>

namespace dqc1 {

using complexd = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Which tensor factor of a two-qubit state. Basis index = 2*control + auxiliary.
enum class Subsystem { control, auxiliary };

// Default validation tolerances for density/unitary matrices.
inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-12;

inline Matrix2c identity2() { return Matrix2c::Identity(); }

inline Matrix2c sigma_x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix2c sigma_y() {
  Matrix2c m;
  m << complexd(0, 0), complexd(0, -1), complexd(0, 1), complexd(0, 0);
  return m;
}

inline Matrix2c sigma_z() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}

/// Kronecker product for the small fixed dimensions used here.
/// Result must not exceed 4 in either axis.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  constexpr int R = int(DerivedA::RowsAtCompileTime) * int(DerivedB::RowsAtCompileTime);
  constexpr int C = int(DerivedA::ColsAtCompileTime) * int(DerivedB::ColsAtCompileTime);
  static_assert(DerivedA::RowsAtCompileTime > 0 && DerivedB::RowsAtCompileTime > 0,
                "kron requires fixed-size inputs");
  if (a.rows() * b.rows() > 4 || a.cols() * b.cols() > 4)
    throw std::invalid_argument("kron: result dimension exceeds 4");
  using Scalar = decltype(typename DerivedA::Scalar{} * typename DerivedB::Scalar{});
  Eigen::Matrix<Scalar, R, C> out;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.template block<DerivedB::RowsAtCompileTime, DerivedB::ColsAtCompileTime>(
          i * b.rows(), j * b.cols()) = a(i, j) * b;
  return out;
}

template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermTol) {
  return hermiticity_residual(m) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = kUnitaryTol) {
  using Plain = typename Derived::PlainObject;
  Plain d = m * m.adjoint() - Plain::Identity();
  return d.cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
void require_unitary(const Eigen::MatrixBase<Derived>& m, double tol = kUnitaryTol) {
  if (!is_unitary(m, tol)) throw std::invalid_argument("matrix is not unitary");
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending,
/// eigenvector columns in matching order.
template <int N>
struct HermitianEig {
  Eigen::Matrix<double, N, 1> values;
  Eigen::Matrix<complexd, N, N> vectors;
};

template <typename Derived>
auto hermitian_eig(const Eigen::MatrixBase<Derived>& m) {
  constexpr int N = Derived::RowsAtCompileTime;
  static_assert(N >= 2 && N <= 4, "hermitian_eig supports dims 2..4");
  if (!is_hermitian(m, 1e-10)) throw std::invalid_argument("hermitian_eig: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<complexd, N, N>> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  HermitianEig<N> out;
  // Eigen sorts ascending; flip to descending.
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: matrix must be square");
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(m);
  return svd.singularValues().sum();
}

template <typename Derived>
bool is_density_matrix(const Eigen::MatrixBase<Derived>& rho, double herm_tol = kHermTol,
                       double trace_tol = kTraceTol, double psd_tol = kPsdTol) {
  if (rho.rows() != rho.cols()) return false;
  if (!rho.allFinite()) return false;
  if (hermiticity_residual(rho) > herm_tol) return false;
  if (std::abs(rho.trace().real() - 1.0) > trace_tol || std::abs(rho.trace().imag()) > trace_tol)
    return false;
  Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> solver(rho);
  return solver.eigenvalues().minCoeff() >= -psd_tol;
}

template <typename Derived>
void require_density_matrix(const Eigen::MatrixBase<Derived>& rho) {
  if (!is_density_matrix(rho)) throw std::invalid_argument("not a valid density matrix");
}

/// Reduced state of one qubit of a two-qubit density matrix.
Matrix2c partial_trace(const Matrix4c& rho, Subsystem keep);

/// Transpose the indices of one tensor factor. Output is Hermitian with unit
/// trace but may fail positivity (that failure is the point).
Matrix4c partial_transpose(const Matrix4c& rho, Subsystem subsystem);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clamped to zero;
/// anything below -1e-8 is rejected.
template <typename Derived>
typename Derived::PlainObject psd_sqrt(const Eigen::MatrixBase<Derived>& m) {
  auto eig = hermitian_eig(m);
  constexpr int N = Derived::RowsAtCompileTime;
  Eigen::Matrix<double, N, 1> vals = eig.values;
  for (int i = 0; i < N; ++i) {
    if (vals[i] < -1e-8)
      throw std::invalid_argument("psd_sqrt: matrix has a significantly negative eigenvalue");
    vals[i] = vals[i] > 0 ? std::sqrt(vals[i]) : 0.0;
  }
  return eig.vectors * vals.template cast<complexd>().asDiagonal() * eig.vectors.adjoint();
}

/// tr(rho^2)
template <typename Derived>
double purity(const Eigen::MatrixBase<Derived>& rho) {
  return (rho * rho).trace().real();
}

/// Uhlmann fidelity (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2.
template <typename DerivedA, typename DerivedB>
double fidelity(const Eigen::MatrixBase<DerivedA>& rho1, const Eigen::MatrixBase<DerivedB>& rho2) {
  static_assert(int(DerivedA::RowsAtCompileTime) == int(DerivedB::RowsAtCompileTime),
                "fidelity: dimension mismatch");
  if (rho1.rows() != rho2.rows()) throw std::invalid_argument("fidelity: dimension mismatch");
  auto s = psd_sqrt(rho1);
  typename DerivedA::PlainObject inner = s * rho2 * s;
  // inner is PSD up to roundoff; sum of sqrt of clamped eigenvalues.
  auto eig = hermitian_eig((0.5 * (inner + inner.adjoint())).eval());
  double acc = 0;
  for (int i = 0; i < eig.values.size(); ++i)
    acc += eig.values[i] > 0 ? std::sqrt(eig.values[i]) : 0.0;
  double f = acc * acc;
  return f < 0 ? 0.0 : (f > 1.0 + 1e-9 ? f : std::min(f, 1.0));
}

}  // namespace dqc1
