#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dqc1/correlations.hpp"
#include "dqc1/sampling.hpp"

using namespace dqc1;

namespace {

Matrix4c bell_phi_plus() {
  Eigen::Vector4cd v;
  v << 1, 0, 0, 1;
  v /= std::sqrt(2.0);
  return v * v.adjoint();
}

// Independent oracle: characteristic polynomial det(m - x I) via closed-form
// 4x4 cofactor expansion (no eigensolver involved).
complexd det4(const Matrix4c& m) {
  auto det3 = [](const Eigen::Matrix3cd& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  };
  complexd acc = 0;
  for (int j = 0; j < 4; ++j) {
    Eigen::Matrix3cd minor;
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    acc += (j % 2 ? -1.0 : 1.0) * m(0, j) * det3(minor);
  }
  return acc;
}

double char_poly(const Matrix4c& m, double x) {
  return det4((m - x * Matrix4c::Identity()).eval()).real();
}

}  // namespace

TEST_CASE("kron matches the index formula") {
  Matrix4c xx = kron(sigma_x(), sigma_x());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(xx(i, j) - (i + j == 3 ? 1.0 : 0.0)) < 1e-15);

  CHECK((kron(identity2(), identity2()) - Matrix4c::Identity()).cwiseAbs().maxCoeff() == 0.0);

  Matrix2c ket0;
  ket0 << 1, 0, 0, 0;
  Matrix4c kz = kron(ket0, sigma_z());
  Eigen::Vector4cd want;
  want << 1, -1, 0, 0;
  CHECK((kz - Matrix4c(want.asDiagonal())).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kron rejects results beyond dimension 4") {
  CHECK_THROWS_AS((void)kron(Matrix4c::Identity(), identity2()), std::invalid_argument);
}

TEST_CASE("hermitian_eig on textbook inputs") {
  auto ez = hermitian_eig(sigma_z());
  CHECK(ez.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ez.values[1] == doctest::Approx(-1.0).epsilon(1e-12));

  auto ex = hermitian_eig(sigma_x());
  CHECK(ex.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ex.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
  // top eigenvector is (|0>+|1>)/sqrt(2) up to phase
  CHECK(std::abs(std::abs(ex.vectors(0, 0)) - 1 / std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(ex.vectors(0, 0) - ex.vectors(1, 0)) < 1e-10);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  Matrix2c m;
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS((void)hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("Bell-state partial transpose spectrum against the characteristic polynomial") {
  Matrix4c pt = partial_transpose(bell_phi_plus(), Subsystem::control);

  // oracle first: x = 1/2 is a triple root, x = -1/2 a simple root
  CHECK(std::abs(char_poly(pt, 0.5)) < 1e-12);
  CHECK(std::abs(char_poly(pt, -0.5)) < 1e-12);
  for (double x : {-0.4, -0.1, 0.2, 0.7}) {
    double product = (x - 0.5) * (x - 0.5) * (x - 0.5) * (x + 0.5);
    CHECK(char_poly(pt, x) == doctest::Approx(product).epsilon(1e-9));
  }

  auto eig = hermitian_eig(pt);
  CHECK(eig.values[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(eig.values[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(eig.values[2] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(eig.values[3] == doctest::Approx(-0.5).epsilon(1e-10));

  CHECK(trace_norm(pt) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("hermitian_eig residuals and orthonormality on random Hermitian matrices") {
  for (int i = 0; i < 200; ++i) {
    RngStream rng(7, i);
    Matrix4c g;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) g(r, c) = rng.complex_normal();
    Matrix4c h = 0.5 * (g + g.adjoint());
    auto eig = hermitian_eig(h);
    for (int k = 0; k < 4; ++k) {
      CHECK((h * eig.vectors.col(k) - eig.values[k] * eig.vectors.col(k)).cwiseAbs().maxCoeff() <
            1e-10);
      if (k > 0) CHECK(eig.values[k - 1] >= eig.values[k]);
    }
    CHECK((eig.vectors.adjoint() * eig.vectors - Matrix4c::Identity()).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("trace_norm basics") {
  CHECK(trace_norm(sigma_z()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(trace_norm(Matrix4c::Zero().eval()) == 0.0);
}

TEST_CASE("partial_trace on product, Bell and classical states") {
  RngStream rng(3, 0);
  Matrix2c a = hs_mixed_state<2>(rng);
  Matrix2c b = hs_mixed_state<2>(rng);
  CHECK((partial_trace(kron(a, b), Subsystem::control) - a).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((partial_trace(kron(a, b), Subsystem::auxiliary) - b).cwiseAbs().maxCoeff() < 1e-14);

  CHECK((partial_trace(bell_phi_plus(), Subsystem::auxiliary) - 0.5 * identity2())
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  Matrix4c classical = Matrix4c::Zero();
  classical(0, 0) = 0.5;
  classical(3, 3) = 0.5;
  Matrix2c reduced = partial_trace(classical, Subsystem::control);
  CHECK(std::abs(reduced(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(reduced(1, 1) - 0.5) < 1e-15);
}

TEST_CASE("partial_transpose structure") {
  RngStream rng(5, 0);
  Matrix2c a = hs_mixed_state<2>(rng);
  Matrix2c b = hs_mixed_state<2>(rng);
  Matrix4c pt = partial_transpose(kron(a, b), Subsystem::control);
  CHECK((pt - kron(a.transpose().eval(), b)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(hermitian_eig(pt).values.minCoeff() >= -1e-12);  // product states stay PSD

  Matrix4c diag = Matrix4c::Zero();
  diag(0, 0) = 0.4;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.2;
  diag(3, 3) = 0.1;
  CHECK((partial_transpose(diag, Subsystem::auxiliary) - diag).cwiseAbs().maxCoeff() == 0.0);

  CHECK(hermitian_eig(partial_transpose(bell_phi_plus(), Subsystem::control)).values[3] ==
        doctest::Approx(-0.5).epsilon(1e-10));

  // trace preserved, Hermitian
  for (int i = 0; i < 50; ++i) {
    RngStream r2(11, i);
    Matrix4c rho = hs_mixed_state<4>(r2);
    Matrix4c p = partial_transpose(rho, Subsystem::auxiliary);
    CHECK(std::abs(p.trace().real() - 1.0) < 1e-12);
    CHECK(hermiticity_residual(p) < 1e-12);
  }
}

TEST_CASE("psd_sqrt on exact and random inputs") {
  CHECK((psd_sqrt(Matrix4c::Identity().eval()) - Matrix4c::Identity()).cwiseAbs().maxCoeff() <
        1e-12);

  Eigen::Vector4cd d;
  d << 4, 1, 0, 0;
  Matrix4c m = d.asDiagonal();
  Eigen::Vector4cd want;
  want << 2, 1, 0, 0;
  CHECK((psd_sqrt(m) - Matrix4c(want.asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);

  Matrix2c plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK((psd_sqrt(plus) - plus).cwiseAbs().maxCoeff() < 1e-10);

  for (int i = 0; i < 1000; ++i) {
    RngStream rng(13, i);
    Matrix4c rho = hs_mixed_state<4>(rng);
    Matrix4c root = psd_sqrt(rho);
    CHECK((root * root - rho).cwiseAbs().maxCoeff() < 1e-9);
  }

  Matrix2c negative = -0.5 * identity2();
  CHECK_THROWS_AS((void)psd_sqrt(negative), std::invalid_argument);
}

TEST_CASE("purity of canonical states") {
  CHECK(purity((0.5 * identity2()).eval()) == doctest::Approx(0.5).epsilon(1e-12));
  RngStream rng(17, 0);
  CHECK(purity(haar_pure_state<4>(rng)) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix4c nmr = nmr_state(0.5, haar_pure_state<4>(rng));
  CHECK(purity(nmr) == doctest::Approx(0.4375).epsilon(1e-12));
}

TEST_CASE("fidelity special values and symmetry") {
  Matrix2c ket0 = Matrix2c::Zero(), ket1 = Matrix2c::Zero();
  ket0(0, 0) = 1;
  ket1(1, 1) = 1;
  CHECK(fidelity(ket0, ket1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fidelity(ket0, (0.5 * identity2()).eval()) == doctest::Approx(0.5).epsilon(1e-10));

  for (int i = 0; i < 100; ++i) {
    RngStream rng(19, i);
    Matrix4c a = hs_mixed_state<4>(rng);
    Matrix4c b = hs_mixed_state<4>(rng);
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-9));
    Matrix4c u = haar_unitary<4>(rng);
    CHECK(fidelity((u * a * u.adjoint()).eval(), (u * b * u.adjoint()).eval()) ==
          doctest::Approx(fidelity(a, b)).epsilon(1e-9));
    CHECK(fidelity(a, b) >= 0.0);
    CHECK(fidelity(a, b) <= 1.0 + 1e-9);
  }
}

TEST_CASE("density matrix invariants hold on sampled states") {
  double min_tn = 2.0;
  for (int i = 0; i < 1000; ++i) {
    RngStream rng(23, i);
    Matrix4c rho = hs_mixed_state<4>(rng);
    CHECK(is_density_matrix(rho));
    double tn = trace_norm(partial_transpose(rho, Subsystem::control));
    CHECK(tn >= 1.0 - 1e-12);
    min_tn = std::min(min_tn, tn);
  }
  CHECK(min_tn >= 1.0 - 1e-12);
}
