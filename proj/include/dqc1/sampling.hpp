#pragma once

#include "dqc1/qla.hpp"

#include <cstdint>
#include <cmath>

namespace dqc1 {

/// Counter-based random stream. A (seed, stream_id) pair fully determines the
/// sample sequence, so concurrent workers drawing from per-sample streams
/// reproduce the single-threaded results exactly.
///
/// Core generator is splitmix64: output i is mix(state0 + i * gamma).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : state_(mix(mix(seed + kGamma) ^ mix(stream_id + kGamma2))) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard complex normal: Re and Im each N(0, 1/2), E|z|^2 = 1.
  complexd complex_normal() {
    double u = uniform();
    double r = std::sqrt(-std::log1p(-u));  // |z| with |z|^2 ~ Exp(1)
    double phase = 2.0 * M_PI * uniform();
    return complexd(r * std::cos(phase), r * std::sin(phase));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kGamma2 = 0xda942042e4dd58b5ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

namespace detail {

template <int N>
Eigen::Matrix<complexd, N, N> ginibre(RngStream& rng) {
  Eigen::Matrix<complexd, N, N> g;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) g(i, j) = rng.complex_normal();
  return g;
}

}  // namespace detail

/// Haar-random unitary: Ginibre matrix, QR, R-diagonal phases folded into Q.
template <int N>
Eigen::Matrix<complexd, N, N> haar_unitary(RngStream& rng) {
  static_assert(N == 2 || N == 4);
  for (;;) {
    Eigen::Matrix<complexd, N, N> g = detail::ginibre<N>(rng);
    Eigen::HouseholderQR<Eigen::Matrix<complexd, N, N>> qr(g);
    Eigen::Matrix<complexd, N, N> q = qr.householderQ();
    Eigen::Matrix<complexd, N, N> r = qr.matrixQR().template triangularView<Eigen::Upper>();
    bool degenerate = false;
    for (int i = 0; i < N; ++i) {
      double a = std::abs(r(i, i));
      if (a < 1e-12) {
        degenerate = true;
        break;
      }
      q.col(i) *= r(i, i) / a;
    }
    if (!degenerate) return q;
  }
}

/// Haar-random pure state as a rank-1 projector.
template <int N>
Eigen::Matrix<complexd, N, N> haar_pure_state(RngStream& rng) {
  static_assert(N == 2 || N == 4);
  for (;;) {
    Eigen::Matrix<complexd, N, 1> v;
    for (int i = 0; i < N; ++i) v(i) = rng.complex_normal();
    double n = v.norm();
    if (n < 1e-12) continue;
    v /= n;
    return v * v.adjoint();
  }
}

/// Hilbert-Schmidt-random mixed state: G G^dag / tr(G G^dag).
template <int N>
Eigen::Matrix<complexd, N, N> hs_mixed_state(RngStream& rng) {
  static_assert(N == 2 || N == 4);
  for (;;) {
    Eigen::Matrix<complexd, N, N> g = detail::ginibre<N>(rng);
    Eigen::Matrix<complexd, N, N> m = g * g.adjoint();
    double t = m.trace().real();
    if (t < 1e-12) continue;
    m /= t;
    return (0.5 * (m + m.adjoint())).eval();
  }
}

/// (I + alpha sigma_z) / 2
Matrix2c control_state(double alpha);

/// (1-eps)/4 I + eps |psi><psi| for a pure two-qubit psi.
Matrix4c nmr_state(double epsilon, const Matrix4c& psi);

/// How the harness draws the control qubit's initial state.
struct ControlSampler {
  enum class Kind { pure_haar, mixed_hs, alpha };
  Kind kind = Kind::pure_haar;
  double alpha = 1.0;

  Matrix2c draw(RngStream& rng) const {
    switch (kind) {
      case Kind::pure_haar: return haar_pure_state<2>(rng);
      case Kind::mixed_hs: return hs_mixed_state<2>(rng);
      case Kind::alpha: default: return control_state(alpha);
    }
  }
};

}  // namespace dqc1
