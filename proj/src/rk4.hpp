#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace meminductor::detail {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
Vec<N> axpy(const Vec<N>& x, double a, const Vec<N>& y) {
  Vec<N> r;
  for (std::size_t k = 0; k < N; ++k) r[k] = x[k] + a * y[k];
  return r;
}

/// One classical fourth-order Runge-Kutta step of dx/dt = f(t, x).
template <std::size_t N, class F>
Vec<N> rk4_step(F&& f, double t, const Vec<N>& x, double h) {
  const Vec<N> k1 = f(t, x);
  const Vec<N> k2 = f(t + 0.5 * h, axpy(x, 0.5 * h, k1));
  const Vec<N> k3 = f(t + 0.5 * h, axpy(x, 0.5 * h, k2));
  const Vec<N> k4 = f(t + h, axpy(x, h, k3));
  Vec<N> r;
  for (std::size_t k = 0; k < N; ++k) {
    r[k] = x[k] + h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
  }
  return r;
}

template <std::size_t N>
bool all_finite(const Vec<N>& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline constexpr double kMaxSteps = 1e8;

}  // namespace meminductor::detail
