#pragma once

// Test-only reference computations. Nothing here calls into the library's
// evaluation paths; they exist to check them.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

namespace oracle {

// γ from H_N - ln N with the Euler–Maclaurin correction.
inline double euler_gamma_series() {
  const int n = 2000;
  long double h = 0.0L;
  for (int k = n; k >= 1; --k) h += 1.0L / k;
  const long double N = n;
  return static_cast<double>(h - std::log(N) - 1.0L / (2 * N) + 1.0L / (12 * N * N) -
                             1.0L / (120 * N * N * N * N));
}

// ζ(s) = Σ_{k<N} k^{-s} + Euler–Maclaurin tail.
inline double zeta_series(int s) {
  const int n = 2000;
  long double sum = 0.0L;
  for (int k = n - 1; k >= 1; --k) sum += std::pow(static_cast<long double>(k), -s);
  const long double N = n;
  const long double tail = std::pow(N, 1 - s) / (s - 1) + std::pow(N, -s) / 2 +
                           s * std::pow(N, -s - 1) / 12 -
                           s * (s + 1.0L) * (s + 2) * std::pow(N, -s - 3) / 720;
  return static_cast<double>(sum + tail);
}

// ψ^(k)(x) = (-1)^{k+1} ∫_0^∞ t^k e^{-xt} / (1 - e^{-t}) dt for k >= 1.
inline double polygamma_integral(int k, double x) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double t) {
    if (t == 0.0) return k == 1 ? 1.0 : 0.0;
    return std::exp(k * std::log(t) - x * t) / (-std::expm1(-t));
  };
  const double value = integrator.integrate(f, 1e-14);
  return (k % 2 == 1) ? value : -value;
}

// Binet: ψ(x) = ln x - 1/(2x) - 2 ∫_0^∞ t / ((t² + x²)(e^{2πt} - 1)) dt.
inline double digamma_binet(double x) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double t) {
    if (t == 0.0) return 1.0 / (2.0 * std::numbers::pi * x * x);
    return t / ((t * t + x * x) * std::expm1(2.0 * std::numbers::pi * t));
  };
  return std::log(x) - 0.5 / x - 2.0 * integrator.integrate(f, 1e-14);
}

inline double polygamma_quadrature(int k, double x) {
  return k == 0 ? digamma_binet(x) : polygamma_integral(k, x);
}

// Double-exponential quadrature; tolerates algebraic endpoint singularities.
template <class F>
double integrate(F f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, 1e-14);
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::abs(b);
}

}  // namespace oracle
