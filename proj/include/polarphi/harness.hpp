#pragma once

// Grid-based numerical evidence for the monotonicity argument behind
// "φ(B_p^n) is maximal at p = 2":
//
//   f1(x)  = f(y1, y2, 1/x)                       symmetric about x = 1/2
//   F(x,y) = (y+2)[ψ((y+2)x) - ψ((y+2)(1-x))] - y[ψ(yx) - ψ(y(1-x))]
//   (log f1)'(x) = F(x,y1) - F(x,y2)
//   G = ∂F/∂y,  ∂G/∂x = H(x,y+2) - H(x,y)
//   H(x,y) = 2y[ψ'(yx) + ψ'(y(1-x))] + y²[xψ''(yx) + (1-x)ψ''(y(1-x))]
//   ∂H/∂y = g''(yx) + g''(y(1-x)),  g(z) = z²ψ'(z)  (convex)
//
// Nothing here is a proof; every check is pointwise on a finite grid.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polarphi/exponent.hpp"

namespace polarphi::harness {

struct Settings {
  // Finite-difference step as a fraction of the distance to the nearest
  // singularity (x: min(x, 1-x); y, z: the coordinate itself).
  double first_step = 1e-3;
  double second_step = 1e-2;
  double fd_rel_tol = 1e-5;
  // Differences at or below this are ties and count as violations of strict
  // monotonicity.
  double tie = 1e-12;
};

struct Violation {
  std::string check;
  std::vector<double> point;
  double value = 0.0;
};

struct GridReport {
  std::string description;
  std::vector<std::vector<double>> grid;
  std::vector<double> values;
  std::vector<Violation> violations;
  double max_residual = 0.0;
  double residual_tolerance = 0.0;

  bool passed() const noexcept {
    return violations.empty() && max_residual <= residual_tolerance;
  }
  void absorb(const GridReport& other);
};

struct ScanReport : GridReport {
  std::vector<Exponent> p;
  std::size_t argmax = 0;
  // Reported only: φ nondecreasing up to p = 2 and nonincreasing after.
  bool unimodal = false;
};

double f1_eval(double x, double y1, double y2);
double log_f1_eval(double x, double y1, double y2);
double F_eval(double x, double y);
double G_eval(double x, double y);
double H_eval(double x, double y);
// g''(z) for g(z) = z²ψ'(z): 2ψ'(z) + 4zψ''(z) + z²ψ'''(z).
double xsq_trigamma_convexity(double z);

// Richardson-extrapolated central differences.
template <class Fn>
double first_derivative(const Fn& f, double c, double h) {
  const double wide = (f(c + h) - f(c - h)) / (2.0 * h);
  const double narrow = (f(c + 0.5 * h) - f(c - 0.5 * h)) / h;
  return (4.0 * narrow - wide) / 3.0;
}

template <class Fn>
double second_derivative(const Fn& f, double c, double h) {
  const double fc = f(c);
  const double wide = (f(c + h) - 2.0 * fc + f(c - h)) / (h * h);
  const double hh = 0.5 * h;
  const double narrow = (f(c + hh) - 2.0 * fc + f(c - hh)) / (hh * hh);
  return (4.0 * narrow - wide) / 3.0;
}

std::vector<double> default_x_grid();
std::vector<double> default_y_grid();
std::vector<std::pair<double, double>> default_pair_grid();
std::vector<double> default_convexity_grid();
// 64 geometric points on [1, 64], plus 2 and ∞.
std::vector<Exponent> default_p_grid();

ScanReport scan_p_argmax(int n, const std::vector<Exponent>& p_grid, const Settings& s = {});

GridReport monotonicity_report(const std::vector<double>& x_grid, const std::vector<double>& y_grid,
                               const std::vector<std::pair<double, double>>& pair_grid,
                               const Settings& s = {});

// The four derivative identities checked against finite differences.
GridReport derivative_identity_report(const std::vector<double>& x_grid,
                                      const std::vector<double>& y_grid,
                                      const std::vector<std::pair<double, double>>& pair_grid,
                                      const Settings& s = {});

// g''(z) > 0 on z_grid, plus g'' against a second difference of g at fd_points.
GridReport convexity_report(const std::vector<double>& z_grid,
                            const std::vector<double>& fd_points = {0.5, 2.0, 10.0},
                            const Settings& s = {});

// f1(x) = f1(1-x), G(x) = -G(1-x), H(x) = H(1-x), f1(0) = f1(1) < f1(1/2).
GridReport symmetry_report(const std::vector<double>& x_grid, const std::vector<double>& y_grid,
                           const std::vector<std::pair<double, double>>& pair_grid);

}  // namespace polarphi::harness
