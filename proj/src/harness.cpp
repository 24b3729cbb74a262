#include "polarphi/harness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polarphi/errors.hpp"
#include "polarphi/exact.hpp"
#include "polarphi/specfun.hpp"

namespace polarphi::harness {
namespace {

using specfun::digamma;
using specfun::pentagamma;
using specfun::tetragamma;
using specfun::trigamma;

void require_unit_open(double x, const char* fn) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError(std::string(fn) + ": x must lie in (0,1), got " + std::to_string(x));
  }
}

void require_positive(double y, const char* fn) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw DomainError(std::string(fn) + ": y must be positive, got " + std::to_string(y));
  }
}

// Relative mismatch; where the identity value vanishes identically (x = 1/2)
// the absolute mismatch is used instead.
double mismatch(double analytic, double numeric) {
  const double diff = std::abs(analytic - numeric);
  return analytic == 0.0 ? diff : diff / std::abs(analytic);
}

double x_step(double x, const Settings& s) { return s.first_step * std::min(x, 1.0 - x); }

void record_residual(GridReport& r, const char* check, std::vector<double> point, double residual) {
  r.max_residual = std::max(r.max_residual, residual);
  if (!(residual <= r.residual_tolerance)) {
    r.violations.push_back({check, std::move(point), residual});
  }
}

}  // namespace

void GridReport::absorb(const GridReport& other) {
  if (!description.empty()) description += "; ";
  description += other.description;
  grid.insert(grid.end(), other.grid.begin(), other.grid.end());
  values.insert(values.end(), other.values.begin(), other.values.end());
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  max_residual = std::max(max_residual, other.max_residual);
  residual_tolerance = std::max(residual_tolerance, other.residual_tolerance);
}

double log_f1_eval(double x, double y1, double y2) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("f1_eval: x must lie in [0,1], got " + std::to_string(x));
  }
  // x = 0 is p = ∞ and x = 1 is p = 1; both use the endpoint branch of f.
  const Exponent p = x == 0.0 ? Exponent::infinity() : Exponent{1.0 / x};
  return exact::log_f_factor(y1, y2, p);
}

double f1_eval(double x, double y1, double y2) { return std::exp(log_f1_eval(x, y1, y2)); }

double F_eval(double x, double y) {
  require_unit_open(x, "F_eval");
  require_positive(y, "F_eval");
  const double y2 = y + 2.0;
  return y2 * (digamma(y2 * x) - digamma(y2 * (1.0 - x))) - y * (digamma(y * x) - digamma(y * (1.0 - x)));
}

double G_eval(double x, double y) {
  require_unit_open(x, "G_eval");
  require_positive(y, "G_eval");
  const double y2 = y + 2.0;
  const double a = y2 * x, b = y2 * (1.0 - x), c = y * x, d = y * (1.0 - x);
  return digamma(a) - digamma(b) - digamma(c) + digamma(d) + a * trigamma(a) - b * trigamma(b) -
         c * trigamma(c) + d * trigamma(d);
}

double H_eval(double x, double y) {
  require_unit_open(x, "H_eval");
  require_positive(y, "H_eval");
  const double c = y * x, d = y * (1.0 - x);
  return 2.0 * y * (trigamma(c) + trigamma(d)) + y * y * (x * tetragamma(c) + (1.0 - x) * tetragamma(d));
}

double xsq_trigamma_convexity(double z) {
  require_positive(z, "xsq_trigamma_convexity");
  return 2.0 * trigamma(z) + 4.0 * z * tetragamma(z) + z * z * pentagamma(z);
}

std::vector<double> default_x_grid() {
  const double margin = 1e-3;
  std::vector<double> g(101);
  for (int i = 0; i <= 100; ++i) g[i] = margin + (1.0 - 2.0 * margin) * i / 100.0;
  g[50] = 0.5;
  return g;
}

std::vector<double> default_y_grid() {
  std::vector<double> g(33);
  for (int i = 0; i <= 32; ++i) g[i] = 0.1 * std::pow(500.0, i / 32.0);
  g.back() = 50.0;
  return g;
}

std::vector<std::pair<double, double>> default_pair_grid() {
  const double ys[] = {0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0};
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < std::size(ys); ++i) {
    for (std::size_t j = i + 1; j < std::size(ys); ++j) pairs.emplace_back(ys[i], ys[j]);
  }
  return pairs;
}

std::vector<double> default_convexity_grid() {
  std::vector<double> g(81);
  for (int i = 0; i <= 80; ++i) g[i] = 0.01 * std::pow(1e4, i / 80.0);
  return g;
}

std::vector<Exponent> default_p_grid() {
  std::vector<Exponent> g;
  for (int i = 0; i < 64; ++i) g.emplace_back(i == 63 ? 64.0 : std::pow(64.0, i / 63.0));
  g.emplace_back(2.0);
  std::sort(g.begin(), g.end(), [](const Exponent& a, const Exponent& b) { return a.value() < b.value(); });
  g.push_back(Exponent::infinity());
  return g;
}

ScanReport scan_p_argmax(int n, const std::vector<Exponent>& p_grid, const Settings& s) {
  const auto has = [&](const Exponent& e) { return std::find(p_grid.begin(), p_grid.end(), e) != p_grid.end(); };
  const Exponent two{2.0};
  if (!has(two) || !has(Exponent{1.0}) || !has(Exponent::infinity())) {
    throw DomainError("scan_p_argmax: grid must contain 1, 2 and inf");
  }

  ScanReport r;
  r.description = "phi(B_p^" + std::to_string(n) + ") maximal at p=2";
  r.p = p_grid;
  for (const Exponent& p : p_grid) {
    r.grid.push_back({p.value()});
    r.values.push_back(exact::phi_pball(n, p).phi);
  }
  const std::size_t at_two = std::find(p_grid.begin(), p_grid.end(), two) - p_grid.begin();
  const double phi_two = r.values[at_two];
  r.argmax = std::max_element(r.values.begin(), r.values.end()) - r.values.begin();

  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (i == at_two) continue;
    const double gap = phi_two - r.values[i];
    if (!(gap > s.tie)) r.violations.push_back({"phi(2) - phi(p) > 0", {p_grid[i].value()}, gap});
  }
  if (r.argmax != at_two && r.values[r.argmax] != phi_two) {
    r.violations.push_back({"argmax at p=2", {p_grid[r.argmax].value()}, r.values[r.argmax]});
  }

  // Shape along p order (grid order need not be sorted).
  std::vector<std::size_t> order(p_grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p_grid[a].value() < p_grid[b].value(); });
  r.unimodal = true;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const double pa = p_grid[order[k]].value();
    const double step = r.values[order[k + 1]] - r.values[order[k]];
    if ((pa < 2.0 && step < 0.0) || (pa >= 2.0 && step > 0.0)) r.unimodal = false;
  }
  return r;
}

GridReport monotonicity_report(const std::vector<double>& x_grid, const std::vector<double>& y_grid,
                               const std::vector<std::pair<double, double>>& pair_grid, const Settings& s) {
  GridReport r;
  r.description = "log f1 increasing on (0,1/2]; F decreasing in y; dH/dy > 0; sign of G";
  r.residual_tolerance = s.fd_rel_tol;

  std::vector<double> left;
  for (double x : x_grid) {
    if (x > 0.0 && x <= 0.5) left.push_back(x);
  }
  std::sort(left.begin(), left.end());

  for (auto [y1, y2] : pair_grid) {
    for (std::size_t i = 0; i + 1 < left.size(); ++i) {
      const double step = log_f1_eval(left[i + 1], y1, y2) - log_f1_eval(left[i], y1, y2);
      if (!(step > s.tie)) r.violations.push_back({"log f1 increasing", {left[i], y1, y2}, step});
    }
  }

  for (double x : x_grid) {
    if (!(x > 0.0 && x < 0.5)) continue;
    for (std::size_t j = 0; j + 1 < y_grid.size(); ++j) {
      const double step = F_eval(x, y_grid[j + 1]) - F_eval(x, y_grid[j]);
      if (!(step < -s.tie)) r.violations.push_back({"F decreasing in y", {x, y_grid[j]}, step});
    }
  }

  for (double x : x_grid) {
    if (!(x > 0.0 && x < 1.0)) continue;
    for (double y : y_grid) {
      r.grid.push_back({x, y});
      // H cancels heavily near the x edges, so this difference uses the wider step.
      const double dh = first_derivative([&](double v) { return H_eval(x, v); }, y, s.second_step * y);
      const double analytic = xsq_trigamma_convexity(y * x) + xsq_trigamma_convexity(y * (1.0 - x));
      r.values.push_back(dh);
      if (!(dh > s.tie)) r.violations.push_back({"dH/dy > 0", {x, y}, dh});
      record_residual(r, "dH/dy finite difference", {x, y}, mismatch(analytic, dh));

      const double g = G_eval(x, y);
      if (x < 0.5 && !(g < -s.tie)) r.violations.push_back({"G < 0 on (0,1/2)", {x, y}, g});
      if (x > 0.5 && !(g > s.tie)) r.violations.push_back({"G > 0 on (1/2,1)", {x, y}, g});
    }
  }
  return r;
}

GridReport derivative_identity_report(const std::vector<double>& x_grid, const std::vector<double>& y_grid,
                                      const std::vector<std::pair<double, double>>& pair_grid,
                                      const Settings& s) {
  GridReport r;
  r.description = "(log f1)' = F(x,y1)-F(x,y2); dF/dy = G; dG/dx = H(x,y+2)-H(x,y)";
  r.residual_tolerance = s.fd_rel_tol;

  for (double x : x_grid) {
    if (!(x > 0.0 && x < 1.0)) continue;
    const double hx = x_step(x, s);
    for (auto [y1, y2] : pair_grid) {
      const double fd = first_derivative([&](double v) { return log_f1_eval(v, y1, y2); }, x, hx);
      const double analytic = F_eval(x, y1) - F_eval(x, y2);
      record_residual(r, "(log f1)'", {x, y1, y2}, mismatch(analytic, fd));
    }
    for (double y : y_grid) {
      r.grid.push_back({x, y});
      const double dfdy = first_derivative([&](double v) { return F_eval(x, v); }, y, s.first_step * y);
      record_residual(r, "dF/dy = G", {x, y}, mismatch(G_eval(x, y), dfdy));

      const double dgdx = first_derivative([&](double v) { return G_eval(v, y); }, x, hx);
      record_residual(r, "dG/dx = H(y+2)-H(y)", {x, y}, mismatch(H_eval(x, y + 2.0) - H_eval(x, y), dgdx));
    }
  }
  return r;
}

GridReport convexity_report(const std::vector<double>& z_grid, const std::vector<double>& fd_points,
                            const Settings& s) {
  GridReport r;
  r.description = "z^2 psi'(z) convex";
  r.residual_tolerance = s.fd_rel_tol;
  for (double z : z_grid) {
    const double v = xsq_trigamma_convexity(z);
    r.grid.push_back({z});
    r.values.push_back(v);
    if (!(v > 0.0)) r.violations.push_back({"g'' > 0", {z}, v});
  }
  const auto g = [](double z) { return z * z * specfun::trigamma(z); };
  for (double z : fd_points) {
    const double fd = second_derivative(g, z, s.second_step * z);
    record_residual(r, "g'' second difference", {z}, mismatch(xsq_trigamma_convexity(z), fd));
  }
  return r;
}

GridReport symmetry_report(const std::vector<double>& x_grid, const std::vector<double>& y_grid,
                           const std::vector<std::pair<double, double>>& pair_grid) {
  GridReport r;
  r.description = "f1(x)=f1(1-x); G antisymmetric; H symmetric; f1(0)=f1(1)<f1(1/2)";
  r.residual_tolerance = 1e-10;
  for (auto [y1, y2] : pair_grid) {
    const double end0 = f1_eval(0.0, y1, y2);
    const double end1 = f1_eval(1.0, y1, y2);
    const double mid = f1_eval(0.5, y1, y2);
    if (end0 != end1) r.violations.push_back({"f1(0) = f1(1)", {y1, y2}, end0 - end1});
    if (!(end0 < mid)) r.violations.push_back({"f1(0) < f1(1/2)", {y1, y2}, mid - end0});
    for (double x : x_grid) {
      if (!(x > 0.0 && x < 1.0)) continue;
      const double a = f1_eval(x, y1, y2);
      const double b = f1_eval(1.0 - x, y1, y2);
      record_residual(r, "f1 symmetry", {x, y1, y2}, std::abs(a - b) / std::abs(a));
    }
  }
  for (double x : x_grid) {
    if (!(x > 0.0 && x < 1.0)) continue;
    for (double y : y_grid) {
      const double ga = G_eval(x, y), gb = G_eval(1.0 - x, y);
      const double ha = H_eval(x, y), hb = H_eval(1.0 - x, y);
      // Rounding of 1-x perturbs every term of H; measure against the term size.
      const double h_terms = 2.0 * y * (specfun::trigamma(y * x) + specfun::trigamma(y * (1.0 - x)));
      record_residual(r, "G antisymmetry", {x, y}, std::abs(ga + gb) / std::max(1.0, std::abs(ga)));
      record_residual(r, "H symmetry", {x, y}, std::abs(ha - hb) / std::max(std::abs(ha), h_terms));
    }
  }
  return r;
}

}  // namespace polarphi::harness
