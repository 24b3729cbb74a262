#include "polarphi/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "polarphi/errors.hpp"
#include "polarphi/specfun.hpp"

namespace polarphi::exact {
namespace {

using specfun::log_beta;
using specfun::log_gamma;

const double kLn2 = std::numbers::ln2;

void require_dim(int n, const char* fn) {
  if (n < 1) throw DomainError(std::string(fn) + ": dimension must be >= 1, got " + std::to_string(n));
}

double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_moment2_formula(int n, Exponent p) {
  if (p.is_infinite()) return n * kLn2 - std::log(3.0);
  const double pv = p.value();
  return n * kLn2 - n * std::log(pv) + log_gamma(3.0 / pv) + (n - 1) * log_gamma(1.0 / pv) -
         log_gamma(1.0 + (n + 2) / pv);
}

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

// The second-moment formula is not derived from the product rule, so it is
// checked against the moment recursion before first use: by unconditionality
// I(B_p^n) = n · M2(p) · M2(q).
void moment2_self_test() {
  const Tolerances tol;
  struct Known {
    int n;
    double p;
    double value;
  };
  const Known known[] = {{1, 1.0, 2.0 / 3.0},
                         {2, 2.0, std::numbers::pi / 4.0},
                         {3, HUGE_VAL, 8.0 / 3.0}};
  for (const auto& k : known) {
    const double got = std::exp(log_moment2_formula(k.n, Exponent{k.p}));
    if (!close_rel(got, k.value, tol.exact_rel)) {
      throw InvariantViolation("pball_moment2 self test failed at n=" + std::to_string(k.n));
    }
  }
  const std::pair<int, double> cases[] = {{2, 1.5}, {3, 3.0}, {5, 1.25}, {8, 8.0}, {13, 2.5}};
  for (auto [n, pv] : cases) {
    const Exponent p{pv};
    const double log_i = phi_via_moments(n, p).log_cross_integral;
    const double log_from_m2 =
        std::log(static_cast<double>(n)) + log_moment2_formula(n, p) + log_moment2_formula(n, p.dual());
    if (std::abs(log_i - log_from_m2) > tol.cross_path_rel) {
      throw InvariantViolation("pball_moment2 self test disagrees with the moment recursion at n=" +
                               std::to_string(n));
    }
  }
}

}  // namespace

double log_f_factor(double y1, double y2, Exponent p) {
  if (!(y1 > 0.0) || !std::isfinite(y2) || !(y1 < y2)) {
    throw DomainError("f_factor: requires 0 < y1 < y2, got y1=" + std::to_string(y1) +
                      " y2=" + std::to_string(y2));
  }
  if (p.is_endpoint()) {
    // (y1+2) y2 Γ(y1+2) Γ(y2) / (y1 (y2+2) Γ(y2+2) Γ(y1)) = (y1+1)(y1+2)/((y2+1)(y2+2))
    return std::log1p(y1) + std::log(y1 + 2.0) - std::log1p(y2) - std::log(y2 + 2.0);
  }
  const double pv = p.value();
  const double qv = p.dual().value();
  return 2.0 * (std::log(y1 + 2.0) + std::log(y2) - std::log(y1) - std::log(y2 + 2.0)) +
         log_gamma((y1 + 2.0) / pv) + log_gamma((y1 + 2.0) / qv) + log_gamma(y2 / pv) +
         log_gamma(y2 / qv) - log_gamma((y2 + 2.0) / pv) - log_gamma((y2 + 2.0) / qv) -
         log_gamma(y1 / pv) - log_gamma(y1 / qv);
}

double f_factor(double y1, double y2, Exponent p) { return std::exp(log_f_factor(y1, y2, p)); }

double log_pball_volume(int n, Exponent p) {
  require_dim(n, "pball_volume");
  if (p.is_infinite()) return n * kLn2;
  const double pv = p.value();
  // |A ×_p [-1,1]| = (a/(p(a+1))) |A| · 2 · B(1/p, a/p) with a = dim A
  double log_vol = kLn2;
  for (int k = 2; k <= n; ++k) {
    const double a = k - 1;
    log_vol += kLn2 + std::log(a / (pv * k)) + log_beta(1.0 / pv, a / pv);
  }
  return log_vol;
}

double pball_volume(int n, Exponent p) { return std::exp(log_pball_volume(n, p)); }

double log_pball_volume_closed_form(int n, Exponent p) {
  require_dim(n, "pball_volume");
  if (p.is_infinite()) return n * kLn2;
  const double pv = p.value();
  return n * kLn2 + n * log_gamma(1.0 + 1.0 / pv) - log_gamma(1.0 + n / pv);
}

PhiBreakdown phi_pball(int n, Exponent p) {
  require_dim(n, "phi_pball");
  // f is symmetric under p <-> q, so ∞ runs through the p = 1 branch.
  const Exponent run = p.is_infinite() ? Exponent{1.0} : p;

  double phi = 1.0 / 9.0;
  for (int k = 2; k <= n; ++k) {
    phi = f_factor(k - 1, k, run) * phi + f_factor(1, k, run) / 9.0;
  }

  PhiBreakdown out;
  out.dim = n;
  out.phi = phi;
  out.log_volume = log_pball_volume(n, p);
  out.log_polar_volume = log_pball_volume(n, p.dual());
  out.log_cross_integral = std::log(phi) + out.log_volume + out.log_polar_volume;
  out.volume = std::exp(out.log_volume);
  out.polar_volume = std::exp(out.log_polar_volume);
  out.cross_integral = std::exp(out.log_cross_integral);
  return out;
}

PhiBreakdown phi_via_moments(int n, Exponent p) {
  require_dim(n, "phi_via_moments");
  if (p.is_endpoint()) {
    throw DomainError("phi_via_moments: p must lie strictly between 1 and inf");
  }
  const double pv = p.value();
  const double qv = p.dual().value();
  const double log_interval_cross = std::log(4.0 / 9.0);  // ∫∫ t²s² over [-1,1]²
  const double log_interval_vol_product = 2.0 * kLn2;

  double log_vol = kLn2;
  double log_polar_vol = kLn2;
  double log_cross = log_interval_cross;
  // Step: A = B_p^a, B = [-1,1] (m = 1), K = A ×_p B.
  for (int k = 2; k <= n; ++k) {
    const double a = k - 1;
    const double m = 1.0;
    const double common = -std::log(pv) - std::log(qv) - 2.0 * std::log(a + m + 2.0);
    const double from_a = log_interval_vol_product + 2.0 * std::log(m) + 2.0 * std::log(a + 2.0) +
                          common + log_beta(m / pv, (a + 2.0) / pv) +
                          log_beta(m / qv, (a + 2.0) / qv) + log_cross;
    const double from_b = log_vol + log_polar_vol + 2.0 * std::log(a) + 2.0 * std::log(m + 2.0) +
                          common + log_beta(a / pv, (m + 2.0) / pv) +
                          log_beta(a / qv, (m + 2.0) / qv) + log_interval_cross;
    log_cross = log_sum_exp(from_a, from_b);
    log_vol += kLn2 + std::log(a * m / (pv * (a + m))) + log_beta(m / pv, a / pv);
    log_polar_vol += kLn2 + std::log(a * m / (qv * (a + m))) + log_beta(m / qv, a / qv);
  }

  PhiBreakdown out;
  out.dim = n;
  out.log_volume = log_vol;
  out.log_polar_volume = log_polar_vol;
  out.log_cross_integral = log_cross;
  out.phi = std::exp(log_cross - log_vol - log_polar_vol);
  out.volume = std::exp(log_vol);
  out.polar_volume = std::exp(log_polar_vol);
  out.cross_integral = std::exp(log_cross);
  return out;
}

double log_pball_moment2(int n, Exponent p) {
  require_dim(n, "pball_moment2");
  static const bool verified = (moment2_self_test(), true);
  (void)verified;
  return log_moment2_formula(n, p);
}

double pball_moment2(int n, Exponent p) { return std::exp(log_pball_moment2(n, p)); }

double phi_combine(double phi_a, int n, double phi_b, int m, Exponent p) {
  require_dim(n, "phi_combine");
  require_dim(m, "phi_combine");
  if (!(phi_a >= 0.0) || !(phi_b >= 0.0)) {
    throw DomainError("phi_combine: phi values must be nonnegative");
  }
  return f_factor(n, n + m, p) * phi_a + f_factor(m, n + m, p) * phi_b;
}

double phi_euclidean_ball(int n) {
  require_dim(n, "phi_euclidean_ball");
  const double d = n + 2.0;
  return n / (d * d);
}

double log_euclidean_ball_volume(int n) {
  require_dim(n, "euclidean_ball_volume");
  return 0.5 * n * std::log(std::numbers::pi) - log_gamma(1.0 + 0.5 * n);
}

IsotropyReport inequality_report(int n, Exponent p, const Tolerances& tol) {
  const PhiBreakdown br = phi_pball(n, p);
  const Exponent q = p.dual();
  const double dn = n;

  const double log_prod = br.log_volume + br.log_polar_volume;
  const double log_ball = log_euclidean_ball_volume(n);

  IsotropyReport r;
  r.dim = n;
  r.p = p;
  r.phi = br.phi;
  r.n_phi = dn * br.phi;
  r.L_sq = std::exp(log_pball_moment2(n, p) - (dn + 2.0) / dn * br.log_volume);
  r.L_polar_sq = std::exp(log_pball_moment2(n, q) - (dn + 2.0) / dn * br.log_polar_volume);
  r.santalo_product = std::exp(log_prod);
  r.santalo_bound = std::exp(2.0 * log_ball);
  r.lower_bound = dn * std::exp(2.0 / dn * log_prod - 4.0 / dn * log_ball) / ((dn + 2.0) * (dn + 2.0));

  const double isotropic_phi = dn * std::exp(2.0 / dn * log_prod) * r.L_sq * r.L_polar_sq;
  r.identity_residual = std::abs(br.phi - isotropic_phi);

  r.santalo_holds =
      r.santalo_product <= r.santalo_bound + tol.inequality_abs * std::min(1.0, r.santalo_bound);
  r.chain_holds = r.lower_bound <= br.phi + tol.inequality_abs * std::min(1.0, br.phi);
  r.identity_holds = r.identity_residual <= tol.identity_rel * br.phi;
  return r;
}

}  // namespace polarphi::exact
