#pragma once

// Closed-form evaluation of
//
//     φ(K) = 1/(|K||K°|) ∫_K ∫_K° <x,y>² dy dx
//
// for ℓ_p unit balls and ℓ_p-sums of bodies, built from the product rule
//
//     φ(A ×_p B) = f(n, n+m, p) φ(A) + f(m, n+m, p) φ(B)
//
// and, independently, from the volume and second-moment propagation through
// A ×_p [-1,1]. Every Γ ratio is formed in log space.

#include "polarphi/exponent.hpp"

namespace polarphi::exact {

struct Tolerances {
  double exact_rel = 1e-12;        // recursions vs closed forms
  double cross_path_rel = 1e-10;   // f-recursion vs moment recursion
  double identity_rel = 1e-10;     // isotropic identity, relative to φ
  double inequality_abs = 1e-10;   // Blaschke–Santaló and the lower chain
};

struct PhiBreakdown {
  int dim = 0;
  double volume = 0.0;
  double polar_volume = 0.0;
  double cross_integral = 0.0;  // ∫_K ∫_K° <x,y>²
  double phi = 0.0;
  // Logarithms of the three extensive quantities; these stay finite where the
  // plain values under/overflow (n in the hundreds).
  double log_volume = 0.0;
  double log_polar_volume = 0.0;
  double log_cross_integral = 0.0;
};

struct IsotropyReport {
  int dim = 0;
  Exponent p = Exponent::infinity();
  double phi = 0.0;
  double L_sq = 0.0;         // L_K² of |K|^{-1/n} K
  double L_polar_sq = 0.0;   // L_{K°}²
  double santalo_product = 0.0;
  double santalo_bound = 0.0;  // |B_2^n|²
  double lower_bound = 0.0;    // n (|K||K°|)^{2/n} / ((n+2)² |B_2^n|^{4/n})
  double identity_residual = 0.0;
  double n_phi = 0.0;          // n·φ, reported only

  bool santalo_holds = false;
  bool chain_holds = false;
  bool identity_holds = false;
  bool passed() const noexcept { return santalo_holds && chain_holds && identity_holds; }
};

// Product-rule weight f(y1, y2, p); requires 0 < y1 < y2.
double f_factor(double y1, double y2, Exponent p);
double log_f_factor(double y1, double y2, Exponent p);

// φ(B_p^n) through B_p^k = B_p^{k-1} ×_p [-1,1] and the product rule.
PhiBreakdown phi_pball(int n, Exponent p);

// φ(B_p^n) through the (|B_p^k|, |B_q^k|, I(B_p^k)) recursion. p must be finite
// and strictly greater than 1.
PhiBreakdown phi_via_moments(int n, Exponent p);

double pball_volume(int n, Exponent p);
double log_pball_volume(int n, Exponent p);
// 2^n Γ(1+1/p)^n / Γ(1+n/p), the textbook formula used as a cross-check.
double log_pball_volume_closed_form(int n, Exponent p);

// ∫_{B_p^n} x_1² dx. Guarded by a one-time self test against the moment
// recursion; throws InvariantViolation if that test ever fails.
double pball_moment2(int n, Exponent p);
double log_pball_moment2(int n, Exponent p);

double phi_combine(double phi_a, int n, double phi_b, int m, Exponent p);

IsotropyReport inequality_report(int n, Exponent p, const Tolerances& tol = {});

// φ(B_2^n) = n/(n+2)².
double phi_euclidean_ball(int n);
double log_euclidean_ball_volume(int n);

}  // namespace polarphi::exact
