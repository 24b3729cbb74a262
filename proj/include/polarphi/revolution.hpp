#pragma once

// Bodies of revolution about e1,
//
//     K = {(t, x) : |t| <= 1, |x| <= r1(t)},  x in R^{n-1},
//
// with r1 even, concave and r1(0) = 1. The polar is again a revolution body
// with profile r2(s) = min_t (1 - ts) / r1(t).

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace polarphi::revolution {

// A radial profile on [-1, 1] as seen by the integrators and the polar map.
struct Profile {
  std::function<double(double)> r;
  double edge_value = 0.0;  // r(±1)
  double edge_slope = 0.0;  // |r'(1-)|, +inf for a vertical tangent
  std::vector<double> kinks;  // interior points where r is not smooth
};

class RevolutionProfile {
 public:
  enum class Kind { ball, cylinder, cone, pball, grid };

  // "ball" | "cylinder" | "cone" | "pball:<P>"
  static RevolutionProfile named(const std::string& spec);
  // Knots (t, r) with t strictly increasing from -1 to 1. Rejects profiles
  // that are not even, not concave (slack 1e-12), have |r(0) - 1| > 1e-12
  // or negative values.
  static RevolutionProfile grid(std::vector<std::pair<double, double>> knots);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return P_; }  // pball only; +inf allowed
  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }
  // Canonical name for analytic kinds; "grid:K" (K knots) for grids.
  std::string name() const;

  double operator()(double t) const;
  Profile evaluator() const;

  friend bool operator==(const RevolutionProfile&, const RevolutionProfile&) = default;

 private:
  RevolutionProfile() = default;

  Kind kind_ = Kind::ball;
  double P_ = 2.0;
  std::vector<std::pair<double, double>> knots_;
};

struct Settings {
  double quad_abs_tol = 1e-11;
  double bracket = 1e-12;  // golden-section bracket width
  double bound_slack = 1e-10;
  double hensley_slack = 1e-9;
  double santalo_slack = 1e-9;
};

// r2(s) = min over t with r1(t) > 0 of (1 - ts)/r1(t), by golden-section
// search (the objective is quasi-convex in t). Throws DomainError when
// r1 vanishes near 0.
Profile polar_profile(const Profile& r1, const Settings& s = {});

// Golden-section evaluation of the polar profile at one point.
double polar_value(const Profile& r1, double s, const Settings& set = {});

// max_t ts + r1(t)|y|: the support function of K at (s, y), which is also
// the gauge of K° there.
double support(const Profile& r1, double s, double y_norm, const Settings& set = {});

struct Moments {
  double m0 = 0.0;     // ∫ r^{n-1}
  double m2 = 0.0;     // ∫ t² r^{n-1}
  double mplus = 0.0;  // ∫ r^{n+1}
};

Moments profile_integrals(const Profile& r, int n, const Settings& s = {});

struct RevolutionReport {
  int dim = 0;
  double phi = 0.0;
  double first_summand = 0.0;
  double second_summand = 0.0;
  double second_summand_bound = 0.0;  // φ(B_2^{n-1}) = (n-1)/(n+1)²
  double hensley_product_sq = 0.0;    // |K̂ ∩ e1⊥|² ∫_K̂ t², K̂ of volume 1
  double santalo_ratio = 0.0;         // |K||K°| / |B_2^n|²
  double conjecture_bound = 0.0;      // n/(n+2)²
  double n_phi = 0.0;                 // reported only
  double n2_first_summand = 0.0;      // reported only
  Moments primal;
  Moments polar;
};

RevolutionReport phi_revolution(const RevolutionProfile& r1, int n, const Settings& s = {});
RevolutionReport phi_revolution(const Profile& r1, int n, const Settings& s = {});

// phi_revolution plus the asserted bounds: second summand, the Hensley window
// [1/12, 1/2], Blaschke–Santaló and φ <= n/(n+2)². Throws InvariantViolation
// naming every failed check.
RevolutionReport decomposition_report(const RevolutionProfile& r1, int n, const Settings& s = {});

}  // namespace polarphi::revolution
