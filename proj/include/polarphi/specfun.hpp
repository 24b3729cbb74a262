#pragma once

// Real-argument special functions: lnΓ, ln B, ψ and its first three derivatives.
//
// All routines shift the argument upward with the functional recurrence and
// finish with the Bernoulli asymptotic series. Accuracy on x in [1e-2, 1e4] is
// around 1e-14 relative away from the zeros of lnΓ and ψ; below 1e-3 only about
// 1e-9 is promised because of pole amplification.

namespace polarphi::specfun {

class PolygammaOrder {
 public:
  static constexpr int kMax = 3;

  // Throws DomainError unless 0 <= k <= 3.
  explicit PolygammaOrder(int k);

  int value() const noexcept { return k_; }

 private:
  int k_;
};

double log_gamma(double x);
double log_beta(double a, double b);

double polygamma(PolygammaOrder k, double x);

inline double digamma(double x) { return polygamma(PolygammaOrder{0}, x); }
inline double trigamma(double x) { return polygamma(PolygammaOrder{1}, x); }
inline double tetragamma(double x) { return polygamma(PolygammaOrder{2}, x); }
inline double pentagamma(double x) { return polygamma(PolygammaOrder{3}, x); }

}  // namespace polarphi::specfun
