#include "polarphi/revolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "polarphi/errors.hpp"
#include "polarphi/exact.hpp"
#include "polarphi/exponent.hpp"
#include "polarphi/quadrature.hpp"

namespace polarphi::revolution {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double knot_tol = 1e-12;

// Minimizer search for a quasi-convex g on [a, b]; returns the smallest value
// seen, including both ends.
template <class G>
double golden_min(const G& g, double a, double b, double width) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double best = std::min(g(a), g(b));
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > width) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - invphi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + invphi * (b - a);
      gd = g(d);
    }
  }
  return std::min({best, gc, gd});
}

void require_dim(int n) {
  if (n < 2) throw DimensionError("revolution body needs n >= 2, got " + std::to_string(n));
}

}  // namespace

RevolutionProfile RevolutionProfile::named(const std::string& spec) {
  RevolutionProfile r;
  if (spec == "ball") {
    r.kind_ = Kind::ball;
  } else if (spec == "cylinder") {
    r.kind_ = Kind::cylinder;
  } else if (spec == "cone") {
    r.kind_ = Kind::cone;
  } else if (spec.rfind("pball:", 0) == 0) {
    r.kind_ = Kind::pball;
    r.P_ = Exponent::parse(spec.substr(6)).value();
  } else {
    throw DomainError("unknown profile '" + spec + "'");
  }
  return r;
}

RevolutionProfile RevolutionProfile::grid(std::vector<std::pair<double, double>> knots) {
  const std::size_t m = knots.size();
  if (m < 2) throw DomainError("profile grid needs at least two knots");
  if (knots.front().first != -1.0 || knots.back().first != 1.0) {
    throw DomainError("profile grid must span [-1, 1]");
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto [t, r] = knots[i];
    if (!std::isfinite(t) || !std::isfinite(r)) throw DomainError("profile grid has non-finite entries");
    if (i + 1 < m && !(knots[i + 1].first > t)) throw DomainError("profile grid t must increase strictly");
    if (r < 0.0) throw DomainError("profile grid has negative radius at t=" + std::to_string(t));
    const auto [tm, rm] = knots[m - 1 - i];
    if (std::abs(t + tm) > knot_tol || std::abs(r - rm) > knot_tol) {
      throw DomainError("profile grid is not even at t=" + std::to_string(t));
    }
  }
  for (std::size_t i = 0; i + 2 < m; ++i) {
    const double s0 = (knots[i + 1].second - knots[i].second) / (knots[i + 1].first - knots[i].first);
    const double s1 =
        (knots[i + 2].second - knots[i + 1].second) / (knots[i + 2].first - knots[i + 1].first);
    if (s1 > s0 + knot_tol) {
      throw DomainError("profile grid is not concave at t=" + std::to_string(knots[i + 1].first));
    }
  }
  RevolutionProfile r;
  r.kind_ = Kind::grid;
  r.knots_ = std::move(knots);
  const double centre = r(0.0);
  if (std::abs(centre - 1.0) > knot_tol) {
    throw DomainError("profile grid has r(0)=" + std::to_string(centre) +
                      "; rescale the radii by 1/r(0) so that r(0)=1");
  }
  return r;
}

std::string RevolutionProfile::name() const {
  switch (kind_) {
    case Kind::ball: return "ball";
    case Kind::cylinder: return "cylinder";
    case Kind::cone: return "cone";
    case Kind::pball: return "pball:" + (std::isinf(P_) ? Exponent::infinity() : Exponent{P_}).to_string();
    case Kind::grid: return "grid:" + std::to_string(knots_.size());
  }
  return "";
}

double RevolutionProfile::operator()(double t) const {
  const double a = std::abs(t);
  if (a > 1.0) return 0.0;
  switch (kind_) {
    case Kind::ball: return std::sqrt((1.0 - a) * (1.0 + a));
    case Kind::cylinder: return 1.0;
    case Kind::cone: return 1.0 - a;
    case Kind::pball:
      if (std::isinf(P_)) return 1.0;
      return std::pow(-std::expm1(P_ * std::log(a)), 1.0 / P_);
    case Kind::grid: {
      auto hi = std::lower_bound(knots_.begin(), knots_.end(), t,
                                 [](const auto& k, double v) { return k.first < v; });
      if (hi == knots_.begin()) return hi->second;
      if (hi == knots_.end()) return knots_.back().second;
      auto lo = hi - 1;
      const double w = (t - lo->first) / (hi->first - lo->first);
      return lo->second + w * (hi->second - lo->second);
    }
  }
  return 0.0;
}

Profile RevolutionProfile::evaluator() const {
  Profile p;
  const RevolutionProfile self = *this;
  p.r = [self](double t) { return self(t); };
  switch (kind_) {
    case Kind::ball: p.edge_value = 0.0; p.edge_slope = inf; break;
    case Kind::cylinder: p.edge_value = 1.0; p.edge_slope = 0.0; break;
    case Kind::cone: p.edge_value = 0.0; p.edge_slope = 1.0; p.kinks = {0.0}; break;
    case Kind::pball:
      p.edge_value = std::isinf(P_) ? 1.0 : 0.0;
      p.edge_slope = std::isinf(P_) ? 0.0 : (P_ == 1.0 ? 1.0 : inf);
      if (P_ == 1.0) p.kinks = {0.0};
      break;
    case Kind::grid: {
      const auto& k = knots_;
      p.edge_value = k.back().second;
      const std::size_t m = k.size();
      p.edge_slope = (k[m - 2].second - k[m - 1].second) / (k[m - 1].first - k[m - 2].first);
      for (std::size_t i = 1; i + 1 < m; ++i) p.kinks.push_back(k[i].first);
      break;
    }
  }
  return p;
}

double polar_value(const Profile& r1, double s, const Settings& set) {
  if (!(std::abs(s) <= 1.0)) throw DomainError("polar profile evaluated outside [-1,1]");
  if (std::abs(s) == 1.0) {
    // Limit of (1 - t)/r1(t) as t -> 1: 0 when r1(1) > 0, else 1/|r1'(1)|.
    return r1.edge_value > 0.0 ? 0.0 : 1.0 / r1.edge_slope;
  }
  const auto objective = [&](double t) {
    const double r = r1.r(t);
    return r > 0.0 ? (1.0 - t * s) / r : inf;
  };
  return golden_min(objective, -1.0, 1.0, set.bracket);
}

Profile polar_profile(const Profile& r1, const Settings& set) {
  if (!(r1.r(0.0) > 0.0)) throw DomainError("profile vanishes at 0; polar is unbounded");
  auto source = std::make_shared<const Profile>(r1);
  Profile p;
  p.r = [source, set](double s) { return polar_value(*source, s, set); };
  p.edge_value = r1.edge_value > 0.0 ? 0.0 : 1.0 / r1.edge_slope;
  p.edge_slope = r1.edge_value > 0.0 ? 1.0 / r1.edge_value : inf;
  return p;
}

double support(const Profile& r1, double s, double y_norm, const Settings& set) {
  const auto neg = [&](double t) { return -(t * s + r1.r(t) * y_norm); };
  return -golden_min(neg, -1.0, 1.0, set.bracket);
}

Moments profile_integrals(const Profile& r, int n, const Settings& set) {
  require_dim(n);
  // Evenness: integrate over [0, 1] and double. One evaluation of r per node
  // serves all three moments.
  const auto f = [&](double t) {
    const double v = std::max(0.0, r.r(t));
    const double lo = std::pow(v, n - 1);
    return std::array<double, 3>{lo, t * t * lo, lo * v * v};
  };
  std::vector<double> breaks;
  for (double k : r.kinks) {
    if (k > 0.0 && k < 1.0) breaks.push_back(k);
  }
  const auto res = quad::integrate<3>(f, 0.0, 1.0, breaks, 0.5 * set.quad_abs_tol);
  return {2.0 * res.value[0], 2.0 * res.value[1], 2.0 * res.value[2]};
}

RevolutionReport phi_revolution(const Profile& r1, int n, const Settings& set) {
  require_dim(n);
  RevolutionReport rep;
  rep.dim = n;
  rep.primal = profile_integrals(r1, n, set);
  rep.polar = profile_integrals(polar_profile(r1, set), n, set);
  const Moments& a = rep.primal;
  const Moments& b = rep.polar;
  const double denom = a.m0 * b.m0;
  rep.second_summand_bound = exact::phi_euclidean_ball(n - 1);
  rep.first_summand = a.m2 * b.m2 / denom;
  rep.second_summand = a.mplus * b.mplus / denom * rep.second_summand_bound;
  rep.phi = rep.first_summand + rep.second_summand;
  rep.hensley_product_sq = a.m2 / (a.m0 * a.m0 * a.m0);
  rep.santalo_ratio = std::exp(2.0 * exact::log_euclidean_ball_volume(n - 1) + std::log(a.m0) +
                               std::log(b.m0) - 2.0 * exact::log_euclidean_ball_volume(n));
  rep.conjecture_bound = exact::phi_euclidean_ball(n);
  rep.n_phi = n * rep.phi;
  rep.n2_first_summand = double(n) * n * rep.first_summand;
  return rep;
}

RevolutionReport phi_revolution(const RevolutionProfile& r1, int n, const Settings& set) {
  return phi_revolution(r1.evaluator(), n, set);
}

RevolutionReport decomposition_report(const RevolutionProfile& r1, int n, const Settings& set) {
  RevolutionReport rep = phi_revolution(r1, n, set);
  std::string failed;
  const auto check = [&](bool ok, const std::string& what) {
    if (!ok) failed += (failed.empty() ? "" : "; ") + what;
  };
  check(rep.second_summand <= rep.second_summand_bound + set.bound_slack,
        "second summand " + std::to_string(rep.second_summand) + " exceeds phi(B_2^{n-1})");
  check(rep.hensley_product_sq >= 1.0 / 12.0 - set.hensley_slack &&
            rep.hensley_product_sq <= 0.5 + set.hensley_slack,
        "Hensley product " + std::to_string(rep.hensley_product_sq) + " outside [1/12, 1/2]");
  check(rep.santalo_ratio <= 1.0 + set.santalo_slack,
        "volume product ratio " + std::to_string(rep.santalo_ratio) + " above 1");
  check(rep.phi <= rep.conjecture_bound + set.bound_slack,
        "CONJECTURE VIOLATED: phi " + std::to_string(rep.phi) + " > n/(n+2)^2");
  if (!failed.empty()) {
    const std::string label = r1.name();
    throw InvariantViolation("revolution profile " + label + ", n=" + std::to_string(n) + ": " + failed);
  }
  return rep;
}

}  // namespace polarphi::revolution
