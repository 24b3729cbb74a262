#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "polarphi/errors.hpp"
#include "polarphi/exact.hpp"
#include "polarphi/harness.hpp"
#include "polarphi/specfun.hpp"

using namespace polarphi;
using namespace polarphi::harness;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

void dump(const GridReport& r) {
  MESSAGE(r.description << ": max residual " << r.max_residual << ", violations " << r.violations.size());
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
    const auto& v = r.violations[i];
    std::string pt;
    for (double c : v.point) pt += std::to_string(c) + " ";
    MESSAGE("  " << v.check << " at " << pt << "value " << v.value);
  }
}

}  // namespace

TEST_CASE("f1_eval") {
  for (auto [y1, y2] : {std::pair{1.0, 2.0}, {0.3, 4.0}, {5.0, 9.0}}) {
    const double mid = (y1 + 2) * (y1 + 2) / ((y2 + 2) * (y2 + 2));
    CHECK(rel_err(f1_eval(0.5, y1, y2), mid) < 1e-13);
    const double ends = (y1 + 1) * (y1 + 2) / ((y2 + 1) * (y2 + 2));
    CHECK(rel_err(f1_eval(0.0, y1, y2), ends) < 1e-14);
    CHECK(f1_eval(0.0, y1, y2) == f1_eval(1.0, y1, y2));
    CHECK(f1_eval(0.0, y1, y2) < f1_eval(0.5, y1, y2));
    for (double x : default_x_grid()) {
      CHECK(std::abs(f1_eval(x, y1, y2) - f1_eval(1.0 - x, y1, y2)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(f1_eval(1.5, 1, 2), DomainError);
  CHECK_THROWS_AS(f1_eval(0.5, 2, 1), DomainError);
}

TEST_CASE("F_eval") {
  for (double y : {0.1, 1.0, 7.0, 50.0}) CHECK(F_eval(0.5, y) == 0.0);
  CHECK(F_eval(0.25, 2.0) == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK_THROWS_AS(F_eval(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(F_eval(0.3, -1.0), DomainError);

  // (log f1)' against F(x,y1) - F(x,y2), with an independent plain central difference.
  for (double x : {0.1, 0.3, 0.45, 0.7}) {
    const double y1 = 1.0, y2 = 3.0;
    const double h = 1e-5;
    const double fd = (log_f1_eval(x + h, y1, y2) - log_f1_eval(x - h, y1, y2)) / (2 * h);
    CHECK(rel_err(fd, F_eval(x, y1) - F_eval(x, y2)) < 1e-6);
  }
}

TEST_CASE("G_eval") {
  for (double y : {0.1, 2.0, 30.0}) CHECK(G_eval(0.5, y) == 0.0);
  const double g = G_eval(0.25, 2.0);
  CHECK(g < 0.0);
  const double h = 1e-5 * 2.0;
  const double fd = (F_eval(0.25, 2.0 + h) - F_eval(0.25, 2.0 - h)) / (2 * h);
  CHECK(rel_err(fd, g) < 1e-6);
  CHECK(G_eval(0.75, 2.0) > 0.0);
  CHECK(std::abs(G_eval(0.75, 2.0) + g) < 1e-10);
}

TEST_CASE("H_eval") {
  // 8ψ'(1) + 4ψ''(1) = 8ζ(2) - 8ζ(3)
  const double expected = 8.0 * oracle::zeta_series(2) - 8.0 * oracle::zeta_series(3);
  CHECK(rel_err(H_eval(0.5, 2.0), expected) < 1e-12);
  CHECK(H_eval(0.5, 2.0) == doctest::Approx(3.5430173095090572).epsilon(1e-12));
  for (double x : {0.01, 0.2, 0.4}) {
    for (double y : {0.3, 4.0}) {
      CHECK(std::abs(H_eval(x, y) - H_eval(1 - x, y)) <= 1e-10 * std::abs(H_eval(x, y)));
      const double h = 1e-5;
      const double fd = (G_eval(x + h * x, y) - G_eval(x - h * x, y)) / (2 * h * x);
      CHECK(rel_err(fd, H_eval(x, y + 2) - H_eval(x, y)) < 1e-6);
    }
  }
}

TEST_CASE("xsq_trigamma_convexity") {
  const double pi = std::numbers::pi;
  const double expected = 2 * pi * pi / 6 - 8 * oracle::zeta_series(3) + std::pow(pi, 4) / 15;
  CHECK(rel_err(xsq_trigamma_convexity(1.0), expected) < 1e-11);
  CHECK(xsq_trigamma_convexity(1.0) == doctest::Approx(0.16735231068652774).epsilon(1e-11));
  for (double z : default_convexity_grid()) CHECK(xsq_trigamma_convexity(z) > 0.0);
  const auto g = [](double z) { return z * z * specfun::trigamma(z); };
  for (double z : {0.5, 2.0, 10.0}) {
    CHECK(rel_err(second_derivative(g, z, 1e-2 * z), xsq_trigamma_convexity(z)) < 1e-5);
  }
}

TEST_CASE("default grids") {
  const auto x = default_x_grid();
  CHECK(x.size() == 101);
  CHECK(x.front() == doctest::Approx(1e-3));
  CHECK(x[50] == 0.5);
  const auto y = default_y_grid();
  CHECK(y.size() == 33);
  CHECK(y.front() == doctest::Approx(0.1));
  CHECK(y.back() == 50.0);
  const auto p = default_p_grid();
  CHECK(p.size() == 66);
  CHECK(p.front() == Exponent{1.0});
  CHECK(p.back().is_infinite());
  CHECK(std::find(p.begin(), p.end(), Exponent{2.0}) != p.end());
}

TEST_CASE("scan_p_argmax") {
  for (int n : {2, 3, 5, 10, 20}) {
    const auto r = scan_p_argmax(n, default_p_grid());
    dump(r);
    CHECK(r.passed());
    CHECK(r.p[r.argmax] == Exponent{2.0});
    CHECK(r.unimodal);
    CHECK(r.values.front() == doctest::Approx(r.values.back()).epsilon(1e-12));
  }
  const auto r3 = scan_p_argmax(3, default_p_grid());
  CHECK(r3.values[r3.argmax] == doctest::Approx(3.0 / 25.0).epsilon(1e-13));
  CHECK_THROWS_AS(scan_p_argmax(3, {Exponent{1.0}, Exponent{3.0}, Exponent::infinity()}), DomainError);
  // A near-tie with p = 2 is a violation, not a silent pass.
  const auto tie = scan_p_argmax(3, {Exponent{1.0}, Exponent{2.0}, Exponent{2.0 + 1e-9}, Exponent::infinity()});
  CHECK_FALSE(tie.passed());
}

TEST_CASE("monotonicity_report") {
  const auto r = monotonicity_report(default_x_grid(), default_y_grid(), default_pair_grid());
  dump(r);
  CHECK(r.passed());

  const auto f = monotonicity_report({0.3}, {0.5, 1, 2, 4, 8}, {});
  CHECK(f.passed());
  for (double y : {0.5, 1.0, 2.0, 4.0}) CHECK(F_eval(0.3, 2 * y) < F_eval(0.3, y));

  const auto single = monotonicity_report({0.25}, {1.0}, {{1.0, 2.0}});
  CHECK(single.passed());
}

TEST_CASE("derivative identities on default grids") {
  const auto r = derivative_identity_report(default_x_grid(), default_y_grid(), default_pair_grid());
  dump(r);
  CHECK(r.passed());
}

TEST_CASE("convexity and symmetry reports") {
  const auto c = convexity_report(default_convexity_grid());
  dump(c);
  CHECK(c.passed());
  const auto s = symmetry_report(default_x_grid(), default_y_grid(), default_pair_grid());
  dump(s);
  CHECK(s.passed());
}
