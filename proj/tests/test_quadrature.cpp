#include <array>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "polarphi/errors.hpp"
#include "polarphi/quadrature.hpp"

using namespace polarphi;

TEST_CASE("polynomials within the Gauss degree close on one panel") {
  const auto f = [](double t) { return std::array<double, 2>{std::pow(t, 12), 3 * t * t - 1}; };
  const auto r = quad::integrate<2>(f, -1.0, 1.0, {}, 1e-14);
  CHECK(r.panels == 1);
  CHECK(r.value[0] == doctest::Approx(2.0 / 13.0).epsilon(1e-14));
  CHECK(std::abs(r.value[1]) < 1e-15);

  // Degree 22 is exact for the Kronrod rule but not for G7, so the estimate
  // forces splitting; the value stays exact.
  const auto g = [](double t) { return std::array<double, 1>{std::pow(t, 22)}; };
  const auto h = quad::integrate<1>(g, -1.0, 1.0, {}, 1e-14);
  CHECK(h.panels > 1);
  CHECK(h.value[0] == doctest::Approx(2.0 / 23.0).epsilon(1e-14));
}

TEST_CASE("endpoint singularity and kinks") {
  // ∫_0^1 sqrt(1-t²) = π/4: square-root behaviour at t = 1.
  const auto disk = [](double t) { return std::array<double, 1>{std::sqrt((1 - t) * (1 + t))}; };
  const auto r = quad::integrate<1>(disk, 0.0, 1.0, {}, 1e-12);
  CHECK(std::abs(r.value[0] - std::numbers::pi / 4) < 1e-12);

  // |t - 1/3| with and without the breakpoint.
  const auto kink = [](double t) { return std::array<double, 1>{std::abs(t - 1.0 / 3.0)}; };
  const double exact = (1.0 / 9.0 + 4.0 / 9.0) / 2.0;
  const auto split = quad::integrate<1>(kink, 0.0, 1.0, {1.0 / 3.0}, 1e-13);
  CHECK(split.panels == 2);
  CHECK(std::abs(split.value[0] - exact) < 1e-14);
  const auto blind = quad::integrate<1>(kink, 0.0, 1.0, {}, 1e-11);
  CHECK(blind.panels > 2);
  CHECK(std::abs(blind.value[0] - exact) < 1e-11);
}

TEST_CASE("non-convergence reports the achieved error") {
  const auto wild = [](double t) { return std::array<double, 1>{std::pow(t, -0.9)}; };
  try {
    quad::integrate<1>(wild, 0.0, 1.0, {}, 1e-12, 50);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.achieved() > 1e-15);
  }
}
