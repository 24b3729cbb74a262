#pragma once

// Globally adaptive Gauss–Kronrod (7/15) quadrature for vector-valued
// integrands. Known kinks are passed as breakpoints so no panel straddles one.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "polarphi/errors.hpp"

namespace polarphi::quad {

template <std::size_t N>
struct Result {
  std::array<double, N> value{};
  double error = 0.0;  // max over components of the summed |K15 - G7|
  std::size_t panels = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
  double a, b;
  std::array<double, N> value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <std::size_t N, class F>
Panel<N> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<double, N> k{}, g{};
  const auto fc = f(c);
  for (std::size_t j = 0; j < N; ++j) {
    k[j] = kronrod_weights[7] * fc[j];
    g[j] = gauss_weights[3] * fc[j];
  }
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = h * kronrod_nodes[i];
    const auto lo = f(c - dx), hi = f(c + dx);
    for (std::size_t j = 0; j < N; ++j) {
      const double s = lo[j] + hi[j];
      k[j] += kronrod_weights[i] * s;
      if (i % 2 == 1) g[j] += gauss_weights[i / 2] * s;
    }
  }
  Panel<N> p{a, b, {}, 0.0};
  for (std::size_t j = 0; j < N; ++j) {
    p.value[j] = k[j] * h;
    p.error = std::max(p.error, std::abs((k[j] - g[j]) * h));
  }
  return p;
}

}  // namespace detail

// ∫_a^b f over [a,b] split at `breaks`; stops when the summed error estimate is
// at or below abs_tol. Throws ConvergenceError carrying the achieved estimate.
template <std::size_t N, class F>
Result<N> integrate(const F& f, double a, double b, std::vector<double> breaks, double abs_tol,
                    std::size_t max_panels = 20000) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::priority_queue<detail::Panel<N>> heap;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i] < a || breaks[i + 1] > b) continue;
    auto p = detail::gk15<N>(f, breaks[i], breaks[i + 1]);
    total_error += p.error;
    heap.push(p);
  }

  while (!(total_error <= abs_tol)) {
    if (heap.size() >= max_panels) {
      throw ConvergenceError("quadrature: error estimate " + std::to_string(total_error) +
                                 " above tolerance after " + std::to_string(heap.size()) + " panels",
                             total_error);
    }
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("quadrature: panel width at machine resolution", total_error);
    }
    heap.pop();
    auto left = detail::gk15<N>(f, worst.a, mid);
    auto right = detail::gk15<N>(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Sum in ascending panel order so the result does not depend on heap layout.
  std::vector<detail::Panel<N>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  Result<N> r;
  for (const auto& p : panels) {
    for (std::size_t j = 0; j < N; ++j) r.value[j] += p.value[j];
  }
  r.error = total_error;
  r.panels = panels.size();
  return r;
}

}  // namespace polarphi::quad
