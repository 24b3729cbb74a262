// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polarphi/bodies.hpp"
#include "polarphi/errors.hpp"
#include "polarphi/exact.hpp"
#include "polarphi/harness.hpp"
#include "polarphi/revolution.hpp"
#include "polarphi/sampler.hpp"
#include "polarphi/specfun.hpp"
#include "profiles.hpp"

using namespace polarphi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const std::vector<int> theorem_dims = {2, 3, 5, 10, 20};

Outcome exact_value() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 50; ++n) {
    const double err = rel_err(exact::phi_pball(n, Exponent{2.0}).phi, n / double((n + 2) * (n + 2)));
    worst = std::max(worst, err);
    o.require(err <= 1e-12, "n=" + std::to_string(n) + " rel err " + fmt("%.3g", err));
  }
  if (o.pass) o.detail = "worst rel err " + fmt("%.3g", worst);
  return o;
}

Outcome main_theorem() {
  Outcome o;
  const auto grid = harness::default_p_grid();
  int points = 0;
  for (int n : theorem_dims) {
    const double bound = n / double((n + 2) * (n + 2));
    const double phi2 = exact::phi_pball(n, Exponent{2.0}).phi;
    double best = -1.0;
    Exponent arg = Exponent{1.0};
    for (const Exponent& p : grid) {
      const double phi = exact::phi_pball(n, p).phi;
      ++points;
      o.require(phi <= bound + 1e-12, "n=" + std::to_string(n) + " p=" + p.to_string() + " above n/(n+2)^2");
      if (!(p == Exponent{2.0})) {
        o.require(phi2 - phi > 0.0, "n=" + std::to_string(n) + " p=" + p.to_string() + " not below phi(2)");
      }
      if (phi > best) best = phi, arg = p;
    }
    o.require(arg == Exponent{2.0}, "n=" + std::to_string(n) + " argmax at p=" + arg.to_string());
  }
  if (o.pass) o.detail = std::to_string(points) + " (n,p) points, argmax p=2 throughout";
  return o;
}

Outcome cross_path() {
  Outcome o;
  double worst_phi = 0.0, worst_vol = 0.0;
  for (int n = 2; n <= 20; ++n) {
    for (double pv : {1.25, 1.5, 3.0, 8.0}) {
      const Exponent p{pv};
      const double err = rel_err(exact::phi_via_moments(n, p).phi, exact::phi_pball(n, p).phi);
      worst_phi = std::max(worst_phi, err);
      o.require(err <= 1e-10, "moments n=" + std::to_string(n) + " p=" + p.to_string());
    }
  }
  for (int n = 1; n <= 20; ++n) {
    for (const Exponent& p : harness::default_p_grid()) {
      const double err =
          std::abs(std::expm1(exact::log_pball_volume(n, p) - exact::log_pball_volume_closed_form(n, p)));
      worst_vol = std::max(worst_vol, err);
      o.require(err <= 1e-12, "volume n=" + std::to_string(n) + " p=" + p.to_string());
    }
  }
  if (o.pass) o.detail = "phi " + fmt("%.3g", worst_phi) + ", volume " + fmt("%.3g", worst_vol);
  return o;
}

Outcome duality_endpoints() {
  Outcome o;
  double worst = 0.0;
  for (int n : theorem_dims) {
    for (const Exponent& p : harness::default_p_grid()) {
      const double err = rel_err(exact::phi_pball(n, p).phi, exact::phi_pball(n, p.dual()).phi);
      worst = std::max(worst, err);
      o.require(err <= 1e-12, "n=" + std::to_string(n) + " p=" + p.to_string());
    }
  }
  double worst_f = 0.0;
  for (auto [y1, y2] : {std::pair{1.0, 2.0}, {0.5, 3.0}, {2.0, 5.0}, {3.0, 10.0}, {10.0, 40.0}, {1.0, 100.0}}) {
    const double err = std::abs(exact::f_factor(y1, y2, Exponent{1.0 + 1e-6}) - exact::f_factor(y1, y2, Exponent{1.0}));
    worst_f = std::max(worst_f, err);
    o.require(err <= 1e-5, "f endpoint y1=" + fmt("%g", y1) + " y2=" + fmt("%g", y2));
  }
  if (o.pass) o.detail = "duality " + fmt("%.3g", worst) + ", f endpoint " + fmt("%.3g", worst_f);
  return o;
}

// Each cell gets a fixed seed; a failing cell is rerun once with seed + retry_offset.
constexpr std::uint64_t retry_offset = 0x9e3779b97f4a7c15ULL;

Outcome monte_carlo() {
  struct Cell {
    std::string label;
    bodies::BodyPtr body;
    double exact;
    std::uint64_t seed;
  };
  const auto pb = [](int n, double p) { return bodies::make_pball(n, Exponent{p}); };
  const auto shear = bodies::make_linear((Eigen::MatrixXd(2, 2) << 1, 1, 0, 1).finished(), pb(2, 2.0));
  const std::vector<Cell> cells = {
      {"B_1^2", pb(2, 1.0), exact::phi_pball(2, Exponent{1.0}).phi, 5001},
      {"B_2^2", pb(2, 2.0), exact::phi_pball(2, Exponent{2.0}).phi, 5002},
      {"B_1.5^3", pb(3, 1.5), exact::phi_pball(3, Exponent{1.5}).phi, 5003},
      {"B_3^4", pb(4, 3.0), exact::phi_pball(4, Exponent{3.0}).phi, 5004},
      {"shear B_2^2", shear, 0.125, 5005},
      {"simplex 2", bodies::make_simplex(2), 2.0 / 16.0, 5006},
      {"simplex 3", bodies::make_simplex(3), 3.0 / 25.0, 5007},
  };
  Outcome o;
  std::string notes;
  double worst_z = 0.0;
  for (const auto& c : cells) {
    auto e = sampler::estimate_phi(c.body, 200000, c.seed);
    double z = std::abs(e.estimate - c.exact) / e.std_error;
    if (z > 4.0) {
      notes += " retried " + c.label + " (z=" + fmt("%.2f", z) + ")";
      e = sampler::estimate_phi(c.body, 200000, c.seed + retry_offset);
      z = std::abs(e.estimate - c.exact) / e.std_error;
    }
    worst_z = std::max(worst_z, z);
    o.require(z <= 4.0, c.label + " off by " + fmt("%.2f", z) + " sigma");
  }
  if (o.pass) o.detail = "7 cells, worst " + fmt("%.2f", worst_z) + " sigma" + notes;
  return o;
}

Outcome harness_suite() {
  Outcome o;
  const auto xs = harness::default_x_grid();
  const auto ys = harness::default_y_grid();
  const auto pairs = harness::default_pair_grid();
  const auto mono = harness::monotonicity_report(xs, ys, pairs);
  o.require(mono.violations.empty(), "monotonicity: " + std::to_string(mono.violations.size()) + " violations");
  for (int n : theorem_dims) {
    const auto s = harness::scan_p_argmax(n, harness::default_p_grid());
    o.require(s.passed(), "scan n=" + std::to_string(n));
  }
  const auto ids = harness::derivative_identity_report(xs, ys, pairs);
  o.require(ids.passed() && ids.residual_tolerance <= 1e-5,
            "derivative identities residual " + fmt("%.3g", ids.max_residual));
  const auto conv = harness::convexity_report(harness::default_convexity_grid());
  o.require(conv.passed() && conv.residual_tolerance <= 1e-5, "convexity residual " + fmt("%.3g", conv.max_residual));
  if (o.pass) {
    o.detail = "identity residual " + fmt("%.3g", std::max(ids.max_residual, mono.max_residual)) +
               ", convexity residual " + fmt("%.3g", conv.max_residual);
  }
  return o;
}

Outcome revolution_suite() {
  using revolution::RevolutionProfile;
  Outcome o;
  for (int n : {2, 3, 5}) {
    const double err = rel_err(revolution::phi_revolution(RevolutionProfile::named("ball"), n).phi,
                               n / double((n + 2) * (n + 2)));
    o.require(err <= 1e-8, "ball n=" + std::to_string(n));
  }
  o.require(std::abs(revolution::phi_revolution(RevolutionProfile::named("cylinder"), 2).phi - 1.0 / 9.0) <= 1e-10,
            "cylinder n=2");
  for (double P : {1.5, 3.0}) {
    for (int n : {3, 4, 5}) {
      const double want = exact::phi_combine(exact::phi_euclidean_ball(n - 1), n - 1, 1.0 / 9.0, 1, Exponent{P});
      const double got = revolution::phi_revolution(RevolutionProfile::named("pball:" + fmt("%g", P)), n).phi;
      o.require(rel_err(got, want) <= 1e-6, "pball:" + fmt("%g", P) + " n=" + std::to_string(n));
    }
  }

  std::vector<RevolutionProfile> profiles;
  for (const char* name : {"ball", "cylinder", "cone", "pball:1.5", "pball:3", "pball:1", "pball:inf"}) {
    profiles.push_back(RevolutionProfile::named(name));
  }
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 10; ++i) profiles.push_back(testprof::random_grid(rng));

  double worst_inv = 0.0;
  for (const auto& prof : profiles) {
    const auto r1 = prof.evaluator();
    const double err = testprof::sup_diff(r1, revolution::polar_profile(revolution::polar_profile(r1)));
    worst_inv = std::max(worst_inv, err);
    o.require(err <= 1e-8, "polar involution " + prof.name());
    for (int n : {2, 3, 5, 8}) {
      try {
        const auto rep = revolution::decomposition_report(prof, n);
        o.require(rep.second_summand <= rep.second_summand_bound + 1e-10, "second summand " + prof.name());
        o.require(rep.hensley_product_sq >= 1.0 / 12 - 1e-9 && rep.hensley_product_sq <= 0.5 + 1e-9,
                  "hensley window " + prof.name());
      } catch (const InvariantViolation& e) {
        o.require(false, e.what());
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(profiles.size()) + " profiles, involution sup err " + fmt("%.3g", worst_inv);
  }
  return o;
}

Outcome inequality_reports() {
  Outcome o;
  int cells = 0;
  for (int n : {2, 3, 4, 5, 10, 20, 50, 100}) {
    for (const Exponent& p : harness::default_p_grid()) {
      const auto r = exact::inequality_report(n, p);
      ++cells;
      o.require(r.santalo_holds, "Santalo n=" + std::to_string(n) + " p=" + p.to_string());
      o.require(r.chain_holds, "lower chain n=" + std::to_string(n) + " p=" + p.to_string());
      o.require(r.identity_residual <= 1e-10 * r.phi, "isotropy n=" + std::to_string(n) + " p=" + p.to_string());
    }
  }
  if (o.pass) o.detail = std::to_string(cells) + " (n,p) cells";
  return o;
}

Outcome specfun_accuracy() {
  using specfun::PolygammaOrder;
  Outcome o;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> logx(std::log(0.01), std::log(100.0));
  std::uniform_int_distribution<int> order(0, 3);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int k = order(rng);
    const double x = std::exp(logx(rng));
    const double err = rel_err(specfun::polygamma(PolygammaOrder{k}, x), oracle::polygamma_quadrature(k, x));
    worst = std::max(worst, err);
    o.require(err <= 1e-8, "k=" + std::to_string(k) + " x=" + fmt("%.6g", x));
  }
  const double at_one[4] = {-oracle::euler_gamma_series(), oracle::zeta_series(2), -2.0 * oracle::zeta_series(3),
                            std::pow(std::numbers::pi, 4) / 15.0};
  for (int k = 0; k < 4; ++k) {
    o.require(rel_err(specfun::polygamma(PolygammaOrder{k}, 1.0), at_one[k]) <= 1e-10,
              "series oracle k=" + std::to_string(k));
  }
  if (o.pass) o.detail = "worst rel err vs quadrature " + fmt("%.3g", worst);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no runtime requirement
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact value phi(B_2^n) = n/(n+2)^2", 1.0, exact_value},
      {2, "p = 2 maximizes phi over the p grid", 5.0, main_theorem},
      {3, "cross-path and volume recursions", 0.0, cross_path},
      {4, "duality and endpoint continuity", 0.0, duality_endpoints},
      {5, "Monte Carlo agreement", 30.0, monte_carlo},
      {6, "harness suite", 0.0, harness_suite},
      {7, "revolution suite", 0.0, revolution_suite},
      {8, "inequality reports", 0.0, inequality_reports},
      {9, "special function accuracy", 0.0, specfun_accuracy},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; runtime " + fmt("%.2f", secs) + " s over budget " + fmt("%.0f", c.budget_s) + " s";
    }
    std::printf("criterion %d %s  %s  [%s, %.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
