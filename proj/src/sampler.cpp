#include "polarphi/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "polarphi/errors.hpp"

namespace polarphi::sampler {
namespace {

using bodies::BodyPtr;
using bodies::Side;

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

// How to draw from one (already side-resolved) body.
struct Plan {
  enum class Kind { pball, interval, linear, reject } kind = Kind::reject;
  BodyPtr body;
  int dim = 1;
  Exponent p{2.0};
  Eigen::MatrixXd map;
  std::unique_ptr<Plan> inner;
  double halfwidth = 1.0;
};

std::unique_ptr<Plan> make_plan(const BodyPtr& b) {
  auto plan = std::make_unique<Plan>();
  plan->body = b;
  plan->dim = bodies::dimension(*b);
  if (const auto* pb = std::get_if<bodies::PBall>(&b->body)) {
    plan->kind = Plan::Kind::pball;
    plan->p = pb->p;
  } else if (std::holds_alternative<bodies::Interval>(b->body)) {
    plan->kind = Plan::Kind::interval;
  } else if (const auto* li = std::get_if<bodies::LinearImage>(&b->body)) {
    // Uniform measure is carried to uniform measure by a linear bijection.
    plan->kind = Plan::Kind::linear;
    plan->map = li->dual ? Eigen::MatrixXd(li->inverse.transpose()) : li->matrix;
    plan->inner = make_plan(li->inner);
  } else {
    plan->kind = Plan::Kind::reject;
    plan->halfwidth = bodies::cube_halfwidth(b, Side::primal);
  }
  return plan;
}

Draw draw(const Plan& plan, Stream& s, std::uint64_t max_attempts) {
  switch (plan.kind) {
    case Plan::Kind::pball: return {sample_pball(plan.dim, plan.p, s), 1};
    case Plan::Kind::interval: return {Eigen::VectorXd::Constant(1, s.symmetric()), 1};
    case Plan::Kind::linear: {
      Draw d = draw(*plan.inner, s, max_attempts);
      d.x = plan.map * d.x;
      return d;
    }
    case Plan::Kind::reject: break;
  }
  Eigen::VectorXd x(plan.dim);
  for (std::uint64_t a = 1; a <= max_attempts; ++a) {
    for (int i = 0; i < plan.dim; ++i) x[i] = plan.halfwidth * s.symmetric();
    if (bodies::gauge(plan.body, Side::primal, x) <= 1.0) return {x, a};
  }
  throw EnvelopeError("rejection sampler: no acceptance in " + std::to_string(max_attempts) +
                          " proposals from the cube of half-width " + std::to_string(plan.halfwidth) +
                          " (acceptance rate below " + std::to_string(1.0 / max_attempts) + ")",
                      0.0);
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t index) noexcept
    : key_(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL))) {}

Stream::result_type Stream::operator()() noexcept { return mix64(key_ + golden * ++counter_); }

double Stream::uniform() noexcept { return ((*this)() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

double Stream::symmetric() noexcept { return 2.0 * uniform() - 1.0; }

double Stream::exponential() noexcept { return -std::log(uniform()); }

std::uint64_t parse_seed(std::string_view text) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    base = 16;
  }
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DomainError("cannot parse seed '" + std::string(text) + "'");
  }
  return v;
}

Eigen::VectorXd sample_pball(int n, Exponent p, Stream& s) {
  if (n < 1) throw DimensionError("sample_pball: dimension must be >= 1");
  Eigen::VectorXd x(n);
  if (p.is_infinite()) {
    for (int i = 0; i < n; ++i) x[i] = s.symmetric();
    return x;
  }
  // |g_i|^p ~ Gamma(1/p) and x = g / (Σ|g_i|^p + E)^{1/p}. Gamma(α) for small
  // α is drawn as Gamma(1+α)·U^{1/α} in log space.
  const double pv = p.value(), alpha = 1.0 / pv;
  std::gamma_distribution<double> gamma(1.0 + alpha);
  std::vector<double> log_g(n);
  std::vector<bool> negative(n);
  const double log_e = std::log(s.exponential());
  double top = log_e;
  for (int i = 0; i < n; ++i) {
    log_g[i] = std::log(gamma(s)) + std::log(s.uniform()) / alpha;
    negative[i] = (s() >> 63) != 0;
    top = std::max(top, log_g[i]);
  }
  double sum = std::exp(log_e - top);
  for (int i = 0; i < n; ++i) sum += std::exp(log_g[i] - top);
  const double log_s = top + std::log(sum);
  for (int i = 0; i < n; ++i) {
    const double mag = std::exp((log_g[i] - log_s) / pv);
    x[i] = negative[i] ? -mag : mag;
  }
  return x;
}

Draw sample_body(const BodyPtr& body, Side side, Stream& s, std::uint64_t max_attempts) {
  const BodyPtr target = side == Side::primal ? body : bodies::polar_of(body);
  return draw(*make_plan(target), s, max_attempts);
}

MCEstimate estimate_phi(const BodyPtr& body, std::uint64_t samples, std::uint64_t seed, const MCOptions& opt) {
  if (samples < 2) throw DomainError("estimate_phi: need at least 2 samples");
  const auto primal = make_plan(body);
  const auto polar = make_plan(bodies::polar_of(body));

  std::vector<double> values(samples);
  std::vector<std::uint64_t> tries_x(samples), tries_y(samples);
  const auto run = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      Stream s(seed, i);
      const Draw x = draw(*primal, s, opt.max_attempts);
      const Draw y = draw(*polar, s, opt.max_attempts);
      const double d = x.x.dot(y.x);
      values[i] = d * d;
      tries_x[i] = x.attempts;
      tries_y[i] = y.attempts;
    }
  };

  unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = unsigned(std::min<std::uint64_t>(workers, samples));
  if (workers <= 1) {
    run(0, samples);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = samples * w / workers, hi = samples * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] {
        try {
          run(lo, hi);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  MCEstimate r;
  r.samples = samples;
  r.seed = seed;
  const double n = double(samples);
  r.estimate = pairwise_sum(values) / n;
  for (double& v : values) v = (v - r.estimate) * (v - r.estimate);
  r.std_error = std::sqrt(pairwise_sum(values) / (n - 1.0) / n);
  std::uint64_t ax = 0, ay = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    ax += tries_x[i];
    ay += tries_y[i];
  }
  r.primal_acceptance = n / double(ax);
  r.polar_acceptance = n / double(ay);
  return r;
}

}  // namespace polarphi::sampler
