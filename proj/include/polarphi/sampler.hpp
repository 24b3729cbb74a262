#pragma once

// Uniform sampling from bodies and their polars, and the Monte Carlo estimate
//
//     φ(K) = E <X,Y>²,   X ~ U(K), Y ~ U(K°) independent.
//
// Every sample index owns its own counter-based stream, so the result does
// not depend on how indices are split across workers.

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string_view>

#include "polarphi/bodies.hpp"
#include "polarphi/exponent.hpp"

namespace polarphi::sampler {

// Counter-based generator: output k of stream (seed, index) is a fixed
// function of (seed, index, k). Satisfies UniformRandomBitGenerator.
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream(std::uint64_t seed, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

  double uniform() noexcept;    // (0, 1)
  double symmetric() noexcept;  // (-1, 1)
  double exponential() noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Decimal or 0x-prefixed hexadecimal; throws DomainError otherwise.
std::uint64_t parse_seed(std::string_view text);

Eigen::VectorXd sample_pball(int n, Exponent p, Stream& s);

struct Draw {
  Eigen::VectorXd x;
  std::uint64_t attempts = 1;  // rejection proposals used (1 for direct methods)
};

inline constexpr std::uint64_t default_max_attempts = 20'000'000;

// Direct for p-balls, intervals and linear images (through the inner body);
// rejection from the enclosing cube otherwise. Throws EnvelopeError when a
// single draw needs more than max_attempts proposals.
Draw sample_body(const bodies::BodyPtr& body, bodies::Side side, Stream& s,
                 std::uint64_t max_attempts = default_max_attempts);

struct MCOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  std::uint64_t max_attempts = default_max_attempts;
};

struct MCEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double primal_acceptance = 1.0;
  double polar_acceptance = 1.0;
};

MCEstimate estimate_phi(const bodies::BodyPtr& body, std::uint64_t samples, std::uint64_t seed,
                        const MCOptions& opt = {});

}  // namespace polarphi::sampler
