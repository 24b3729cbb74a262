#pragma once

#include <string>
#include <string_view>

namespace polarphi {

// An exponent p in [1, ∞]. Infinity is an explicit state rather than a
// floating-point infinity flowing through arithmetic.
class Exponent {
 public:
  // Throws DomainError for p < 1 or NaN. A floating +inf is accepted and
  // mapped to the infinite exponent.
  explicit Exponent(double p);

  static Exponent infinity() noexcept { return Exponent{}; }

  // Accepts a decimal number or the literal "inf".
  static Exponent parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  bool is_one() const noexcept { return !infinite_ && value_ == 1.0; }
  bool is_endpoint() const noexcept { return infinite_ || value_ == 1.0; }

  // Finite value; +inf for the infinite exponent.
  double value() const noexcept;

  // Hölder conjugate: 1/p + 1/q = 1 with 1 <-> ∞.
  Exponent dual() const;

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.infinite_ == b.infinite_ && a.value_ == b.value_;
  }

 private:
  Exponent() = default;

  double value_ = 0.0;
  bool infinite_ = true;
  double source_ = 0.0;  // nonzero when this is dual() of source_
};

struct ExponentPair {
  Exponent p;
  Exponent q;
};

ExponentPair dual_exponent(Exponent p);
ExponentPair dual_exponent(double p);

}  // namespace polarphi
