#include "polarphi/exponent.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "polarphi/errors.hpp"

namespace polarphi {

Exponent::Exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw DomainError("exponent must lie in [1, inf], got " + std::to_string(p));
  }
  if (std::isinf(p)) {
    infinite_ = true;
    value_ = 0.0;
  } else {
    infinite_ = false;
    value_ = p;
  }
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
    return infinity();
  }
  double p = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc{} || ptr != last) {
    throw DomainError("cannot parse exponent '" + std::string(text) + "'");
  }
  return Exponent{p};
}

double Exponent::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

Exponent Exponent::dual() const {
  if (infinite_) return Exponent{1.0};
  if (value_ == 1.0) return infinity();
  if (value_ == 2.0) return Exponent{2.0};
  // Remember the source so that the dual of the dual is bit-identical to it;
  // p -> p/(p-1) is not an involution in floating point.
  if (source_ != 0.0) return Exponent{source_};
  Exponent q{value_ / (value_ - 1.0)};
  q.source_ = value_;
  return q;
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

ExponentPair dual_exponent(Exponent p) { return {p, p.dual()}; }

ExponentPair dual_exponent(double p) { return dual_exponent(Exponent{p}); }

}  // namespace polarphi
