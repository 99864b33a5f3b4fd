#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace gkdim {

using Rational = boost::rational<std::int64_t>;

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);
std::int64_t floor(const Rational& r);
std::int64_t ceil(const Rational& r);
std::string to_string(const Rational& r);
/// Parses "a", "-a/b" or a decimal such as "3.5".
Rational parse_rational(const std::string& s);

/// A rational or +infinity.
struct ExtRational {
  bool infinite = false;
  Rational value{0};

  static ExtRational inf() { return {true, Rational(0)}; }
  static ExtRational of(Rational r) { return {false, r}; }
  bool operator==(const ExtRational& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  bool operator<(const ExtRational& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
  bool operator<=(const ExtRational& o) const { return !(o < *this); }
  ExtRational operator+(const ExtRational& o) const {
    if (infinite || o.infinite) return inf();
    return of(value + o.value);
  }
  std::string str() const { return infinite ? "inf" : to_string(value); }
};

inline ExtRational min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }

}  // namespace gkdim
