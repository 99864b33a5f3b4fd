#include "gkdim/rational.hpp"

#include <stdexcept>

namespace gkdim {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t floor(const Rational& r) { return floor_div(r.numerator(), r.denominator()); }

std::int64_t ceil(const Rational& r) { return ceil_div(r.numerator(), r.denominator()); }

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos)
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string frac = s.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    bool neg = !s.empty() && s[0] == '-';
    std::int64_t whole = dot == 0 || s.substr(0, dot) == "-" ? 0 : std::stoll(s.substr(0, dot));
    std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    Rational r(std::abs(whole) * den + f, den);
    return neg ? -r : r;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational number: " + s);
  }
}

}  // namespace gkdim
