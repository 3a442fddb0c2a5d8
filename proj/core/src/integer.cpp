#include "hyperglue/integer.hpp"

#include <stdexcept>

namespace hyperglue {

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw std::invalid_argument("empty integer");
  for (std::size_t j = i; j < text.size(); ++j)
    if (text[j] < '0' || text[j] > '9')
      throw std::invalid_argument("bad integer: " + std::string(text));
  return Integer(std::string(text));
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

int sign(const Integer& z) { return z.sign(); }

}  // namespace hyperglue
