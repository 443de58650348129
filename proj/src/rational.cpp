#include "coevent/rational.hpp"

#include "coevent/error.hpp"

namespace coevent {

std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

namespace {

BigInt parse_integer(const std::string& text) {
  if (text.empty()) throw Error("empty number");
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') i = 1;
  if (i == text.size()) throw Error("malformed number '" + text + "'");
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw Error("malformed number '" + text + "'");
  }
  return BigInt(text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in '" + text + "'");
  return Rational(num, den);
}

}  // namespace coevent
