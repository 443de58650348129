#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace coevent {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical text form: "p/q" with the "/q" omitted when q == 1.
std::string format_rational(const Rational& r);

// Accepts "p", "p/q" and an optional leading sign. Throws Error on anything else.
Rational parse_rational(const std::string& text);

}  // namespace coevent
