#pragma once

#include <cstddef>
#include <string>

#include "coevent/coevent.hpp"

namespace coevent {

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

// Grammar ("+" is XOR; whitespace insensitive):
//   coevent  := "0" | "1" | term ("+" term)*
//   term     := monomial | "atom" eventset | "low" eventset
//             | "up" eventset | "psi" eventset
//   monomial := "w"INT ("*" "w"INT)*
//   eventset := "{" "w"INT ("," "w"INT)* "}"
Coevent parse_coevent(const std::string& text, int n);

struct FormatOptions {
  bool unicode = false;  // " ⊕ " instead of " + "
};

// Canonical form: monomials by (degree, lexicographic index tuple).
// parse_coevent(format_coevent(phi), n) == phi.
std::string format_coevent(const Coevent& phi, FormatOptions opts = {});

}  // namespace coevent
