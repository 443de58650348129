#include "coevent/expr.hpp"

#include <cctype>

namespace coevent {

namespace {

class Parser {
 public:
  Parser(const std::string& text, int n) : text_(text), sp_(n) {}

  Coevent parse() {
    skip_ws();
    if (done()) throw ParseError("empty coevent expression", pos_);
    if (peek() == '0' || peek() == '1') {
      char c = take();
      skip_ws();
      if (!done())
        throw ParseError(std::string("'") + c + "' must stand alone", pos_);
      return c == '0' ? Coevent::zero(sp_) : Coevent::one(sp_);
    }
    Coevent acc = term();
    skip_ws();
    while (!done()) {
      expect('+');
      acc = acc.add(term());
      skip_ws();
    }
    return acc;
  }

 private:
  const std::string& text_;
  SampleSpace sp_;
  std::size_t pos_ = 0;

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() { return text_[pos_++]; }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  void expect(char c) {
    if (done() || peek() != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  bool try_keyword(const std::string& kw) {
    if (text_.compare(pos_, kw.size(), kw) == 0) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }

  int outcome() {
    skip_ws();
    if (done() || peek() != 'w') throw ParseError("expected outcome 'w<k>'", pos_);
    std::size_t start = pos_;
    ++pos_;
    if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected digit after 'w'", pos_);
    long k = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      k = k * 10 + (take() - '0');
      if (k > 1000) throw ParseError("outcome index out of range", start);
    }
    if (k < 1 || k > sp_.n)
      throw ParseError("outcome index w" + std::to_string(k) +
                           " out of range 1.." + std::to_string(sp_.n),
                       start);
    return static_cast<int>(k - 1);
  }

  EventMask eventset() {
    skip_ws();
    expect('{');
    EventMask a = 0;
    a |= EventMask{1} << outcome();
    skip_ws();
    while (!done() && peek() == ',') {
      ++pos_;
      a |= EventMask{1} << outcome();
      skip_ws();
    }
    expect('}');
    return a;
  }

  Coevent term() {
    skip_ws();
    if (done()) throw ParseError("expected a term", pos_);
    if (try_keyword("atom")) return Coevent::atom(sp_, eventset());
    if (try_keyword("low")) return Coevent::lower_star(sp_, eventset());
    if (try_keyword("up")) return Coevent::upper_star(sp_, eventset());
    if (try_keyword("psi")) return Coevent::psi(sp_, eventset());
    // monomial
    EventMask m = 0;
    m |= EventMask{1} << outcome();
    skip_ws();
    while (!done() && peek() == '*') {
      ++pos_;
      m |= EventMask{1} << outcome();
      skip_ws();
    }
    return Coevent::from_polynomial(sp_, {m});
  }
};

std::string format_monomial(EventMask m) {
  std::string s;
  bool first = true;
  for (int i : outcomes_of(m)) {
    if (!first) s += "*";
    s += "w" + std::to_string(i + 1);
    first = false;
  }
  return s;
}

}  // namespace

Coevent parse_coevent(const std::string& text, int n) {
  return Parser(text, n).parse();
}

std::string format_coevent(const Coevent& phi, FormatOptions opts) {
  if (phi.is_zero()) return "0";
  const char* sep = opts.unicode ? " ⊕ " : " + ";
  std::string s;
  bool first = true;
  for (EventMask m : phi.polynomial()) {
    if (!first) s += sep;
    s += format_monomial(m);
    first = false;
  }
  return s;
}

}  // namespace coevent
