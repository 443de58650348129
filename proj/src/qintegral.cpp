#include "coevent/qintegral.hpp"

#include <algorithm>
#include <map>

namespace coevent {

PointFunction::PointFunction(int n_, std::vector<Rational> v)
    : n(n_), values(std::move(v)) {
  if (static_cast<int>(values.size()) != n)
    throw Error("point function must assign a value to every outcome");
}

PointFunction PointFunction::constant(int n, const Rational& c) {
  return PointFunction(n, std::vector<Rational>(n, c));
}

PointFunction PointFunction::indicator(const SampleSpace& sp, EventMask a) {
  sp.check_event(a);
  PointFunction f = constant(sp.n, 0);
  for (int i : outcomes_of(a)) f.values[i] = 1;
  return f;
}

bool PointFunction::nonnegative() const {
  return std::all_of(values.begin(), values.end(),
                     [](const Rational& v) { return v >= 0; });
}

bool PointFunction::strictly_positive() const {
  return std::all_of(values.begin(), values.end(),
                     [](const Rational& v) { return v > 0; });
}

int pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n) throw Error("pair index out of range");
  return i * n - i * (i - 1) / 2 + (j - i);
}

PairFunction::PairFunction(int n_) : n(n_), values(n_ * (n_ + 1) / 2) {}

PairFunction::PairFunction(int n_, std::vector<Rational> v)
    : n(n_), values(std::move(v)) {
  if (static_cast<int>(values.size()) != n * (n + 1) / 2)
    throw Error("pair function must assign a value to every unordered pair");
}

const Rational& PairFunction::at(int i, int j) const {
  return values.at(pair_index(i, j, n));
}

Rational& PairFunction::at(int i, int j) {
  return values.at(pair_index(i, j, n));
}

PointFunction PairFunction::column(int j) const {
  PointFunction f = PointFunction::constant(n, 0);
  for (int i = 0; i < n; ++i) f.values[i] = at(i, j);
  return f;
}

bool PairFunction::nonnegative() const {
  return std::all_of(values.begin(), values.end(),
                     [](const Rational& v) { return v >= 0; });
}

bool PairFunction::strictly_positive() const {
  return std::all_of(values.begin(), values.end(),
                     [](const Rational& v) { return v > 0; });
}

namespace {

void check_space(const PointFunction& f, const Coevent& phi) {
  if (f.n != phi.n())
    throw Error("function and coevent live on different sample spaces");
}

// Distinct nonzero values ascending, each with its level-set mask.
std::vector<std::pair<Rational, EventMask>> canonical_levels(
    const PointFunction& f) {
  std::map<Rational, EventMask> levels;
  for (int i = 0; i < f.n; ++i)
    if (f.values[i] != 0) levels[f.values[i]] |= EventMask{1} << i;
  return {levels.begin(), levels.end()};
}

}  // namespace

Rational q_integral_nonneg(const PointFunction& f, const Coevent& phi) {
  check_space(f, phi);
  if (!f.nonnegative()) throw Error("q_integral_nonneg requires f >= 0");
  auto levels = canonical_levels(f);
  // Tail unions U_j = A_j u ... u A_k.
  std::vector<EventMask> tails(levels.size());
  EventMask acc = 0;
  for (std::size_t j = levels.size(); j-- > 0;) {
    acc |= levels[j].second;
    tails[j] = acc;
  }
  Rational result = 0;
  Rational prev = 0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (phi.evaluate(tails[j])) result += levels[j].first - prev;
    prev = levels[j].first;
  }
  return result;
}

Rational q_integral(const PointFunction& f, const Coevent& phi) {
  check_space(f, phi);
  PointFunction pos = PointFunction::constant(f.n, 0);
  PointFunction neg = PointFunction::constant(f.n, 0);
  for (int i = 0; i < f.n; ++i) {
    if (f.values[i] >= 0)
      pos.values[i] = f.values[i];
    else
      neg.values[i] = -f.values[i];
  }
  return q_integral_nonneg(pos, phi) - q_integral_nonneg(neg, phi);
}

Rational q_integral_over(EventMask a, const PointFunction& f,
                         const Coevent& phi) {
  check_space(f, phi);
  phi.space().check_event(a);
  PointFunction g = f;
  for (int i = 0; i < f.n; ++i)
    if (!(a & (EventMask{1} << i))) g.values[i] = 0;
  return q_integral(g, phi);
}

Rational closed_form_additive_chain(EventMask s, const PointFunction& f) {
  if (!f.nonnegative()) throw Error("closed forms require f >= 0");
  std::vector<Rational> vals;
  for (int i : outcomes_of(s)) vals.push_back(f.values.at(i));
  std::sort(vals.begin(), vals.end());
  Rational result = 0;
  int sign = 1;
  for (std::size_t j = vals.size(); j-- > 0;) {
    result += sign * vals[j];
    sign = -sign;
  }
  return result;
}

Rational closed_form_monomial(EventMask s, const PointFunction& f) {
  if (!f.nonnegative()) throw Error("closed forms require f >= 0");
  if (s == 0) throw Error("monomial closed form needs a nonempty factor set");
  Rational m = f.values.at(outcomes_of(s)[0]);
  for (int i : outcomes_of(s)) m = std::min(m, f.values.at(i));
  return m;
}

Rational closed_form_upper_star(EventMask a, const PointFunction& f) {
  if (!f.nonnegative()) throw Error("closed forms require f >= 0");
  Rational m = 0;
  for (int i : outcomes_of(a)) m = std::max(m, f.values.at(i));
  return m;
}

Rational closed_form_lower_star(EventMask a, const PointFunction& f) {
  if (!f.nonnegative()) throw Error("closed forms require f >= 0");
  // alpha = max f over the whole space; zero unless every maximizer is in a.
  Rational alpha = 0;
  for (const Rational& v : f.values) alpha = std::max(alpha, v);
  EventMask argmax = 0;
  for (int i = 0; i < f.n; ++i)
    if (f.values[i] == alpha) argmax |= EventMask{1} << i;
  if (!is_subset(argmax, a)) return 0;
  // Telescopes down to the largest value attained outside a (0 if none).
  Rational beta = 0;
  for (int i = 0; i < f.n; ++i)
    if (!(a & (EventMask{1} << i))) beta = std::max(beta, f.values[i]);
  return alpha - beta;
}

Rational closed_form_atom(EventMask a, const PointFunction& f) {
  if (!f.nonnegative()) throw Error("closed forms require f >= 0");
  if (a == 0) throw Error("atoms are indexed by nonempty events");
  auto levels = canonical_levels(f);
  EventMask tail = 0;
  Rational prev_below = 0;  // value just below the tail's lowest level
  for (std::size_t j = levels.size(); j-- > 0;) {
    tail |= levels[j].second;
    prev_below = j > 0 ? levels[j - 1].first : Rational(0);
    if (tail == a) return levels[j].first - prev_below;
  }
  return 0;
}

Rational closed_form(ClosedFormKind kind, EventMask arg,
                     const PointFunction& f) {
  switch (kind) {
    case ClosedFormKind::AdditiveChain:
      return closed_form_additive_chain(arg, f);
    case ClosedFormKind::Monomial:
      return closed_form_monomial(arg, f);
    case ClosedFormKind::UpperStar:
      return closed_form_upper_star(arg, f);
    case ClosedFormKind::LowerStar:
      return closed_form_lower_star(arg, f);
    case ClosedFormKind::Atom:
      return closed_form_atom(arg, f);
  }
  throw Error("unknown closed-form kind");
}

Rational double_integral(EventMask a, const PairFunction& f,
                         const Coevent& phi) {
  if (f.n != phi.n())
    throw Error("pair function and coevent live on different sample spaces");
  if (!f.nonnegative())
    throw Error("double integral requires a nonnegative pair function");
  phi.space().check_event(a);
  PointFunction g = PointFunction::constant(f.n, 0);
  for (int j = 0; j < f.n; ++j)
    g.values[j] = q_integral_over(a, f.column(j), phi);
  return q_integral_over(a, g, phi);
}

}  // namespace coevent
