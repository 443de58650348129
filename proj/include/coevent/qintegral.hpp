#pragma once

#include <vector>

#include "coevent/coevent.hpp"
#include "coevent/rational.hpp"

namespace coevent {

// A rational-valued function on the outcomes of a sample space.
struct PointFunction {
  int n = 0;
  std::vector<Rational> values;  // size n, indexed by outcome

  PointFunction() = default;
  PointFunction(int n_, std::vector<Rational> v);
  static PointFunction constant(int n, const Rational& c);
  static PointFunction indicator(const SampleSpace& sp, EventMask a);

  const Rational& at(int outcome) const { return values.at(outcome); }
  bool nonnegative() const;
  bool strictly_positive() const;
};

// Flat index of the unordered pair {i, j} (i <= j) among n(n+1)/2 entries.
int pair_index(int i, int j, int n);

// A symmetric rational-valued function on pairs of outcomes.
struct PairFunction {
  int n = 0;
  std::vector<Rational> values;  // size n(n+1)/2

  PairFunction() = default;
  explicit PairFunction(int n_);
  PairFunction(int n_, std::vector<Rational> v);

  const Rational& at(int i, int j) const;
  Rational& at(int i, int j);
  // f(., j) as a point function.
  PointFunction column(int j) const;
  bool nonnegative() const;
  bool strictly_positive() const;
};

// The level-set integral of a nonnegative f against phi: with distinct
// nonzero values a_1 < ... < a_k and U_j the union of the level sets of
// a_j..a_k, the value is sum_j (a_j - a_{j-1}) phi(U_j), a_0 = 0.
Rational q_integral_nonneg(const PointFunction& f, const Coevent& phi);

// Signed integrand: split f = f1 - f2 with f1, f2 >= 0 and f1 f2 = 0.
Rational q_integral(const PointFunction& f, const Coevent& phi);

// Integral over an event: the integral of f * chi_A.
Rational q_integral_over(EventMask a, const PointFunction& f,
                         const Coevent& phi);

// Closed-form companions, each an independent code path from the level-set
// algorithm. `arg` is the index set of the chain/monomial or the event of
// the embedding/atom.
enum class ClosedFormKind { AdditiveChain, Monomial, UpperStar, LowerStar, Atom };

Rational closed_form_additive_chain(EventMask s, const PointFunction& f);
Rational closed_form_monomial(EventMask s, const PointFunction& f);
Rational closed_form_upper_star(EventMask a, const PointFunction& f);
Rational closed_form_lower_star(EventMask a, const PointFunction& f);
Rational closed_form_atom(EventMask a, const PointFunction& f);
Rational closed_form(ClosedFormKind kind, EventMask arg, const PointFunction& f);

// The nested integral over A: with g_A(w') = integral over A of f(., w')
// against phi, returns the integral over A of g_A against phi.
Rational double_integral(EventMask a, const PairFunction& f, const Coevent& phi);

}  // namespace coevent
