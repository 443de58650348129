#pragma once

#include <optional>
#include <vector>

#include "coevent/rational.hpp"

namespace coevent {

// c + sum_i a_i x_i over a fixed variable count.
struct LinExpr {
  std::vector<Rational> coeffs;
  Rational constant;

  LinExpr() = default;
  explicit LinExpr(int nvars) : coeffs(nvars), constant(0) {}
  static LinExpr var(int i, int nvars);
  static LinExpr value(const Rational& c, int nvars);

  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(const Rational& s);
  LinExpr operator-(const LinExpr& o) const;
  Rational evaluate(const std::vector<Rational>& assignment) const;
  bool is_constant() const;
};

// Which point of each final feasibility interval the witness takes; Mid is
// the deterministic default, the others exist to probe chamber interiors.
enum class WitnessStyle { Mid, Low, High };

// Exact rational feasibility of { e = 0 } u { e > 0 } constraint sets:
// Gaussian elimination of the equalities, then Fourier-Motzkin on the
// strict inequalities. Feasible systems yield an interior rational witness.
class LinearSystem {
 public:
  explicit LinearSystem(int nvars) : nvars_(nvars) {}

  int vars() const { return nvars_; }
  void add_equal(LinExpr e);             // e == 0
  void add_equal(LinExpr e, const Rational& rhs);  // e == rhs
  void add_positive(LinExpr e);          // e > 0

  bool feasible() const;
  std::optional<std::vector<Rational>> solve(
      WitnessStyle style = WitnessStyle::Mid) const;

 private:
  int nvars_;
  std::vector<LinExpr> equalities_;
  std::vector<LinExpr> positives_;
};

}  // namespace coevent
