#include "coevent/linear_system.hpp"

#include <cassert>

#include "coevent/error.hpp"

namespace coevent {

LinExpr LinExpr::var(int i, int nvars) {
  LinExpr e(nvars);
  e.coeffs.at(i) = 1;
  return e;
}

LinExpr LinExpr::value(const Rational& c, int nvars) {
  LinExpr e(nvars);
  e.constant = c;
  return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  constant += o.constant;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  constant -= o.constant;
  return *this;
}

LinExpr& LinExpr::operator*=(const Rational& s) {
  for (auto& c : coeffs) c *= s;
  constant *= s;
  return *this;
}

LinExpr LinExpr::operator-(const LinExpr& o) const {
  LinExpr e = *this;
  e -= o;
  return e;
}

Rational LinExpr::evaluate(const std::vector<Rational>& assignment) const {
  Rational v = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) v += coeffs[i] * assignment[i];
  return v;
}

bool LinExpr::is_constant() const {
  for (const auto& c : coeffs)
    if (c != 0) return false;
  return true;
}

void LinearSystem::add_equal(LinExpr e) { equalities_.push_back(std::move(e)); }

void LinearSystem::add_equal(LinExpr e, const Rational& rhs) {
  e.constant -= rhs;
  equalities_.push_back(std::move(e));
}

void LinearSystem::add_positive(LinExpr e) { positives_.push_back(std::move(e)); }

bool LinearSystem::feasible() const { return solve().has_value(); }

namespace {

// Substitute x_v = rhs into e.
void substitute(LinExpr& e, int v, const LinExpr& rhs) {
  Rational a = e.coeffs[v];
  if (a == 0) return;
  e.coeffs[v] = 0;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i)
    e.coeffs[i] += a * rhs.coeffs[i];
  e.constant += a * rhs.constant;
}

struct FmStep {
  int var;
  std::vector<LinExpr> lowers;  // x > L
  std::vector<LinExpr> uppers;  // x < U
};

}  // namespace

std::optional<std::vector<Rational>> LinearSystem::solve(
    WitnessStyle style) const {
  std::vector<LinExpr> eqs = equalities_;
  std::vector<LinExpr> ineqs = positives_;

  // Gaussian elimination of equalities; record x_v = rhs substitutions.
  std::vector<std::pair<int, LinExpr>> subs;
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    int v = -1;
    for (int i = 0; i < nvars_; ++i)
      if (eqs[e].coeffs[i] != 0) {
        v = i;
        break;
      }
    if (v < 0) {
      if (eqs[e].constant != 0) return std::nullopt;
      continue;
    }
    Rational a = eqs[e].coeffs[v];
    LinExpr rhs = eqs[e];
    rhs.coeffs[v] = 0;
    rhs *= Rational(-1) / a;
    for (std::size_t e2 = e + 1; e2 < eqs.size(); ++e2) substitute(eqs[e2], v, rhs);
    for (auto& q : ineqs) substitute(q, v, rhs);
    subs.emplace_back(v, std::move(rhs));
  }

  // Fourier-Motzkin elimination with strict inequalities.
  std::vector<bool> eliminated(nvars_, false);
  for (const auto& [v, rhs] : subs) eliminated[v] = true;
  std::vector<FmStep> steps;
  while (true) {
    int v = -1;
    for (int i = nvars_ - 1; i >= 0; --i) {
      if (eliminated[i]) continue;
      for (const auto& q : ineqs)
        if (q.coeffs[i] != 0) {
          v = i;
          break;
        }
      if (v >= 0) break;
    }
    if (v < 0) break;
    FmStep step;
    step.var = v;
    std::vector<LinExpr> rest;
    for (const auto& q : ineqs) {
      Rational a = q.coeffs[v];
      if (a == 0) {
        rest.push_back(q);
        continue;
      }
      LinExpr bound = q;
      bound.coeffs[v] = 0;
      bound *= Rational(-1) / a;  // a x + r > 0  <=>  x >/< -r/a
      (a > 0 ? step.lowers : step.uppers).push_back(std::move(bound));
    }
    for (const auto& lo : step.lowers)
      for (const auto& hi : step.uppers) rest.push_back(hi - lo);
    ineqs = std::move(rest);
    eliminated[v] = true;
    steps.push_back(std::move(step));
  }

  for (const auto& q : ineqs) {
    assert(q.is_constant());
    if (q.constant <= 0) return std::nullopt;
  }

  // Back-fill a witness: free variables, then FM variables in reverse, then
  // the Gaussian pivots in reverse.
  std::vector<Rational> x(nvars_, 0);
  for (int i = 0; i < nvars_; ++i)
    if (!eliminated[i]) x[i] = style == WitnessStyle::Low  ? Rational(1, 2)
                               : style == WitnessStyle::High ? Rational(2)
                                                             : Rational(1);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    bool has_lo = !it->lowers.empty(), has_hi = !it->uppers.empty();
    Rational lo, hi;
    if (has_lo) {
      lo = it->lowers[0].evaluate(x);
      for (const auto& e : it->lowers) lo = std::max(lo, e.evaluate(x));
    }
    if (has_hi) {
      hi = it->uppers[0].evaluate(x);
      for (const auto& e : it->uppers) hi = std::min(hi, e.evaluate(x));
    }
    Rational val;
    if (has_lo && has_hi) {
      assert(lo < hi);
      val = style == WitnessStyle::Low    ? Rational((3 * lo + hi) / 4)
            : style == WitnessStyle::High ? Rational((lo + 3 * hi) / 4)
                                          : Rational((lo + hi) / 2);
    } else if (has_lo) {
      val = lo + (style == WitnessStyle::Low    ? Rational(1, 2)
                  : style == WitnessStyle::High ? Rational(2)
                                                : Rational(1));
    } else if (has_hi) {
      val = hi - (style == WitnessStyle::Low    ? Rational(2)
                  : style == WitnessStyle::High ? Rational(1, 2)
                                                : Rational(1));
    } else {
      val = 1;
    }
    x[it->var] = val;
  }
  for (auto it = subs.rbegin(); it != subs.rend(); ++it)
    x[it->first] = it->second.evaluate(x);

  // The witness must satisfy every original constraint.
  for (const auto& e : equalities_)
    if (e.evaluate(x) != 0) throw Error("internal: equality witness mismatch");
  for (const auto& e : positives_)
    if (e.evaluate(x) <= 0) throw Error("internal: inequality witness mismatch");
  return x;
}

}  // namespace coevent
