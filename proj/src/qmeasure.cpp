#include "coevent/qmeasure.hpp"

#include <algorithm>

namespace coevent {

SetFunction::SetFunction(int n_, std::vector<Rational> v)
    : n(n_), values(std::move(v)) {
  if (values.size() != (std::size_t{1} << n))
    throw Error("set function must assign a value to every event");
  if (values[0] != 0) throw Error("set functions vanish on the empty event");
}

bool SetFunction::nonnegative() const {
  return std::all_of(values.begin(), values.end(),
                     [](const Rational& v) { return v >= 0; });
}

std::string Grade2Violation::describe(int) const {
  return "grade-2 additivity fails on " + format_event(a) + ", " +
         format_event(b) + ", " + format_event(c) + ": value " +
         format_rational(lhs) + " vs " + format_rational(rhs);
}

std::optional<Grade2Violation> is_q_measure(const SetFunction& nu) {
  if (nu.n > 5) throw Error("brute-force grade-2 check is capped at n = 5");
  if (nu.values[0] != 0) throw Error("nu(empty) must be 0");
  if (!nu.nonnegative()) throw Error("q-measure candidates must be nonnegative");
  const EventMask full = (EventMask{1} << nu.n) - 1;
  for (EventMask a = 1; a <= full; ++a)
    for (EventMask b = a + 1; b <= full; ++b) {
      if (a & b) continue;
      for (EventMask c = b + 1; c <= full; ++c) {
        if ((a | b) & c) continue;
        Rational lhs = nu.at(a | b | c);
        Rational rhs = nu.at(a | b) + nu.at(a | c) + nu.at(b | c) - nu.at(a) -
                       nu.at(b) - nu.at(c);
        if (lhs != rhs) return Grade2Violation{a, b, c, lhs, rhs};
      }
    }
  return std::nullopt;
}

std::optional<EventMask> grade2_reconstruction_violation(const SetFunction& nu) {
  const EventMask full = (EventMask{1} << nu.n) - 1;
  for (EventMask a = 1; a <= full; ++a) {
    if (popcount(a) < 3) continue;
    auto pts = outcomes_of(a);
    int m = static_cast<int>(pts.size());
    Rational acc = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        acc += nu.at((EventMask{1} << pts[i]) | (EventMask{1} << pts[j]));
    for (int i = 0; i < m; ++i) acc -= (m - 2) * nu.at(EventMask{1} << pts[i]);
    if (acc != nu.at(a)) return a;
  }
  return std::nullopt;
}

QMeasure QMeasure::create(SetFunction nu) {
  std::string why;
  auto q = try_create(std::move(nu), &why);
  if (!q) throw Error("not a q-measure: " + why);
  return *q;
}

std::optional<QMeasure> QMeasure::try_create(SetFunction nu, std::string* why) {
  if (!nu.nonnegative()) {
    if (why) *why = "negative value present";
    return std::nullopt;
  }
  if (auto v = is_q_measure(nu)) {
    if (why) *why = v->describe(nu.n);
    return std::nullopt;
  }
  QMeasure q;
  q.sf_ = std::move(nu);
  return q;
}

LowOrderBuild from_low_order(int n, const std::vector<Rational>& singletons,
                             const std::vector<Rational>& doubletons) {
  if (static_cast<int>(singletons.size()) != n)
    throw Error("expected one singleton value per outcome");
  if (static_cast<int>(doubletons.size()) != n * (n - 1) / 2)
    throw Error("expected one doubleton value per unordered pair");
  SetFunction nu(n);
  auto pair_at = [&](int i, int j) -> const Rational& {
    if (i > j) std::swap(i, j);
    return doubletons[i * n - i * (i + 1) / 2 + (j - i - 1)];
  };
  const EventMask full = (EventMask{1} << n) - 1;
  for (EventMask a = 1; a <= full; ++a) {
    auto pts = outcomes_of(a);
    int m = static_cast<int>(pts.size());
    if (m == 1) {
      nu.at(a) = singletons[pts[0]];
    } else if (m == 2) {
      nu.at(a) = pair_at(pts[0], pts[1]);
    } else {
      Rational acc = 0;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) acc += pair_at(pts[i], pts[j]);
      for (int i = 0; i < m; ++i) acc -= (m - 2) * singletons[pts[i]];
      nu.at(a) = acc;
    }
  }
  for (EventMask a = 1; a <= full; ++a)
    if (nu.at(a) < 0) return LowOrderBuild{std::nullopt, a, nu.at(a)};
  LowOrderBuild out;
  out.measure = QMeasure::create(std::move(nu));
  return out;
}

std::string RegularityViolation::describe() const {
  return "(R" + std::to_string(rule) + ") fails on A = " + format_event(a) +
         ", B = " + format_event(b);
}

namespace {

template <class Value>
std::optional<RegularityViolation> regular_impl(int n, Value&& value) {
  const EventMask full = (EventMask{1} << n) - 1;
  for (EventMask a = 1; a <= full; ++a) {
    // Disjoint nonempty companions; empty companions hold trivially.
    EventMask rest = full & ~a;
    for (EventMask b = rest; b != 0; b = (b - 1) & rest) {
      if (value(a) == value(EventMask{0}) && value(a | b) != value(b))
        return RegularityViolation{1, a, b};
      if (a < b && value(a | b) == value(EventMask{0}) && value(a) != value(b))
        return RegularityViolation{2, a, b};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<RegularityViolation> is_regular(const SetFunction& xi) {
  return regular_impl(xi.n, [&](EventMask a) { return xi.at(a); });
}

std::optional<RegularityViolation> is_regular(const Coevent& phi) {
  return regular_impl(phi.n(), [&](EventMask a) { return phi.evaluate(a); });
}

bool is_preclusive(const Coevent& phi, const PrecludedSet& a0) {
  if (phi.n() != a0.n) throw Error("precluded set on a different sample space");
  for (EventMask a : a0.events)
    if (phi.evaluate(a)) return false;
  return true;
}

std::vector<Coevent> preclusive_logic(const PrecludedSet& a0, int cap) {
  SampleSpace sp(a0.n);
  std::vector<Coevent> out;
  for_each_coevent(
      sp,
      [&](const Coevent& phi) {
        if (is_preclusive(phi, a0)) out.push_back(phi);
      },
      cap);
  return out;
}

bool is_mu_preclusive(const Coevent& phi, const SetFunction& mu) {
  if (phi.n() != mu.n) throw Error("measure on a different sample space");
  for (std::size_t a = 1; a < mu.values.size(); ++a)
    if (mu.values[a] == 0 && phi.evaluate(static_cast<EventMask>(a)))
      return false;
  return true;
}

SetFunction expand_to(const SetFunction& xi, int n) {
  if (n < xi.n) throw Error("expansion target must not shrink the space");
  SetFunction out(n);
  const EventMask small_full = (EventMask{1} << xi.n) - 1;
  for (std::size_t a = 0; a < out.values.size(); ++a)
    out.values[a] = xi.at(static_cast<EventMask>(a) & small_full);
  return out;
}

SetFunction restrict_to(const SetFunction& xi, int m) {
  if (m > xi.n) throw Error("restriction target must not grow the space");
  if (m < 1) throw Error("restriction target must be a valid space");
  SetFunction out(m);
  for (std::size_t a = 0; a < out.values.size(); ++a)
    out.values[a] = xi.at(static_cast<EventMask>(a));
  return out;
}

Coevent expand_to(const Coevent& phi, int n) {
  if (n < phi.n()) throw Error("expansion target must not shrink the space");
  SampleSpace sp(n);
  TruthTable t(sp.num_events());
  const EventMask small_full = phi.space().full_mask();
  for (std::size_t a = 0; a < t.size(); ++a)
    t[a] = phi.evaluate(static_cast<EventMask>(a) & small_full);
  return Coevent::from_table(sp, std::move(t));
}

Coevent restrict_to(const Coevent& phi, int m) {
  if (m > phi.n()) throw Error("restriction target must not grow the space");
  SampleSpace sp(m);
  TruthTable t(sp.num_events());
  for (std::size_t a = 0; a < t.size(); ++a)
    t[a] = phi.evaluate(static_cast<EventMask>(a));
  return Coevent::from_table(sp, std::move(t));
}

std::vector<Coevent> enumerate_01_qmeasures(int n) {
  if (n != 3) throw Error("the 0/1 q-measure enumeration is specialized to n = 3");
  SampleSpace sp(n);
  std::vector<Coevent> out;
  for_each_coevent(sp, [&](const Coevent& phi) {
    if (phi.is_zero()) return;
    SetFunction nu(n);
    for (std::size_t a = 1; a < nu.values.size(); ++a)
      nu.values[a] = phi.evaluate(static_cast<EventMask>(a)) ? 1 : 0;
    if (!is_q_measure(nu)) out.push_back(phi);
  });
  return out;
}

}  // namespace coevent
