#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coevent/coevent.hpp"
#include "coevent/rational.hpp"

namespace coevent {

// A rational-valued set function on 2^Omega with value 0 at the empty event.
struct SetFunction {
  int n = 0;
  std::vector<Rational> values;  // size 2^n, indexed by event mask

  SetFunction() = default;
  explicit SetFunction(int n_) : n(n_), values(std::size_t{1} << n_) {}
  SetFunction(int n_, std::vector<Rational> v);

  const Rational& at(EventMask a) const { return values.at(a); }
  Rational& at(EventMask a) { return values.at(a); }
  bool nonnegative() const;
};

struct Grade2Violation {
  EventMask a = 0, b = 0, c = 0;
  Rational lhs, rhs;  // nu(AuBuC) vs the pairwise combination
  std::string describe(int n) const;
};

// Checks grade-2 additivity over every unordered triple of mutually
// disjoint nonempty events (brute force; n <= 5). Preconditions
// (totality, nu(empty) = 0, nu >= 0) throw.
std::optional<Grade2Violation> is_q_measure(const SetFunction& nu);

// Cross-check: reconstructs every |A| >= 3 value from singletons and
// doubletons and returns the first event where the reconstruction fails.
std::optional<EventMask> grade2_reconstruction_violation(const SetFunction& nu);

class QMeasure {
 public:
  struct Rejection {
    std::string reason;
  };

  // Validates nonnegativity and grade-2 additivity.
  static QMeasure create(SetFunction nu);
  static std::optional<QMeasure> try_create(SetFunction nu,
                                            std::string* why = nullptr);

  int n() const { return sf_.n; }
  const Rational& operator()(EventMask a) const { return sf_.at(a); }
  const SetFunction& set_function() const { return sf_; }
  SampleSpace space() const { return SampleSpace(sf_.n); }

  bool operator==(const QMeasure&) const = default;

 private:
  SetFunction sf_;
};

struct LowOrderBuild {
  std::optional<QMeasure> measure;
  // On rejection: the event forced negative and its value.
  EventMask offending = 0;
  Rational value;
};

// Fills every |A| >= 3 value from the given singleton and doubleton values;
// rejects when some value comes out negative.
LowOrderBuild from_low_order(int n, const std::vector<Rational>& singletons,
                             const std::vector<Rational>& doubletons);

struct RegularityViolation {
  int rule = 0;  // 1 or 2
  EventMask a = 0, b = 0;
  std::string describe() const;
};

// Regularity of any set function xi (rational- or {0,1}-valued):
// (R1) xi(A) = 0 implies xi(A u B) = xi(B) for disjoint B;
// (R2) xi(A u B) = 0 implies xi(A) = xi(B) for disjoint A, B.
std::optional<RegularityViolation> is_regular(const SetFunction& xi);
std::optional<RegularityViolation> is_regular(const Coevent& phi);

// The precluded events (the empty event is implicitly precluded).
struct PrecludedSet {
  int n = 0;
  std::vector<EventMask> events;
};

bool is_preclusive(const Coevent& phi, const PrecludedSet& a0);
// All coevents vanishing on every precluded event; |result| = 2^|A_p|.
std::vector<Coevent> preclusive_logic(const PrecludedSet& a0,
                                      int cap = kDefaultEnumerationCap);

bool is_mu_preclusive(const Coevent& phi, const SetFunction& mu);
inline bool is_mu_preclusive(const Coevent& phi, const QMeasure& mu) {
  return is_mu_preclusive(phi, mu.set_function());
}

// Expansion to a larger space: xi_hat(A) = xi(A n Omega_m); restriction
// truncates back. The coevent overloads act on truth tables.
SetFunction expand_to(const SetFunction& xi, int n);
SetFunction restrict_to(const SetFunction& xi, int m);
Coevent expand_to(const Coevent& phi, int n);
Coevent restrict_to(const Coevent& phi, int m);

// All nonzero {0,1} set functions on Omega_3 that are q-measures (34 of
// them), as coevents in enumeration order.
std::vector<Coevent> enumerate_01_qmeasures(int n = 3);

}  // namespace coevent
