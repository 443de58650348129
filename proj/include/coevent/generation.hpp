#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coevent/coevent.hpp"
#include "coevent/linear_system.hpp"
#include "coevent/qintegral.hpp"
#include "coevent/qmeasure.hpp"
#include "coevent/weak_order.hpp"

namespace coevent {

// Strictly positive density on the outcomes.
struct Density1 {
  PointFunction f;
  explicit Density1(PointFunction f_);
};

// Strictly positive symmetric density on pairs of outcomes.
struct Density2 {
  PairFunction f;
  explicit Density2(PairFunction f_);
};

// mu(A) = integral over A of f against phi, for every event A.
bool verify1(const QMeasure& mu, const Coevent& phi, const Density1& f);
// mu(A) = the nested double integral over A, for every event A.
bool verify2(const QMeasure& mu, const Coevent& phi, const Density2& f);

// Values forced on the density wherever phi is 1 on a singleton, or an
// early proof that no density can exist.
struct Pinned {
  // (outcome, value) pairs for the outcomes with phi(w) = 1.
  std::vector<std::pair<int, Rational>> values;
};
struct EarlyInfeasible {
  std::string reason;
};
using PinResult = std::variant<Pinned, EarlyInfeasible>;

PinResult pin_density1(const QMeasure& mu, const Coevent& phi);

enum class Outcome { Feasible, Infeasible, Unknown };

struct Gen1Report {
  Outcome outcome = Outcome::Unknown;
  std::optional<Density1> density;
  std::optional<WeakOrder> chamber;
  std::uint64_t chambers_checked = 0;
  std::string prune_reason;
};

struct Gen2Report {
  Outcome outcome = Outcome::Unknown;
  std::optional<Density2> density;
  std::uint64_t chambers_checked = 0;
  std::string prune_reason;
  bool heuristic = false;
};

// Exact and complete for n <= 4: enumerates every weak-order chamber of the
// density vector, decides each linear system over the rationals, and
// reports a verified interior witness or chamber-exhausted infeasibility.
Gen1Report search1(const QMeasure& mu, const Coevent& phi,
                   WitnessStyle style = WitnessStyle::Mid);

enum class SearchMode { Exact, Heuristic };

// Exact mode (n <= 3) branches over per-column value orders and the induced
// inner-integral orders; heuristic mode tries rational candidates and never
// claims infeasibility.
Gen2Report search2(const QMeasure& mu, const Coevent& phi,
                   SearchMode mode = SearchMode::Exact,
                   std::uint64_t seed = 0);

struct SurveyRow {
  std::uint64_t index = 0;  // enumeration index of the coevent
  Coevent phi;
  Gen1Report gen1;   // filled by survey1
  Gen2Report gen2;   // filled by survey2
};

struct Survey {
  std::uint64_t coevents = 0;
  std::uint64_t feasible = 0;
  std::uint64_t infeasible = 0;
  std::uint64_t unknown = 0;
  std::uint64_t chambers_checked = 0;
  std::vector<SurveyRow> rows;  // feasible rows only, in enumeration order
};

Survey survey1(const QMeasure& mu, int jobs = 0);
Survey survey2(const QMeasure& mu, SearchMode mode = SearchMode::Exact,
               std::uint64_t seed = 0, int jobs = 0);

// Lifts a verified 1-generation density to a 2-generation density via
// g(w, w') = (f(w) + f(w')) / 2; refuses with a witness event when some
// mu(A) != 0 has phi(A) = 0.
struct LiftRefusal {
  EventMask witness;
};
using LiftResult = std::variant<Density2, LiftRefusal>;
LiftResult lift_density2_from_density1(const QMeasure& mu, const Coevent& phi,
                                       const Density1& f);

struct Gen1Triple {
  QMeasure mu;
  Coevent phi;
  Density1 f;
};
struct Gen2Triple {
  QMeasure mu;
  Coevent phi;
  Density2 f;
};

// Expansion of a verified generating triple to a larger space; new outcomes
// get the maximum existing density value.
Gen1Triple expand_generation(const Gen1Triple& t, int n);
Gen2Triple expand_generation(const Gen2Triple& t, int n);

// Fixture constructions; parameters are validated against the required
// inequalities and rejections name the failed one.
Gen2Triple construct_two_point(const Rational& a1, const Rational& a2,
                               const Rational& big, int n = 2);
Gen2Triple construct_midpoint_pair(const Rational& mu1, const Rational& mu2,
                                   const Rational& mu_omega);
Gen2Triple construct_three_point(const Rational& mu1, const Rational& mu2,
                                 const Rational& mu12);
Gen1Triple construct_dirac(const Rational& c, int outcome, int n);

}  // namespace coevent
