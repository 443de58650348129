#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coevent/expr.hpp"
#include "coevent/generation.hpp"
#include "coevent/json_io.hpp"

using namespace coevent;

namespace {

Coevent cv(const std::string& text, int n) { return parse_coevent(text, n); }

QMeasure qm2(const Rational& m1, const Rational& m2, const Rational& mo) {
  SetFunction nu(2);
  nu.at(0b01) = m1;
  nu.at(0b10) = m2;
  nu.at(0b11) = mo;
  return QMeasure::create(std::move(nu));
}

Density1 d1(std::vector<Rational> v) {
  int n = static_cast<int>(v.size());
  return Density1(PointFunction(n, std::move(v)));
}

QMeasure random_qmeasure3(std::mt19937_64& rng, bool positive_singletons) {
  while (true) {
    std::vector<Rational> singles(3), pairs(3);
    for (auto& s : singles)
      s = Rational(static_cast<int>(rng() % 5) + (positive_singletons ? 1 : 0),
                   1 + static_cast<int>(rng() % 2));
    for (auto& p : pairs)
      p = Rational(static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 2));
    auto built = from_low_order(3, singles, pairs);
    if (built.measure) return *built.measure;
  }
}

QMeasure random_grade1_3(std::mt19937_64& rng, int min_atoms) {
  while (true) {
    std::vector<Rational> w(3);
    int positive = 0;
    for (auto& x : w) {
      int num = static_cast<int>(rng() % 4);
      x = Rational(num, 1 + static_cast<int>(rng() % 2));
      if (x > 0) ++positive;
    }
    if (positive < min_atoms) continue;
    SetFunction nu(3);
    for (EventMask a = 1; a <= 7u; ++a) {
      Rational acc = 0;
      for (int i : outcomes_of(a)) acc += w[i];
      nu.at(a) = acc;
    }
    return QMeasure::create(std::move(nu));
  }
}

}  // namespace

TEST_CASE("weak order enumeration counts") {
  CHECK(all_weak_orders({0}).size() == 1);
  CHECK(all_weak_orders({0, 1}).size() == 3);
  CHECK(all_weak_orders({0, 1, 2}).size() == 13);
  CHECK(all_weak_orders({0, 1, 2, 3}).size() == 75);
}

TEST_CASE("linear system basics") {
  // x0 > 0, x1 - x0 > 0, x1 == 2 -> witness with 0 < x0 < 2
  LinearSystem sys(2);
  sys.add_positive(LinExpr::var(0, 2));
  sys.add_positive(LinExpr::var(1, 2) - LinExpr::var(0, 2));
  sys.add_equal(LinExpr::var(1, 2), 2);
  auto x = sys.solve();
  REQUIRE(x.has_value());
  CHECK((*x)[1] == 2);
  CHECK((*x)[0] > 0);
  CHECK((*x)[0] < 2);

  // contradictory strict chain
  LinearSystem bad(1);
  bad.add_positive(LinExpr::var(0, 1));
  LinExpr neg = LinExpr::value(0, 1) - LinExpr::var(0, 1);
  bad.add_positive(neg);
  CHECK(!bad.feasible());

  // inconsistent equalities
  LinearSystem eq(1);
  eq.add_equal(LinExpr::var(0, 1), 1);
  eq.add_equal(LinExpr::var(0, 1), 2);
  CHECK(!eq.feasible());

  // strictness: x > 0 and x < epsilon has rational points for any epsilon
  LinearSystem thin(1);
  thin.add_positive(LinExpr::var(0, 1));
  LinExpr upper = LinExpr::value(Rational(1, 1000000), 1) - LinExpr::var(0, 1);
  thin.add_positive(upper);
  auto w = thin.solve();
  REQUIRE(w.has_value());
  CHECK((*w)[0] > 0);
  CHECK((*w)[0] < Rational(1, 1000000));
}

TEST_CASE("verify1 on the two-point catalogue") {
  // scaled Dirac
  QMeasure dirac = qm2(3, 0, 3);
  CHECK(verify1(dirac, cv("w1", 2), d1({3, 7})));
  // the (1,2) family
  QMeasure mu = qm2(1, 2, 1);
  CHECK(verify1(mu, cv("w1 + w2", 2), d1({1, 2})));
  CHECK(!verify1(mu, cv("1", 2), d1({1, 2})));
  CHECK_THROWS_AS(d1({1, 0}), Error);
}

TEST_CASE("verify2 on the fixture constructions") {
  Gen2Triple two_point = construct_two_point(1, 2, 4);
  CHECK(verify2(two_point.mu, two_point.phi, two_point.f));

  Gen2Triple midpoint = construct_midpoint_pair(1, 3, 1);
  CHECK(verify2(midpoint.mu, midpoint.phi, midpoint.f));
  CHECK(midpoint.f.f.at(0, 1) == Rational(5, 2));

  Gen2Triple three = construct_three_point(1, 2, 4);
  CHECK(verify2(three.mu, three.phi, three.f));
  CHECK(three.mu(0b100) == 3);
  CHECK(three.mu(0b111) == 1);
}

TEST_CASE("density pinning") {
  QMeasure mu = qm2(1, 0, 1);
  auto pin = pin_density1(mu, cv("w1", 2));
  auto* pinned = std::get_if<Pinned>(&pin);
  REQUIRE(pinned != nullptr);
  REQUIRE(pinned->values.size() == 1);
  CHECK(pinned->values[0].first == 0);
  CHECK(pinned->values[0].second == 1);

  // positive measure on a singleton the coevent kills
  auto early = pin_density1(mu, cv("w2", 2));
  CHECK(std::holds_alternative<EarlyInfeasible>(early));

  // the degree prune
  auto pair_measure = from_low_order(3, {0, 0, 0}, {1, 1, 1});
  REQUIRE(pair_measure.measure.has_value());
  auto prune = pin_density1(*pair_measure.measure, cv("w1*w2*w3", 3));
  auto* e = std::get_if<EarlyInfeasible>(&prune);
  REQUIRE(e != nullptr);
  CHECK(e->reason.find("degree") != std::string::npos);

  // zero measure, zero coevent
  SetFunction z(2);
  auto ok = pin_density1(QMeasure::create(std::move(z)), Coevent::zero(SampleSpace(2)));
  auto* p2 = std::get_if<Pinned>(&ok);
  REQUIRE(p2 != nullptr);
  CHECK(p2->values.empty());
}

TEST_CASE("search1 on two points") {
  QMeasure mu = qm2(1, 2, 1);
  Gen1Report rep = search1(mu, cv("w1 + w2", 2));
  REQUIRE(rep.outcome == Outcome::Feasible);
  CHECK(rep.density->f.values == std::vector<Rational>{1, 2});

  Survey sv = survey1(mu);
  REQUIRE(sv.rows.size() == 1);
  CHECK(sv.rows[0].phi == cv("w1 + w2", 2));

  QMeasure mu2 = qm2(1, 2, 2);
  Gen1Report rep2 = search1(mu2, cv("1", 2));
  REQUIRE(rep2.outcome == Outcome::Feasible);
  CHECK(rep2.density->f.values == std::vector<Rational>{1, 2});
}

TEST_CASE("search1 rejects the three-point parity coevent") {
  std::mt19937_64 rng(31);
  Coevent parity = cv("w1 + w2 + w3", 3);
  for (int t = 0; t < 20; ++t) {
    QMeasure mu = random_qmeasure3(rng, false);
    CHECK(search1(mu, parity).outcome == Outcome::Infeasible);
  }
}

TEST_CASE("two-point classification across a small grid") {
  // families: survey1 must return exactly the predicted coevent (or none)
  const std::vector<Rational> grid = {0, Rational(1, 2), 1, 2};
  for (const Rational& m1 : grid)
    for (const Rational& m2 : grid)
      for (const Rational& mo : grid) {
        QMeasure mu = qm2(m1, m2, mo);
        Survey sv = survey1(mu);
        std::vector<Coevent> expect;
        if (m1 == 0 && m2 == 0) {
          expect.push_back(mo == 0 ? Coevent::zero(SampleSpace(2))
                                   : cv("w1*w2", 2));
        } else if (m1 > 0 && m2 == 0) {
          if (mo == m1) expect.push_back(cv("w1", 2));
          else if (mo < m1) expect.push_back(cv("w1 + w1*w2", 2));
        } else if (m1 == 0 && m2 > 0) {
          if (mo == m2) expect.push_back(cv("w2", 2));
          else if (mo < m2) expect.push_back(cv("w2 + w1*w2", 2));
        } else {
          if (mo == abs(m2 - m1)) expect.push_back(cv("w1 + w2", 2));
          else if (mo == std::max(m1, m2)) expect.push_back(cv("1", 2));
        }
        REQUIRE(sv.rows.size() == expect.size());
        if (!expect.empty()) {
          CHECK(sv.rows[0].phi == expect[0]);
          // the density is pinned wherever a singleton is alive
          const auto& f = sv.rows[0].gen1.density->f.values;
          if (m1 > 0) CHECK(f[0] == m1);
          if (m2 > 0) CHECK(f[1] == m2);
          if (m1 > 0 && m2 == 0 && mo > 0 && mo < m1)
            CHECK(f[1] == m1 - mo);  // unique second value
        }
      }
}

TEST_CASE("witnesses perturbed within their chamber still verify") {
  for (auto [m1, m2, mo] : std::vector<std::array<int, 3>>{
           {1, 2, 1}, {1, 2, 2}, {2, 2, 2}, {1, 0, 0}}) {
    QMeasure mu = qm2(m1, m2, mo);
    for (WitnessStyle style :
         {WitnessStyle::Mid, WitnessStyle::Low, WitnessStyle::High}) {
      Survey sv = survey1(mu);
      for (const SurveyRow& row : sv.rows) {
        Gen1Report rep = search1(mu, row.phi, style);
        REQUIRE(rep.outcome == Outcome::Feasible);
        CHECK(verify1(mu, row.phi, *rep.density));
      }
    }
  }
}

TEST_CASE("dirac measures generate exactly the evaluation map") {
  for (int w = 0; w < 3; ++w) {
    Gen1Triple t = construct_dirac(Rational(3, 2), w, 3);
    Survey sv = survey1(t.mu);
    REQUIRE(sv.rows.size() == 1);
    CHECK(sv.rows[0].phi == Coevent::evaluation_map(SampleSpace(3), w));
  }
}

TEST_CASE("non-Dirac grade-1 measures generate nothing") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 5; ++t) {
    QMeasure mu = random_grade1_3(rng, 2);
    CHECK(survey1(mu).rows.empty());
  }
}

TEST_CASE("at most one regular coevent per survey") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; ++t) {
    QMeasure mu = random_qmeasure3(rng, false);
    Survey sv = survey1(mu);
    int regular = 0;
    for (const SurveyRow& row : sv.rows) {
      if (!is_regular(row.phi)) ++regular;
      CHECK(is_mu_preclusive(row.phi, mu));  // feasible implies preclusive
    }
    CHECK(regular <= 1);
  }
}

TEST_CASE("doubleton law for feasible witnesses") {
  std::mt19937_64 rng(34);
  int inspected = 0;
  for (int t = 0; t < 40; ++t) {
    QMeasure mu = random_qmeasure3(rng, false);
    for (const SurveyRow& row : survey1(mu).rows)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          EventMask wi = EventMask{1} << i, wj = EventMask{1} << j;
          if (!(mu(wi) > 0 && mu(wi) <= mu(wj))) continue;
          ++inspected;
          EventMask pair = wi | wj;
          if (row.phi.evaluate(pair))
            CHECK(mu(pair) == mu(wj));
          else
            CHECK(mu(pair) == mu(wj) - mu(wi));
        }
  }
  CHECK(inspected > 0);
}

TEST_CASE("search2 exact on known positive instances") {
  Gen2Triple mid = construct_midpoint_pair(1, 3, 1);
  Gen2Report rep = search2(mid.mu, mid.phi);
  REQUIRE(rep.outcome == Outcome::Feasible);
  CHECK(verify2(mid.mu, mid.phi, *rep.density));

  Gen2Triple three = construct_three_point(1, 2, 4);
  Gen2Report rep3 = search2(three.mu, three.phi);
  REQUIRE(rep3.outcome == Outcome::Feasible);
  CHECK(verify2(three.mu, three.phi, *rep3.density));
  // and the same measure is not 1-generating for that coevent
  CHECK(search1(three.mu, three.phi).outcome == Outcome::Infeasible);
}

TEST_CASE("search2 exact rejects three-atom grade-1 measures") {
  std::mt19937_64 rng(35);
  QMeasure mu = random_grade1_3(rng, 3);
  Survey sv = survey2(mu);
  CHECK(sv.rows.empty());
  CHECK(sv.infeasible == sv.coevents);
}

TEST_CASE("search2 heuristic finds easy witnesses and never claims no") {
  Gen2Triple mid = construct_midpoint_pair(1, 3, 1);
  Gen2Report rep = search2(mid.mu, mid.phi, SearchMode::Heuristic, 99);
  CHECK(rep.heuristic);
  if (rep.outcome == Outcome::Feasible)
    CHECK(verify2(mid.mu, mid.phi, *rep.density));
  CHECK(rep.outcome != Outcome::Infeasible);

  // a hopeless pair: the heuristic may only say Unknown
  QMeasure dirac = construct_dirac(1, 0, 2).mu;
  Gen2Report no = search2(dirac, cv("w2", 2), SearchMode::Heuristic, 7);
  CHECK(no.outcome == Outcome::Unknown);
}

TEST_CASE("lifting a 1-density to a 2-density") {
  // refusal: mu(Omega) = 1 but phi(Omega) = 0 for the (1,2) family
  QMeasure mu = qm2(1, 2, 1);
  Coevent phi = cv("w1 + w2", 2);
  auto res = lift_density2_from_density1(mu, phi, d1({1, 2}));
  auto* refusal = std::get_if<LiftRefusal>(&res);
  REQUIRE(refusal != nullptr);
  CHECK(refusal->witness == 0b11);

  // scaled Dirac lifts fine
  Gen1Triple dirac = construct_dirac(2, 0, 2);
  auto lifted = lift_density2_from_density1(dirac.mu, dirac.phi, dirac.f);
  auto* ok = std::get_if<Density2>(&lifted);
  REQUIRE(ok != nullptr);
  CHECK(verify2(dirac.mu, dirac.phi, *ok));

  // the unit coevent with a fully alive measure lifts fine
  QMeasure full = qm2(1, 2, 2);
  auto lifted2 = lift_density2_from_density1(full, cv("1", 2), d1({1, 2}));
  auto* ok2 = std::get_if<Density2>(&lifted2);
  REQUIRE(ok2 != nullptr);
  CHECK(verify2(full, cv("1", 2), *ok2));

  CHECK_THROWS_AS(lift_density2_from_density1(mu, cv("1", 2), d1({1, 2})),
                  Error);
}

TEST_CASE("expansion of generating triples") {
  Gen1Triple pair{qm2(1, 2, 1), cv("w1 + w2", 2), d1({1, 2})};
  Gen1Triple big = expand_generation(pair, 4);
  CHECK(big.mu.n() == 4);
  CHECK(verify1(big.mu, big.phi, big.f));
  CHECK(big.f.f.values[2] == 2);  // new points take the max value
  CHECK(restrict_to(big.phi, 2) == pair.phi);
  CHECK(restrict_to(big.mu.set_function(), 2).values ==
        pair.mu.set_function().values);

  Gen2Triple two = construct_two_point(1, 2, 4);
  Gen2Triple big2 = expand_generation(two, 3);
  CHECK(verify2(big2.mu, big2.phi, big2.f));
  CHECK(restrict_to(big2.phi, 2) == two.phi);

  Gen1Triple broken{qm2(1, 2, 2), cv("w1 + w2", 2), d1({1, 2})};
  CHECK_THROWS_AS(expand_generation(broken, 3), Error);
}

TEST_CASE("construction guards name the failed inequality") {
  CHECK_THROWS_WITH_AS(construct_two_point(1, 2, 3),
                       "constraint violated: M > a1 + a2", Error);
  CHECK_THROWS_WITH_AS(construct_midpoint_pair(1, 3, 3),
                       "constraint violated: mu(Omega) <= "
                       "max(mu(w1),mu(w2)) - min(mu(w1),mu(w2))",
                       Error);
  CHECK_THROWS_WITH_AS(construct_three_point(1, 2, 2),
                       "constraint violated: mu({w1,w2}) >= mu(w3)", Error);
  CHECK_THROWS_WITH_AS(construct_dirac(0, 0, 2), "constraint violated: c > 0",
                       Error);
}

TEST_CASE("search1 finds planted densities") {
  // plant f > 0 and phi, induce mu(A) as the integral; whenever that mu is
  // a q-measure the complete search must succeed
  std::mt19937_64 rng(36);
  const std::vector<Rational> vals = {Rational(1, 2), 1, Rational(3, 2), 2};
  int planted = 0;
  for (int t = 0; t < 400 && planted < 60; ++t) {
    int n = 2 + static_cast<int>(rng() % 2);
    SampleSpace sp(n);
    Coevent phi = coevent_at(sp, rng() % coevent_index_count(n));
    PointFunction f = PointFunction::constant(n, 0);
    for (auto& v : f.values) v = vals[rng() % vals.size()];
    SetFunction nu(n);
    for (EventMask a = 1; a <= sp.full_mask(); ++a)
      nu.at(a) = q_integral_over(a, f, phi);
    auto mu = QMeasure::try_create(std::move(nu));
    if (!mu) continue;
    ++planted;
    Gen1Report rep = search1(*mu, phi);
    REQUIRE(rep.outcome == Outcome::Feasible);
    CHECK(verify1(*mu, phi, *rep.density));
    // the planted coevent appears among the survey rows
    bool seen = false;
    for (const SurveyRow& row : survey1(*mu).rows) seen = seen || row.phi == phi;
    CHECK(seen);
  }
  CHECK(planted == 60);
}

TEST_CASE("search2 finds planted pair densities") {
  std::mt19937_64 rng(37);
  const std::vector<Rational> vals = {Rational(1, 2), 1, Rational(3, 2), 2, 3};
  int planted = 0;
  for (int t = 0; t < 600 && planted < 40; ++t) {
    int n = 2 + static_cast<int>(rng() % 2);
    SampleSpace sp(n);
    Coevent phi = coevent_at(sp, rng() % coevent_index_count(n));
    PairFunction f(n);
    for (auto& v : f.values) v = vals[rng() % vals.size()];
    SetFunction nu(n);
    for (EventMask a = 1; a <= sp.full_mask(); ++a)
      nu.at(a) = double_integral(a, f, phi);
    auto mu = QMeasure::try_create(std::move(nu));
    if (!mu) continue;
    ++planted;
    Gen2Report rep = search2(*mu, phi);
    REQUIRE(rep.outcome == Outcome::Feasible);
    CHECK(verify2(*mu, phi, *rep.density));
  }
  CHECK(planted == 40);
}

TEST_CASE("survey output is deterministic across thread counts") {
  QMeasure mu = qm2(1, 2, 1);
  Survey s1 = survey1(mu, 1);
  Survey s4 = survey1(mu, 4);
  std::string a = survey_to_jsonl(s1, "gen1 survey", 0, false);
  std::string b = survey_to_jsonl(s4, "gen1 survey", 0, false);
  CHECK(a == b);
}

TEST_CASE("survey caps") {
  SetFunction nu(5);
  CHECK_THROWS_AS(survey1(QMeasure::create(std::move(nu))), Error);
  SetFunction nu4(4);
  CHECK_THROWS_AS(survey2(QMeasure::create(std::move(nu4))), Error);
  SetFunction nu4b(4);
  CHECK_THROWS_AS(
      search2(QMeasure::create(std::move(nu4b)), Coevent::zero(SampleSpace(4))),
      Error);
}
