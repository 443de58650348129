#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "coevent/coevent.hpp"
#include "coevent/expr.hpp"

using namespace coevent;

namespace {

Coevent cv(const std::string& text, int n) { return parse_coevent(text, n); }

std::vector<EventMask> masks(std::initializer_list<EventMask> ms) {
  std::vector<EventMask> v(ms);
  std::sort(v.begin(), v.end(), canonical_mask_less);
  return v;
}

}  // namespace

TEST_CASE("evaluation maps and the standing assumption") {
  SampleSpace s3(3);
  Coevent w1 = Coevent::evaluation_map(s3, 0);
  CHECK(w1.evaluate(0b101));  // w1 in {w1,w3}
  CHECK(!w1.evaluate(0b110));

  // every coevent vanishes on the empty event
  SampleSpace s2(2);
  for_each_coevent(s2, [](const Coevent& phi) { CHECK(!phi.evaluate(0)); });

  // (w1+w2) on {w1,w2} is 0, not the sum of the parts
  CHECK(!cv("w1 + w2", 2).evaluate(0b11));
}

TEST_CASE("polynomial representation round-trips") {
  SampleSpace s2(2);
  // w1 + w1*w2 is the atom at {w1}: the indicator of that single event
  Coevent a = Coevent::from_polynomial(s2, {0b01, 0b11});
  CHECK(a.evaluate(0b01));
  CHECK(!a.evaluate(0b10));
  CHECK(!a.evaluate(0b11));
  CHECK(a == Coevent::atom(s2, 0b01));

  CHECK(Coevent::from_polynomial(s2, {}) == Coevent::zero(s2));
  CHECK(Coevent::from_polynomial(s2, {1, 2, 3}) == Coevent::one(s2));
  CHECK_THROWS_AS(Coevent::from_polynomial(s2, {0}), Error);

  // to_polynomial . from_polynomial is the identity, exhaustively for n=3
  SampleSpace s3(3);
  for_each_coevent(s3, [&](const Coevent& phi) {
    CHECK(Coevent::from_polynomial(s3, phi.polynomial()) == phi);
  });

  // and on >= 1000 samples for n=4
  SampleSpace s4(4);
  std::mt19937_64 rng(20240601);
  for (int t = 0; t < 1000; ++t) {
    Coevent phi = coevent_at(s4, rng() % coevent_index_count(4));
    CHECK(Coevent::from_polynomial(s4, phi.polynomial()) == phi);
  }
}

TEST_CASE("transform involution") {
  SampleSpace s3(3);
  for_each_coevent(s3, [&](const Coevent& phi) {
    TruthTable t = phi.table();
    xor_subset_transform(t, 3);
    xor_subset_transform(t, 3);
    CHECK(t == phi.table());
  });
  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    TruthTable bits(16);
    for (int i = 0; i < 16; ++i) bits[i] = rng() & 1;
    TruthTable twice = bits;
    xor_subset_transform(twice, 4);
    xor_subset_transform(twice, 4);
    CHECK(twice == bits);
  }
}

TEST_CASE("Boolean algebra operations") {
  SampleSpace s2(2);
  Coevent w1 = cv("w1", 2), w2 = cv("w2", 2);
  CHECK(w1.join(w2) == cv("w1 + w2 + w1*w2", 2));
  CHECK(cv("w1 + w1*w2", 2).join(cv("w2 + w1*w2", 2)) == cv("w1 + w2", 2));
  CHECK(w1.meet(w2) == cv("w1*w2", 2));

  // the longer join example on three points
  CHECK(cv("w1 + w1*w2 + w1*w3 + w1*w2*w3", 3)
            .join(cv("w2 + w1*w2 + w2*w3 + w1*w2*w3", 3)) ==
        cv("w1 + w2 + w1*w3 + w2*w3", 3));

  // complement laws over the whole of A_3^*
  SampleSpace s3(3);
  Coevent zero3 = Coevent::zero(s3), one3 = Coevent::one(s3);
  for_each_coevent(s3, [&](const Coevent& phi) {
    CHECK(phi.meet(phi.complement()) == zero3);
    CHECK(phi.join(phi.complement()) == one3);
    CHECK(phi.leq(one3));
    CHECK(zero3.leq(phi));
  });
}

TEST_CASE("the unit coevent") {
  SampleSpace s2(2);
  CHECK(Coevent::one(s2).polynomial() == masks({0b01, 0b10, 0b11}));
  SampleSpace s3(3);
  CHECK(Coevent::one(s3).polynomial() ==
        masks({0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111}));
  CHECK(Coevent::one(s3).polynomial().size() == 7);

  for (int n = 1; n <= 6; ++n) {
    SampleSpace sp(n);
    Coevent one = Coevent::one(sp);
    for (EventMask a = 0; a <= sp.full_mask(); ++a)
      CHECK(one.evaluate(a) == (a != 0));
  }
}

TEST_CASE("atoms and decomposition") {
  SampleSpace s2(2);
  CHECK(Coevent::atom(s2, 0b11).polynomial() == masks({0b11}));
  CHECK(Coevent::atom(s2, 0b01).polynomial() == masks({0b01, 0b11}));
  CHECK_THROWS_AS(Coevent::atom(s2, 0), Error);

  Coevent w1 = cv("w1", 2);
  CHECK(atoms_below(w1) == masks({0b01, 0b11}));
  auto atoms = decompose(w1);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].join(atoms[1]) == w1);

  // the atom polynomial contains exactly the monomials that contain A
  for (int n = 1; n <= 4; ++n) {
    SampleSpace sp(n);
    for (EventMask a = 1; a <= sp.full_mask(); ++a) {
      std::vector<EventMask> expected;
      for (EventMask m = 1; m <= sp.full_mask(); ++m)
        if (is_subset(a, m)) expected.push_back(m);
      std::sort(expected.begin(), expected.end(), canonical_mask_less);
      CHECK(Coevent::atom(sp, a).polynomial() == expected);
    }
  }

  // every nonzero coevent is the join of the atoms below it, n=3
  SampleSpace s3(3);
  for_each_coevent(s3, [&](const Coevent& phi) {
    if (phi.is_zero()) return;
    Coevent acc = Coevent::zero(s3);
    for (const Coevent& at : decompose(phi)) acc = acc.join(at);
    CHECK(acc == phi);
  });
}

TEST_CASE("event embeddings") {
  SampleSpace s3(3);
  CHECK(Coevent::lower_star(s3, 0b011).polynomial() ==
        masks({0b001, 0b010, 0b011, 0b101, 0b110, 0b111}));

  SampleSpace s4(4);
  Coevent a_star = Coevent::lower_star(s4, 0b0011);
  CHECK(a_star.polynomial() ==
        masks({0b0001, 0b0010, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b0111,
               0b1011, 0b1101, 0b1110, 0b1111}));
  CHECK(a_star.polynomial().size() == 12);
  // B_* = A_* + w3 + w3*w4 for B = {w1,w2,w3}
  CHECK(Coevent::lower_star(s4, 0b0111) ==
        a_star.add(cv("w3 + w3*w4", 4)));

  CHECK(Coevent::upper_star(s3, 0b001) == cv("w1", 3));
  CHECK(Coevent::psi(s3, 0b111).polynomial() == masks({0b111}));
  CHECK_THROWS_AS(Coevent::psi(s3, 0), Error);

  // empty event embeds to the zero coevent
  CHECK(Coevent::lower_star(s3, 0) == Coevent::zero(s3));
  CHECK(Coevent::upper_star(s3, 0) == Coevent::zero(s3));

  // defining conditions, exhaustively for n <= 4
  for (int n = 1; n <= 4; ++n) {
    SampleSpace sp(n);
    for (EventMask a = 0; a <= sp.full_mask(); ++a) {
      Coevent lo = Coevent::lower_star(sp, a);
      Coevent up = Coevent::upper_star(sp, a);
      for (EventMask b = 0; b <= sp.full_mask(); ++b) {
        CHECK(lo.evaluate(b) == (b != 0 && is_subset(b, a)));
        CHECK(up.evaluate(b) == ((b & a) != 0));
      }
      CHECK(lo.leq(up));
      if (a != 0) {
        Coevent ps = Coevent::psi(sp, a);
        for (EventMask b = 0; b <= sp.full_mask(); ++b)
          CHECK(ps.evaluate(b) == is_subset(a, b));
      }
    }
  }
}

TEST_CASE("lower star is the sum of monomials meeting A, n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    SampleSpace sp(n);
    for (EventMask a = 0; a <= sp.full_mask(); ++a) {
      std::vector<EventMask> expected;
      for (EventMask m = 1; m <= sp.full_mask(); ++m)
        if (m & a) expected.push_back(m);
      std::sort(expected.begin(), expected.end(), canonical_mask_less);
      CHECK(Coevent::lower_star(sp, a).polynomial() == expected);
    }
  }
}

TEST_CASE("upper star polynomial is the monomials inside A") {
  for (int n = 1; n <= 4; ++n) {
    SampleSpace sp(n);
    for (EventMask a = 0; a <= sp.full_mask(); ++a) {
      std::vector<EventMask> expected;
      for (EventMask m = 1; m <= sp.full_mask(); ++m)
        if (is_subset(m, a)) expected.push_back(m);
      std::sort(expected.begin(), expected.end(), canonical_mask_less);
      CHECK(Coevent::upper_star(sp, a).polynomial() == expected);
    }
  }
}

TEST_CASE("embedding monotonicity and lattice identities") {
  for (int n = 1; n <= 4; ++n) {
    SampleSpace sp(n);
    for (EventMask a = 0; a <= sp.full_mask(); ++a)
      for (EventMask b = 0; b <= sp.full_mask(); ++b) {
        Coevent la = Coevent::lower_star(sp, a), lb = Coevent::lower_star(sp, b);
        Coevent ua = Coevent::upper_star(sp, a), ub = Coevent::upper_star(sp, b);
        CHECK(is_subset(a, b) == la.leq(lb));
        CHECK(is_subset(a, b) == ua.leq(ub));
        CHECK(Coevent::lower_star(sp, a & b) == la.meet(lb));
        CHECK(Coevent::upper_star(sp, a | b) == ua.join(ub));
      }
  }
}

TEST_CASE("the embeddings are not Boolean homomorphisms") {
  SampleSpace s3(3);
  bool lower_witness = false, upper_witness = false;
  for (EventMask a = 0; a <= s3.full_mask() && !(lower_witness && upper_witness); ++a)
    for (EventMask b = 0; b <= s3.full_mask(); ++b) {
      if (Coevent::lower_star(s3, a | b) !=
          Coevent::lower_star(s3, a).join(Coevent::lower_star(s3, b)))
        lower_witness = true;
      if (Coevent::upper_star(s3, a & b) !=
          Coevent::upper_star(s3, a).meet(Coevent::upper_star(s3, b)))
        upper_witness = true;
    }
  CHECK(lower_witness);
  CHECK(upper_witness);
}

TEST_CASE("classification") {
  SampleSpace s3(3);
  int classical = 0, additive = 0, multiplicative = 0, quadratic = 0;
  int additive_unital = 0, quadratic_unital = 0, mult_nonzero_nonunital = 0;
  for_each_coevent(s3, [&](const Coevent& phi) {
    CoeventClass c = classify(phi);
    classical += c.classical;
    additive += c.additive;
    multiplicative += c.multiplicative;
    quadratic += c.quadratic;
    if (c.additive && c.unital) ++additive_unital;
    if (c.quadratic && c.unital) ++quadratic_unital;
    if (c.multiplicative && !c.zero && !c.unital) ++mult_nonzero_nonunital;
    if (c.classical) {
      CHECK(c.additive);
      CHECK(c.multiplicative);
    }
    if (c.additive) CHECK(c.quadratic);
  });
  CHECK(classical == 3);
  CHECK(additive == 8);
  CHECK(multiplicative == 8);
  CHECK(quadratic == 64);
  CHECK(additive_unital == 4);   // half of the additive coevents
  CHECK(quadratic_unital == 32); // half of the quadratic coevents
  CHECK(mult_nonzero_nonunital == 0);

  CoeventClass one2 = classify(Coevent::one(SampleSpace(2)));
  CHECK(one2.quadratic);
  CHECK(one2.unital);
  CHECK(!one2.additive);
  CHECK(one2.type_signature == masks({0b01, 0b10, 0b11}));

  // all nonzero multiplicative coevents are unital, n <= 4
  for (int n = 1; n <= 4; ++n) {
    SampleSpace sp(n);
    for (EventMask m = 1; m <= sp.full_mask(); ++m)
      CHECK(classify(Coevent::psi(sp, m)).unital);
  }
}

TEST_CASE("enumeration and counting") {
  int count2 = 0;
  std::set<std::vector<bool>> seen;
  for_each_coevent(SampleSpace(2), [&](const Coevent& phi) {
    ++count2;
    std::vector<bool> bits;
    for (std::size_t i = 0; i < phi.table().size(); ++i)
      bits.push_back(phi.table()[i]);
    seen.insert(bits);
  });
  CHECK(count2 == 8);
  CHECK(seen.size() == 8);

  int count3 = 0;
  for_each_coevent(SampleSpace(3), [&](const Coevent&) { ++count3; });
  CHECK(count3 == 128);

  CHECK(count_coevents(2) == 8);
  CHECK(count_coevents(3) == 128);
  CHECK(count_coevents(6) == BigInt("9223372036854775808"));
  CHECK_THROWS_AS(count_coevents(7), Error);

  // enumeration order is ascending table value
  SampleSpace s2(2);
  CHECK(coevent_at(s2, 0) == Coevent::zero(s2));
  for (std::uint64_t k = 0; k + 1 < coevent_index_count(2); ++k)
    CHECK(coevent_at(s2, k).table() < coevent_at(s2, k + 1).table());

  // cap enforcement
  CHECK_THROWS_AS(
      for_each_coevent(SampleSpace(6), [](const Coevent&) {}), Error);
}

TEST_CASE("space and event guards") {
  CHECK_THROWS_AS(SampleSpace(0), Error);
  SampleSpace s2(2);
  CHECK_THROWS_AS(s2.check_event(0b100), Error);
  CHECK_THROWS_AS(cv("w1", 2).evaluate(0b100), Error);
  CHECK_THROWS_AS(cv("w1", 2).add(cv("w1", 3)), Error);
}
