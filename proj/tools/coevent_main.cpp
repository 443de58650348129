#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "coevent/expr.hpp"
#include "coevent/generation.hpp"
#include "coevent/json_io.hpp"

using namespace coevent;

namespace {

constexpr const char* kVersion = "coevent 1.0.0";

// Exit codes: 0 affirmative/success, 1 negative mathematical result,
// 2 input or usage error.
struct MathNegative {
  std::string message;
};

struct Ctx {
  std::string format = "table";
  bool unicode = false;
  int jobs = 0;
  std::uint64_t seed = 0;
  int cap = kDefaultEnumerationCap;
};

std::string fmt(const Ctx& ctx, const Coevent& phi) {
  return format_coevent(phi, {.unicode = ctx.unicode});
}

void emit_json(Json j) {
  Json wrapped;
  wrapped["version"] = kVersion;
  for (auto it = j.begin(); it != j.end(); ++it) wrapped[it.key()] = it.value();
  std::cout << wrapped.dump() << "\n";
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad JSON in '" + path + "': " + e.what());
  }
}

QMeasure load_measure(const std::string& path, bool complete) {
  SetFunction nu = set_function_from_json(load_json(path), complete);
  std::string why;
  auto q = QMeasure::try_create(std::move(nu), &why);
  if (!q) throw MathNegative{"not a q-measure: " + why};
  return *q;
}

std::vector<Rational> parse_csv_rationals(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

PointFunction load_point_function(const std::string& inline_csv,
                                  const std::string& path, int n) {
  if (!inline_csv.empty()) {
    auto v = parse_csv_rationals(inline_csv);
    if (static_cast<int>(v.size()) != n)
      throw Error("expected " + std::to_string(n) + " comma-separated values");
    return PointFunction(n, std::move(v));
  }
  if (path.empty()) throw Error("provide --f or --f-file");
  PointFunction f = point_function_from_json(load_json(path));
  if (f.n != n) throw Error("point function has the wrong number of outcomes");
  return f;
}

PairFunction load_pair_function(const std::string& inline_csv,
                                const std::string& path, int n) {
  if (!inline_csv.empty()) {
    auto v = parse_csv_rationals(inline_csv);
    if (static_cast<int>(v.size()) != n * (n + 1) / 2)
      throw Error("expected " + std::to_string(n * (n + 1) / 2) +
                  " comma-separated values (pairs (1,1),(1,2),...,(n,n))");
    return PairFunction(n, std::move(v));
  }
  if (path.empty()) throw Error("provide --f2 or --f2-file");
  PairFunction f = pair_function_from_json(load_json(path));
  if (f.n != n) throw Error("pair function has the wrong number of outcomes");
  return f;
}

std::string type_signature_text(const CoeventClass& c) {
  if (c.type_signature.empty()) return "(0)";
  std::string s = "(";
  bool first = true;
  for (EventMask m : c.type_signature) {
    if (!first) s += ",";
    for (int i : outcomes_of(m)) s += std::to_string(i + 1);
    first = false;
  }
  return s + ")";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

// ---------------------------------------------------------------------------
// reproduce: the worked examples as executable checks
// ---------------------------------------------------------------------------

struct Checker {
  int failures = 0;
  void check(bool ok, const std::string& what) {
    std::cout << (ok ? "  ok   " : "  FAIL ") << what << "\n";
    if (!ok) ++failures;
  }
  void note(const std::string& what) { std::cout << "  " << what << "\n"; }
};

int reproduce_example1(const Ctx& ctx) {
  Checker c;
  std::cout << "the full logic on two points, listed by type\n";
  std::map<std::string, std::vector<std::string>> by_type;
  int count = 0;
  for_each_coevent(SampleSpace(2), [&](const Coevent& phi) {
    ++count;
    by_type[type_signature_text(classify(phi))].push_back(fmt(ctx, phi));
  });
  for (const auto& [type, list] : by_type)
    for (const auto& text : list)
      std::cout << "  type " << type << ": " << text << "\n";
  c.check(count == 8, "8 coevents in total");
  c.check(by_type["(0)"].size() == 1, "one zero coevent");
  c.check(by_type["(1)"].size() == 1 && by_type["(2)"].size() == 1,
          "two classical coevents");
  c.check(by_type["(1,2)"].size() == 1, "one additive type (1,2)");
  c.check(by_type["(12)"].size() == 1, "one multiplicative type (12)");
  c.check(by_type["(1,12)"].size() == 1 && by_type["(2,12)"].size() == 1,
          "two quadratic coevents mixing a singleton with the pair");
  c.check(by_type["(1,2,12)"].size() == 1 &&
              by_type["(1,2,12)"][0] == fmt(ctx, Coevent::one(SampleSpace(2))),
          "the unit is the type (1,2,12) coevent");
  return c.failures ? 1 : 0;
}

int reproduce_example2(const Ctx& ctx) {
  Checker c;
  SampleSpace s3(3);
  int count = 0;
  int classical = 0, two_singletons = 0, full_monomial = 0, one_pair = 0;
  int singleton_with_pair = 0, singleton_disjoint_pair = 0;
  int two_singletons_their_pair = 0, two_singletons_other_pair = 0;
  int three_singletons = 0, three_singletons_pair = 0;
  for_each_coevent(s3, [&](const Coevent& phi) {
    ++count;
    const auto& p = phi.polynomial();
    auto deg = [&](int d) {
      int k = 0;
      for (EventMask m : p)
        if (popcount(m) == d) ++k;
      return k;
    };
    if (p.size() == 1 && deg(1) == 1) ++classical;
    if (p.size() == 2 && deg(1) == 2) ++two_singletons;
    if (p.size() == 1 && deg(3) == 1) ++full_monomial;
    if (p.size() == 1 && deg(2) == 1) ++one_pair;
    if (p.size() == 2 && deg(1) == 1 && deg(2) == 1) {
      EventMask single = popcount(p[0]) == 1 ? p[0] : p[1];
      EventMask pair = popcount(p[0]) == 2 ? p[0] : p[1];
      (is_subset(single, pair) ? singleton_with_pair
                               : singleton_disjoint_pair)++;
    }
    if (p.size() == 3 && deg(1) == 2 && deg(2) == 1) {
      EventMask singles = 0, pair = 0;
      for (EventMask m : p) (popcount(m) == 1 ? singles : pair) |= m;
      (singles == pair ? two_singletons_their_pair
                       : two_singletons_other_pair)++;
    }
    if (p.size() == 3 && deg(1) == 3) ++three_singletons;
    if (p.size() == 4 && deg(1) == 3 && deg(2) == 1) ++three_singletons_pair;
  });
  c.check(count == 128, "128 coevents in total");
  c.check(classical == 3, "3 classical coevents");
  c.check(two_singletons == 3, "3 type (1,2) coevents");
  c.check(one_pair == 3, "3 type (12) coevents");
  c.check(three_singletons == 1, "a unique type (1,2,3) coevent");
  c.note("the type (1,2,3) coevent is " +
         fmt(ctx, parse_coevent("w1 + w2 + w3", 3)));
  c.check(full_monomial == 1, "one type (123) coevent");
  c.check(singleton_with_pair == 6, "6 type (1,12) coevents");
  c.check(singleton_disjoint_pair == 3, "3 type (1,23) coevents");
  c.check(two_singletons_their_pair == 3, "3 type (1,2,12) coevents");
  c.check(two_singletons_other_pair == 6, "6 type (1,2,13) coevents");
  c.check(three_singletons_pair == 3, "3 type (1,2,3,12) coevents");
  c.check(Coevent::one(s3).polynomial().size() == 7,
          "the unit coevent carries all 7 monomials");
  return c.failures ? 1 : 0;
}

int reproduce_example3(const Ctx& ctx) {
  Checker c;
  SampleSpace s4(4);
  Coevent a_star = Coevent::lower_star(s4, 0b0011);
  std::cout << "lower embedding of {w1,w2} on four points:\n  "
            << fmt(ctx, a_star) << "\n";
  c.check(a_star.polynomial().size() == 12, "12 monomials");
  std::vector<EventMask> expected;
  for (EventMask m = 1; m <= s4.full_mask(); ++m)
    if (m & 0b0011) expected.push_back(m);
  std::sort(expected.begin(), expected.end(), canonical_mask_less);
  c.check(a_star.polynomial() == expected,
          "exactly the monomials meeting {w1,w2}");
  Coevent b_star = Coevent::lower_star(s4, 0b0111);
  c.check(b_star == a_star.add(parse_coevent("w3 + w3*w4", 4)),
          "B_* = A_* + w3 + w3*w4 for B = {w1,w2,w3}");
  return c.failures ? 1 : 0;
}

int reproduce_example4(const Ctx&) {
  Checker c;
  PointFunction f(5, {1, 2, 3, 4, 5});
  SampleSpace s5(5);
  auto show = [&](const std::string& label, const Rational& got,
                  const Rational& want) {
    std::cout << "  integral against " << label << " = "
              << format_rational(got) << " (expected " << format_rational(want)
              << ")\n";
    c.check(got == want, label);
  };
  show("w2 + w3 + w4", q_integral(f, parse_coevent("w2 + w3 + w4", 5)), 3);
  show("w2*w3*w4", q_integral(f, parse_coevent("w2*w3*w4", 5)), 2);
  show("up{w2,w3,w4}", q_integral(f, Coevent::upper_star(s5, 0b01110)), 4);
  show("low{w2,w3,w4}", q_integral(f, Coevent::lower_star(s5, 0b01110)), 0);
  show("low{w3,w4,w5}", q_integral(f, Coevent::lower_star(s5, 0b11100)), 3);
  return c.failures ? 1 : 0;
}

int reproduce_example5(const Ctx&) {
  Checker c;
  PointFunction f(2, {1, 2});
  Coevent phi = parse_coevent("w1 + w2", 2);
  Rational whole = q_integral_over(0b11, f, phi);
  Rational parts =
      q_integral_over(0b01, f, phi) + q_integral_over(0b10, f, phi);
  std::cout << "  integral over the union = " << format_rational(whole)
            << ", sum over the parts = " << format_rational(parts) << "\n";
  c.check(whole == 1 && parts == 3 && whole != parts,
          "the integral is not additive over disjoint events");
  return c.failures ? 1 : 0;
}

int reproduce_example6(const Ctx&) {
  Checker c;
  PointFunction f(3, {1, 2, 3});
  Coevent phi = parse_coevent("w1 + w2 + w3", 3);
  auto I = [&](EventMask a) { return q_integral_over(a, f, phi); };
  Rational lhs = I(0b111);
  Rational rhs =
      I(0b011) + I(0b101) + I(0b110) - I(0b001) - I(0b010) - I(0b100);
  std::cout << "  whole = " << format_rational(lhs)
            << ", grade-2 combination = " << format_rational(rhs) << "\n";
  c.check(lhs == 2 && rhs == -2 && lhs != rhs,
          "the integral is not grade-2 additive");
  return c.failures ? 1 : 0;
}

int reproduce_example7(const Ctx& ctx) {
  Checker c;
  const std::vector<Rational> grid = {0, Rational(1, 2), 1, Rational(3, 2), 2};
  std::map<std::string, int> families;
  bool all_match = true;
  SampleSpace s2(2);
  for (const Rational& m1 : grid)
    for (const Rational& m2 : grid)
      for (const Rational& mo : grid) {
        SetFunction nu(2);
        nu.at(0b01) = m1;
        nu.at(0b10) = m2;
        nu.at(0b11) = mo;
        QMeasure mu = QMeasure::create(std::move(nu));
        std::vector<Coevent> expect;
        if (m1 == 0 && m2 == 0) {
          expect.push_back(mo == 0 ? Coevent::zero(s2)
                                   : parse_coevent("w1*w2", 2));
        } else if (m1 > 0 && m2 == 0) {
          if (mo == m1)
            expect.push_back(parse_coevent("w1", 2));
          else if (mo < m1)
            expect.push_back(parse_coevent("w1 + w1*w2", 2));
        } else if (m1 == 0 && m2 > 0) {
          if (mo == m2)
            expect.push_back(parse_coevent("w2", 2));
          else if (mo < m2)
            expect.push_back(parse_coevent("w2 + w1*w2", 2));
        } else {
          if (mo == abs(m2 - m1))
            expect.push_back(parse_coevent("w1 + w2", 2));
          else if (mo == std::max(m1, m2))
            expect.push_back(parse_coevent("1", 2));
        }
        Survey sv = survey1(mu, ctx.jobs);
        bool match = sv.rows.size() == expect.size() &&
                     (expect.empty() || sv.rows[0].phi == expect[0]);
        all_match = all_match && match;
        families[expect.empty() ? "(none)" : fmt(ctx, expect[0])]++;
      }
  for (const auto& [family, n] : families)
    std::cout << "  " << family << ": " << n << " measures\n";
  c.check(all_match, "survey agrees with the case analysis on a 5x5x5 grid");
  return c.failures ? 1 : 0;
}

int reproduce_example8(const Ctx& ctx) {
  Checker c;
  auto qs = enumerate_01_qmeasures();
  c.check(qs.size() == 34, "34 zero-one q-measures on three points");
  auto contains = [&](const Coevent& want) {
    for (const Coevent& q : qs)
      if (q == want) return true;
    return false;
  };
  c.check(contains(parse_coevent("w1", 3)), "w1 appears (pattern 1001101)");
  c.check(contains(parse_coevent("w1 + w2", 3)),
          "w1 + w2 appears (pattern 1100110)");
  c.check(contains(parse_coevent("w1*w2*w3", 3).complement()),
          "the complement of w1*w2*w3 appears (pattern 1111110)");
  c.check(contains(parse_coevent("w2 + w1*w2 + w1*w3", 3)),
          "w2 + w1*w2 + w1*w3 appears (pattern 0100111)");

  std::mt19937_64 rng(ctx.seed ? ctx.seed : 8);
  auto random_qmeasure = [&]() {
    while (true) {
      std::vector<Rational> singles(3), pairs(3);
      for (auto& s : singles) s = static_cast<int>(rng() % 5);
      for (auto& p : pairs) p = static_cast<int>(rng() % 6);
      auto built = from_low_order(3, singles, pairs);
      if (built.measure) return *built.measure;
    }
  };
  for (const char* text :
       {"w1*w2*w3", "w1 + w2 + w3", "w1 + w2 + w3 + w1*w2"}) {
    Coevent phi = parse_coevent(text, 3);
    bool all_infeasible = true;
    bool prune_seen = false;
    for (int t = 0; t < 10; ++t) {
      Gen1Report rep = search1(random_qmeasure(), phi);
      all_infeasible = all_infeasible && rep.outcome == Outcome::Infeasible;
      prune_seen = prune_seen || !rep.prune_reason.empty();
    }
    c.check(all_infeasible, std::string(text) + " is never 1-generated");
    if (std::string(text) == "w1*w2*w3")
      c.check(prune_seen, "the degree prune fires for w1*w2*w3");
  }
  return c.failures ? 1 : 0;
}

int reproduce_example9(const Ctx&) {
  Checker c;
  Gen2Triple t = construct_midpoint_pair(1, 3, 1);
  std::cout << "  measure (1, 3, 1); midpoint density f(w1,w2) = "
            << format_rational(t.f.f.at(0, 1)) << "\n";
  c.check(t.f.f.at(0, 1) == Rational(5, 2), "f(w1,w2) = (1 + 1 + 3)/2 = 5/2");
  c.check(verify2(t.mu, t.phi, t.f), "the density 2-generates w1 + w2");
  c.check(search1(t.mu, t.phi).outcome == Outcome::Infeasible,
          "the same measure does not 1-generate w1 + w2");
  return c.failures ? 1 : 0;
}

int reproduce_example10(const Ctx&) {
  Checker c;
  Gen2Triple t = construct_three_point(1, 2, 4);
  c.check(t.mu(0b100) == 3, "mu(w3) = mu(w1) + mu(w2) = 3");
  c.check(t.mu(0b111) == 1, "mu(Omega) = mu({w1,w2}) - mu(w3) = 1");
  c.check(verify2(t.mu, t.phi, t.f),
          "the density 2-generates w1 + w2 + w3 + w1*w2");
  c.check(search1(t.mu, t.phi).outcome == Outcome::Infeasible,
          "the same coevent is not 1-generated by this measure");
  return c.failures ? 1 : 0;
}

int reproduce_thm57a(const Ctx&) {
  Checker c;
  Gen2Triple t = construct_two_point(1, 2, 4);
  c.check(verify2(t.mu, t.phi, t.f),
          "the two-atom measure 2-generates w1 + w2 + w1*w2");
  c.check(double_integral(0b11, t.f.f, t.phi) == 3,
          "the double integral over the whole space is a1 + a2");
  c.check(double_integral(0b01, t.f.f, t.phi) == 1,
          "over an event containing only w1 it is a1");
  Gen2Triple lifted = expand_generation(t, 3);
  c.check(verify2(lifted.mu, lifted.phi, lifted.f),
          "the expansion to three points still verifies");
  c.check(restrict_to(lifted.phi, 2) == t.phi, "restriction undoes expansion");
  return c.failures ? 1 : 0;
}

int reproduce_dirac(const Ctx& ctx) {
  Checker c;
  Gen1Triple t = construct_dirac(Rational(3, 2), 0, 3);
  Survey sv = survey1(t.mu, ctx.jobs);
  c.check(sv.rows.size() == 1 &&
              sv.rows[0].phi == Coevent::evaluation_map(SampleSpace(3), 0),
          "a scaled point measure 1-generates exactly its evaluation map");
  auto lifted = lift_density2_from_density1(t.mu, t.phi, t.f);
  c.check(std::holds_alternative<Density2>(lifted),
          "its density lifts to a two-argument density");
  return c.failures ? 1 : 0;
}

int run_reproduce(const Ctx& ctx, const std::string& id) {
  std::cout << id << "\n";
  int rc;
  if (id == "example1") rc = reproduce_example1(ctx);
  else if (id == "example2") rc = reproduce_example2(ctx);
  else if (id == "example3") rc = reproduce_example3(ctx);
  else if (id == "example4") rc = reproduce_example4(ctx);
  else if (id == "example5") rc = reproduce_example5(ctx);
  else if (id == "example6") rc = reproduce_example6(ctx);
  else if (id == "example7") rc = reproduce_example7(ctx);
  else if (id == "example8") rc = reproduce_example8(ctx);
  else if (id == "example9") rc = reproduce_example9(ctx);
  else if (id == "example10") rc = reproduce_example10(ctx);
  else if (id == "thm57a") rc = reproduce_thm57a(ctx);
  else if (id == "dirac") rc = reproduce_dirac(ctx);
  else throw Error("unknown reproduction id '" + id + "'");
  std::cout << (rc == 0 ? "all checks passed" : "CHECKS FAILED") << "\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact coevent algebra, quantum integrals and generation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Ctx ctx;
  if (const char* env = std::getenv("COEVENT_CAP_N")) {
    int v = std::atoi(env);
    if (v >= 1) ctx.cap = std::min(v, 6);
  }
  app.add_option("--format", ctx.format, "output format")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_flag("--unicode", ctx.unicode, "print XOR as a circled plus");
  app.add_option("--jobs", ctx.jobs,
                 "worker threads for surveys (default: all cores)");
  app.add_option("--seed", ctx.seed, "seed for randomized commands");

  int exit_code = 0;

  // --- eval ---------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "evaluate a coevent on an event");
  struct {
    int n = 0;
    std::string coevent, event;
  } ev;
  eval->add_option("--n", ev.n, "sample space size")->required();
  eval->add_option("--coevent", ev.coevent)->required();
  eval->add_option("--event", ev.event)->required();
  eval->callback([&] {
    Coevent phi = parse_coevent(ev.coevent, ev.n);
    bool bit = phi.evaluate(parse_event(ev.event, ev.n));
    if (ctx.format == "json") {
      Json j;
      j["value"] = bit ? 1 : 0;
      emit_json(j);
    } else {
      std::cout << (bit ? 1 : 0) << "\n";
    }
  });

  // --- integrate ----------------------------------------------------------
  auto* integrate = app.add_subcommand("integrate", "quantum integral of f");
  struct {
    int n = 0;
    std::string coevent, f, f_file, over;
  } ig;
  integrate->add_option("--n", ig.n)->required();
  integrate->add_option("--coevent", ig.coevent)->required();
  integrate->add_option("--f", ig.f, "comma-separated values by outcome");
  integrate->add_option("--f-file", ig.f_file, "point function JSON");
  integrate->add_option("--over", ig.over, "restrict to an event");
  integrate->callback([&] {
    Coevent phi = parse_coevent(ig.coevent, ig.n);
    PointFunction f = load_point_function(ig.f, ig.f_file, ig.n);
    EventMask a =
        ig.over.empty() ? phi.space().full_mask() : parse_event(ig.over, ig.n);
    Rational value = q_integral_over(a, f, phi);
    if (ctx.format == "json") {
      Json j;
      j["value"] = format_rational(value);
      emit_json(j);
    } else {
      std::cout << format_rational(value) << "\n";
    }
  });

  // --- integrate2 ---------------------------------------------------------
  auto* integrate2 =
      app.add_subcommand("integrate2", "nested double integral of f(w,w')");
  struct {
    int n = 0;
    std::string coevent, f2, f2_file, over;
  } ig2;
  integrate2->add_option("--n", ig2.n)->required();
  integrate2->add_option("--coevent", ig2.coevent)->required();
  integrate2->add_option("--f2", ig2.f2,
                         "comma-separated pair values (1,1),(1,2),...,(n,n)");
  integrate2->add_option("--f2-file", ig2.f2_file, "pair function JSON");
  integrate2->add_option("--over", ig2.over, "restrict to an event");
  integrate2->callback([&] {
    Coevent phi = parse_coevent(ig2.coevent, ig2.n);
    PairFunction f = load_pair_function(ig2.f2, ig2.f2_file, ig2.n);
    EventMask a = ig2.over.empty() ? phi.space().full_mask()
                                   : parse_event(ig2.over, ig2.n);
    Rational value = double_integral(a, f, phi);
    if (ctx.format == "json") {
      Json j;
      j["value"] = format_rational(value);
      emit_json(j);
    } else {
      std::cout << format_rational(value) << "\n";
    }
  });

  // --- classify -----------------------------------------------------------
  auto* cls = app.add_subcommand("classify", "type flags of a coevent");
  struct {
    int n = 0;
    std::string coevent;
  } cl;
  cls->add_option("--n", cl.n)->required();
  cls->add_option("--coevent", cl.coevent)->required();
  cls->callback([&] {
    Coevent phi = parse_coevent(cl.coevent, cl.n);
    CoeventClass c = classify(phi);
    if (ctx.format == "json") {
      Json j;
      j["coevent"] = fmt(ctx, phi);
      j["zero"] = c.zero;
      j["classical"] = c.classical;
      j["additive"] = c.additive;
      j["multiplicative"] = c.multiplicative;
      j["quadratic"] = c.quadratic;
      j["unital"] = c.unital;
      j["type"] = type_signature_text(c);
      emit_json(j);
    } else {
      std::cout << "coevent: " << fmt(ctx, phi) << "\n"
                << "type: " << type_signature_text(c) << "\n"
                << "zero: " << (c.zero ? "yes" : "no") << "\n"
                << "classical: " << (c.classical ? "yes" : "no") << "\n"
                << "additive: " << (c.additive ? "yes" : "no") << "\n"
                << "multiplicative: " << (c.multiplicative ? "yes" : "no")
                << "\n"
                << "quadratic: " << (c.quadratic ? "yes" : "no") << "\n"
                << "unital: " << (c.unital ? "yes" : "no") << "\n";
    }
  });

  // --- atoms ----------------------------------------------------------------
  auto* atoms_cmd = app.add_subcommand("atoms", "atomic decomposition");
  struct {
    int n = 0;
    std::string coevent;
  } at;
  atoms_cmd->add_option("--n", at.n)->required();
  atoms_cmd->add_option("--coevent", at.coevent)->required();
  atoms_cmd->callback([&] {
    Coevent phi = parse_coevent(at.coevent, at.n);
    auto below = atoms_below(phi);
    if (ctx.format == "json") {
      Json j;
      j["coevent"] = fmt(ctx, phi);
      Json arr = Json::array();
      for (EventMask a : below) {
        Json item;
        item["event"] = event_key(a);
        item["atom"] = fmt(ctx, Coevent::atom(phi.space(), a));
        arr.push_back(std::move(item));
      }
      j["atoms"] = std::move(arr);
      emit_json(j);
    } else {
      for (EventMask a : below)
        std::cout << format_event(a) << ": "
                  << fmt(ctx, Coevent::atom(phi.space(), a)) << "\n";
    }
  });

  // --- embed ----------------------------------------------------------------
  auto* embed = app.add_subcommand("embed", "event embeddings");
  struct {
    std::string kind, event;
    int n = 0;
  } em;
  embed->add_option("kind", em.kind, "low | up | psi")
      ->required()
      ->check(CLI::IsMember({"low", "up", "psi"}));
  embed->add_option("--n", em.n)->required();
  embed->add_option("--event", em.event)->required();
  embed->callback([&] {
    SampleSpace sp(em.n);
    EventMask a = parse_event(em.event, em.n);
    Coevent phi = em.kind == "low"  ? Coevent::lower_star(sp, a)
                  : em.kind == "up" ? Coevent::upper_star(sp, a)
                                    : Coevent::psi(sp, a);
    if (ctx.format == "json") {
      emit_json(coevent_to_json(phi));
    } else {
      std::cout << fmt(ctx, phi) << "\n";
    }
  });

  // --- measure ---------------------------------------------------------------
  auto* measure = app.add_subcommand("measure", "q-measure tools");
  measure->require_subcommand(1);
  struct {
    std::string file;
    bool complete = false;
  } mc;
  auto* mcheck =
      measure->add_subcommand("check", "validate grade-2 additivity");
  mcheck->add_option("--file", mc.file)->required();
  mcheck->add_flag("--complete-grade2", mc.complete,
                   "fill missing |A| >= 3 values");
  mcheck->callback([&] {
    SetFunction nu = set_function_from_json(load_json(mc.file), mc.complete);
    auto violation = is_q_measure(nu);
    bool regular = !is_regular(nu).has_value();
    if (ctx.format == "json") {
      Json j;
      j["q_measure"] = !violation.has_value();
      if (violation) j["violation"] = violation->describe(nu.n);
      j["regular"] = regular;
      emit_json(j);
    } else {
      std::cout << "q-measure: " << (violation ? "no" : "yes") << "\n";
      if (violation) std::cout << violation->describe(nu.n) << "\n";
      std::cout << "regular: " << (regular ? "yes" : "no") << "\n";
    }
    if (violation) throw MathNegative{""};
  });

  struct {
    int n = 0;
    std::string singles, pairs, out;
  } mb;
  auto* mbuild =
      measure->add_subcommand("build", "fill |A| >= 3 from low-order values");
  mbuild->add_option("--n", mb.n)->required();
  mbuild->add_option("--singletons", mb.singles, "comma-separated values")
      ->required();
  mbuild->add_option("--doubletons", mb.pairs,
                     "values for (1,2),(1,3),...,(n-1,n)")
      ->required();
  mbuild->add_option("--out", mb.out, "write JSON here instead of stdout");
  mbuild->callback([&] {
    auto singles = parse_csv_rationals(mb.singles);
    auto pairs = parse_csv_rationals(mb.pairs);
    auto built = from_low_order(mb.n, singles, pairs);
    if (!built.measure)
      throw MathNegative{"construction rejected: value " +
                         format_rational(built.value) + " on " +
                         format_event(built.offending)};
    write_output(
        mb.out,
        set_function_to_json(built.measure->set_function()).dump() + "\n");
  });

  struct {
    int n = 3;
  } me;
  auto* menum =
      measure->add_subcommand("enum01", "all zero-one q-measures (n = 3)");
  menum->add_option("--n", me.n);
  menum->callback([&] {
    auto qs = enumerate_01_qmeasures(me.n);
    if (ctx.format == "json") {
      Json j;
      Json arr = Json::array();
      for (const Coevent& q : qs) {
        Json item;
        std::string bits;
        for (EventMask a : nonempty_events(3))
          bits += q.evaluate(a) ? '1' : '0';
        item["pattern"] = bits;
        item["coevent"] = fmt(ctx, q);
        arr.push_back(std::move(item));
      }
      j["count"] = qs.size();
      j["measures"] = std::move(arr);
      emit_json(j);
    } else {
      for (const Coevent& q : qs) {
        std::string bits;
        for (EventMask a : nonempty_events(3))
          bits += q.evaluate(a) ? '1' : '0';
        std::cout << bits << "  " << fmt(ctx, q) << "\n";
      }
      std::cout << "count: " << qs.size() << "\n";
    }
  });

  // --- gen1 / gen2 ------------------------------------------------------------
  struct GenArgs {
    std::string measure, coevent, f, f_file, out, mode = "exact";
    bool complete = false;
  };
  GenArgs g1, g2;

  auto* gen1 = app.add_subcommand("gen1", "1-generation");
  gen1->require_subcommand(1);
  auto* g1verify = gen1->add_subcommand("verify", "check a candidate density");
  g1verify->add_option("--measure", g1.measure)->required();
  g1verify->add_flag("--complete-grade2", g1.complete);
  g1verify->add_option("--coevent", g1.coevent)->required();
  g1verify->add_option("--f", g1.f);
  g1verify->add_option("--f-file", g1.f_file);
  g1verify->callback([&] {
    QMeasure mu = load_measure(g1.measure, g1.complete);
    Coevent phi = parse_coevent(g1.coevent, mu.n());
    Density1 f(load_point_function(g1.f, g1.f_file, mu.n()));
    bool ok = verify1(mu, phi, f);
    std::cout << (ok ? "verified" : "does not generate") << "\n";
    if (!ok) throw MathNegative{""};
  });
  auto* g1search = gen1->add_subcommand("search", "exact feasibility search");
  g1search->add_option("--measure", g1.measure)->required();
  g1search->add_flag("--complete-grade2", g1.complete);
  g1search->add_option("--coevent", g1.coevent)->required();
  g1search->callback([&] {
    QMeasure mu = load_measure(g1.measure, g1.complete);
    Coevent phi = parse_coevent(g1.coevent, mu.n());
    Gen1Report rep = search1(mu, phi);
    if (ctx.format == "json") {
      emit_json(gen1_report_to_json(rep, phi));
    } else {
      std::cout << "outcome: "
                << (rep.outcome == Outcome::Feasible ? "feasible"
                                                     : "infeasible")
                << "\n";
      if (rep.density)
        std::cout << "density: "
                  << point_function_to_json(rep.density->f)["f"].dump() << "\n";
      if (rep.chamber)
        std::cout << "chamber: " << rep.chamber->describe() << "\n";
      if (!rep.prune_reason.empty())
        std::cout << "prune: " << rep.prune_reason << "\n";
      std::cout << "chambers checked: " << rep.chambers_checked << "\n";
    }
    if (rep.outcome != Outcome::Feasible) throw MathNegative{""};
  });
  auto* g1survey = gen1->add_subcommand("survey", "search every coevent");
  g1survey->add_option("--measure", g1.measure)->required();
  g1survey->add_flag("--complete-grade2", g1.complete);
  g1survey->add_option("--out", g1.out);
  g1survey->callback([&] {
    QMeasure mu = load_measure(g1.measure, g1.complete);
    Survey sv = survey1(mu, ctx.jobs);
    write_output(g1.out, survey_to_jsonl(sv, "gen1 survey", ctx.seed, false));
  });

  auto* gen2 = app.add_subcommand("gen2", "2-generation");
  gen2->require_subcommand(1);
  auto* g2verify = gen2->add_subcommand("verify", "check a candidate density");
  g2verify->add_option("--measure", g2.measure)->required();
  g2verify->add_flag("--complete-grade2", g2.complete);
  g2verify->add_option("--coevent", g2.coevent)->required();
  g2verify->add_option("--f2", g2.f);
  g2verify->add_option("--f2-file", g2.f_file);
  g2verify->callback([&] {
    QMeasure mu = load_measure(g2.measure, g2.complete);
    Coevent phi = parse_coevent(g2.coevent, mu.n());
    Density2 f(load_pair_function(g2.f, g2.f_file, mu.n()));
    bool ok = verify2(mu, phi, f);
    std::cout << (ok ? "verified" : "does not generate") << "\n";
    if (!ok) throw MathNegative{""};
  });
  auto* g2search = gen2->add_subcommand("search", "feasibility search");
  g2search->add_option("--measure", g2.measure)->required();
  g2search->add_flag("--complete-grade2", g2.complete);
  g2search->add_option("--coevent", g2.coevent)->required();
  g2search->add_option("--mode", g2.mode)
      ->check(CLI::IsMember({"exact", "heuristic"}));
  g2search->callback([&] {
    QMeasure mu = load_measure(g2.measure, g2.complete);
    Coevent phi = parse_coevent(g2.coevent, mu.n());
    SearchMode mode =
        g2.mode == "heuristic" ? SearchMode::Heuristic : SearchMode::Exact;
    Gen2Report rep = search2(mu, phi, mode, ctx.seed);
    if (ctx.format == "json") {
      Json j = gen2_report_to_json(rep, phi);
      j["seed"] = ctx.seed;
      emit_json(j);
    } else {
      const char* name = rep.outcome == Outcome::Feasible     ? "feasible"
                         : rep.outcome == Outcome::Infeasible ? "infeasible"
                                                              : "unknown";
      std::cout << "outcome: " << name << "\n";
      if (rep.density)
        std::cout << "density: "
                  << pair_function_to_json(rep.density->f)["f2"].dump() << "\n";
      if (!rep.prune_reason.empty())
        std::cout << "prune: " << rep.prune_reason << "\n";
      std::cout << "chambers checked: " << rep.chambers_checked << "\n";
    }
    if (rep.outcome != Outcome::Feasible) throw MathNegative{""};
  });
  auto* g2survey = gen2->add_subcommand("survey", "search every coevent");
  g2survey->add_option("--measure", g2.measure)->required();
  g2survey->add_flag("--complete-grade2", g2.complete);
  g2survey->add_option("--mode", g2.mode)
      ->check(CLI::IsMember({"exact", "heuristic"}));
  g2survey->add_option("--out", g2.out);
  g2survey->callback([&] {
    QMeasure mu = load_measure(g2.measure, g2.complete);
    SearchMode mode =
        g2.mode == "heuristic" ? SearchMode::Heuristic : SearchMode::Exact;
    Survey sv = survey2(mu, mode, ctx.seed, ctx.jobs);
    write_output(g2.out, survey_to_jsonl(sv, "gen2 survey", ctx.seed, true));
  });

  // --- filters -----------------------------------------------------------------
  auto* filters = app.add_subcommand("filters", "regularity and preclusivity");
  struct {
    int n = 0;
    std::string coevent, preclude, measure;
    bool list_logic = false;
    bool complete = false;
  } fl;
  filters->add_option("--n", fl.n)->required();
  filters->add_option("--coevent", fl.coevent);
  filters->add_option("--preclude", fl.preclude,
                      "precluded events, e.g. \"{w1};{w2,w3}\"");
  filters->add_option("--measure", fl.measure);
  filters->add_flag("--complete-grade2", fl.complete);
  filters->add_flag("--list-logic", fl.list_logic,
                    "list the preclusive logic of --preclude");
  filters->callback([&] {
    bool all_yes = true;
    PrecludedSet a0{fl.n, {}};
    if (!fl.preclude.empty()) {
      std::stringstream ss(fl.preclude);
      std::string item;
      while (std::getline(ss, item, ';'))
        a0.events.push_back(parse_event(item, fl.n));
    }
    if (!fl.coevent.empty()) {
      Coevent phi = parse_coevent(fl.coevent, fl.n);
      auto violation = is_regular(phi);
      std::cout << "regular: " << (violation ? "no" : "yes");
      if (violation) std::cout << "  (" << violation->describe() << ")";
      std::cout << "\n";
      all_yes = all_yes && !violation;
      if (!fl.preclude.empty()) {
        bool p = is_preclusive(phi, a0);
        std::cout << "preclusive: " << (p ? "yes" : "no") << "\n";
        all_yes = all_yes && p;
      }
      if (!fl.measure.empty()) {
        SetFunction nu =
            set_function_from_json(load_json(fl.measure), fl.complete);
        bool p = is_mu_preclusive(phi, nu);
        std::cout << "measure-preclusive: " << (p ? "yes" : "no") << "\n";
        all_yes = all_yes && p;
      }
    }
    if (fl.list_logic) {
      auto logic = preclusive_logic(a0, ctx.cap);
      for (const Coevent& c : logic) std::cout << fmt(ctx, c) << "\n";
      std::cout << "cardinality: " << logic.size() << "\n";
    }
    if (!all_yes) throw MathNegative{""};
  });

  // --- reproduce ----------------------------------------------------------------
  auto* repro = app.add_subcommand("reproduce", "run a worked example");
  std::string repro_id;
  repro->add_option("id", repro_id, "example1..example10 | thm57a | dirac")
      ->required();
  repro->callback([&] { exit_code = run_reproduce(ctx, repro_id); });

  // --- probe-open -----------------------------------------------------------------
  auto* probe = app.add_subcommand(
      "probe-open",
      "explore 2-generation of the three-point parity coevent w1 + w2 + w3");
  struct {
    std::string measure;
    int samples = 20;
    bool complete = false;
  } pr;
  probe->add_option("--measure", pr.measure, "probe one measure from a file");
  probe->add_option("--samples", pr.samples, "random q-measures to probe");
  probe->add_flag("--complete-grade2", pr.complete);
  probe->callback([&] {
    Coevent phi = parse_coevent("w1 + w2 + w3", 3);
    if (!pr.measure.empty()) {
      QMeasure mu = load_measure(pr.measure, pr.complete);
      if (mu.n() != 3) throw Error("the probe runs on three-point measures");
      Gen2Report rep = search2(mu, phi);
      emit_json(gen2_report_to_json(rep, phi));
      if (rep.outcome != Outcome::Feasible) throw MathNegative{""};
      return;
    }
    std::mt19937_64 rng(ctx.seed);
    int feasible = 0, infeasible = 0;
    for (int t = 0; t < pr.samples; ++t) {
      QMeasure mu = [&] {
        while (true) {
          std::vector<Rational> singles(3), pairs(3);
          for (auto& s : singles) s = 1 + static_cast<int>(rng() % 4);
          for (auto& p : pairs) p = static_cast<int>(rng() % 7);
          auto built = from_low_order(3, singles, pairs);
          if (built.measure) return *built.measure;
        }
      }();
      Gen2Report rep = search2(mu, phi);
      Json line;
      line["measure"] = set_function_to_json(mu.set_function())["mu"];
      line["outcome"] =
          rep.outcome == Outcome::Feasible ? "feasible" : "infeasible";
      if (rep.density)
        line["density"] = pair_function_to_json(rep.density->f)["f2"];
      std::cout << line.dump() << "\n";
      (rep.outcome == Outcome::Feasible ? feasible : infeasible)++;
    }
    Json summary;
    summary["type"] = "summary";
    summary["version"] = kVersion;
    summary["seed"] = ctx.seed;
    summary["samples"] = pr.samples;
    summary["feasible"] = feasible;
    summary["infeasible"] = infeasible;
    std::cout << summary.dump() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const MathNegative& e) {
    if (!e.message.empty()) std::cerr << e.message << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
