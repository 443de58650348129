#include "coevent/generation.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>
#include <type_traits>
#include <utility>

#include "coevent/linear_system.hpp"

namespace coevent {

Density1::Density1(PointFunction f_) : f(std::move(f_)) {
  if (!f.strictly_positive())
    throw Error("a density must be strictly positive");
}

Density2::Density2(PairFunction f_) : f(std::move(f_)) {
  if (!f.strictly_positive())
    throw Error("a density must be strictly positive");
}

bool verify1(const QMeasure& mu, const Coevent& phi, const Density1& f) {
  if (mu.n() != phi.n() || f.f.n != phi.n())
    throw Error("verify1 arguments live on different sample spaces");
  const EventMask full = phi.space().full_mask();
  for (EventMask a = 1; a <= full; ++a)
    if (q_integral_over(a, f.f, phi) != mu(a)) return false;
  return true;
}

bool verify2(const QMeasure& mu, const Coevent& phi, const Density2& f) {
  if (mu.n() != phi.n() || f.f.n != phi.n())
    throw Error("verify2 arguments live on different sample spaces");
  const EventMask full = phi.space().full_mask();
  for (EventMask a = 1; a <= full; ++a)
    if (double_integral(a, f.f, phi) != mu(a)) return false;
  return true;
}

PinResult pin_density1(const QMeasure& mu, const Coevent& phi) {
  if (mu.n() != phi.n())
    throw Error("measure and coevent live on different sample spaces");
  Pinned pinned;
  for (int i = 0; i < mu.n(); ++i) {
    const EventMask w = EventMask{1} << i;
    const bool mu_zero = mu(w) == 0;
    const bool phi_zero = !phi.evaluate(w);
    if (mu_zero != phi_zero)
      return EarlyInfeasible{"singleton " + format_event(w) + " has " +
                             (mu_zero ? "measure 0 but truth value 1"
                                      : "positive measure but truth value 0")};
    if (!phi_zero) pinned.values.emplace_back(i, mu(w));
  }
  if (!phi.is_zero()) {
    int min_degree = phi.n() + 1;
    for (EventMask m : phi.polynomial())
      min_degree = std::min(min_degree, popcount(m));
    if (min_degree >= 3)
      return EarlyInfeasible{"every monomial has degree >= 3"};
  }
  return pinned;
}

namespace {

// The integral over A as a linear form in the chamber's level values:
// sum over levels j present in A of (a_j - a_prev) phi(T_j), with T_j the
// part of A at levels >= j.
LinExpr chamber_integral_form(EventMask a, const WeakOrder& w,
                              const Coevent& phi, int nvars) {
  const int k = static_cast<int>(w.blocks.size());
  std::vector<EventMask> in_block(k, 0);
  for (int j = 0; j < k; ++j)
    for (int item : w.blocks[j])
      if (a & (EventMask{1} << item)) in_block[j] |= EventMask{1} << item;
  std::vector<EventMask> tail(k + 1, 0);
  for (int j = k; j-- > 0;) tail[j] = tail[j + 1] | in_block[j];
  LinExpr acc(nvars);
  int prev = -1;
  for (int j = 0; j < k; ++j) {
    if (!in_block[j]) continue;
    if (phi.evaluate(tail[j])) {
      acc.coeffs[j] += 1;
      if (prev >= 0) acc.coeffs[prev] -= 1;
    }
    prev = j;
  }
  return acc;
}

}  // namespace

Gen1Report search1(const QMeasure& mu, const Coevent& phi, WitnessStyle style) {
  if (mu.n() != phi.n())
    throw Error("measure and coevent live on different sample spaces");
  const int n = mu.n();
  if (n > 4) throw Error("exact 1-generation search is capped at n = 4");
  Gen1Report rep;
  PinResult pin = pin_density1(mu, phi);
  if (auto* early = std::get_if<EarlyInfeasible>(&pin)) {
    rep.outcome = Outcome::Infeasible;
    rep.prune_reason = early->reason;
    return rep;
  }
  const auto& pins = std::get<Pinned>(pin).values;
  std::vector<int> items(n);
  std::iota(items.begin(), items.end(), 0);
  const EventMask full = phi.space().full_mask();
  for (const WeakOrder& w : all_weak_orders(items)) {
    ++rep.chambers_checked;
    const int k = static_cast<int>(w.blocks.size());
    LinearSystem sys(k);
    sys.add_positive(LinExpr::var(0, k));
    for (int j = 0; j + 1 < k; ++j)
      sys.add_positive(LinExpr::var(j + 1, k) - LinExpr::var(j, k));
    for (const auto& [outcome, val] : pins)
      sys.add_equal(LinExpr::var(w.level_of(outcome), k), val);
    for (EventMask a = 1; a <= full; ++a)
      sys.add_equal(chamber_integral_form(a, w, phi, k), mu(a));
    if (auto x = sys.solve(style)) {
      PointFunction f = PointFunction::constant(n, 0);
      for (int i = 0; i < n; ++i) f.values[i] = (*x)[w.level_of(i)];
      Density1 d(std::move(f));
      if (!verify1(mu, phi, d))
        throw Error("internal: chamber witness failed re-verification");
      rep.outcome = Outcome::Feasible;
      rep.density = std::move(d);
      rep.chamber = w;
      return rep;
    }
  }
  rep.outcome = Outcome::Infeasible;
  return rep;
}

namespace {

// A weak order over a set of items with an optional block pinned to zero;
// the branching unit of the exact 2-generation search.
struct Pattern {
  std::vector<int> zero_items;
  std::vector<std::vector<int>> blocks;  // ascending positive blocks
};

std::vector<Pattern> patterns_for(const std::vector<int>& items,
                                  bool allow_zero) {
  std::vector<Pattern> out;
  const int m = static_cast<int>(items.size());
  const unsigned zlimit = allow_zero ? (1u << m) : 1u;
  for (unsigned z = 0; z < zlimit; ++z) {
    std::vector<int> zero, rest;
    for (int i = 0; i < m; ++i)
      (((z >> i) & 1) ? zero : rest).push_back(items[i]);
    for (WeakOrder& w : all_weak_orders(rest))
      out.push_back(Pattern{zero, std::move(w.blocks)});
  }
  return out;
}

void add_pattern_constraints(LinearSystem& sys, const Pattern& p,
                             const std::vector<LinExpr>& forms) {
  for (int it : p.zero_items) sys.add_equal(forms[it]);
  const LinExpr* prev = nullptr;
  for (const auto& blk : p.blocks) {
    const LinExpr& rep = forms[blk[0]];
    for (std::size_t i = 1; i < blk.size(); ++i)
      sys.add_equal(forms[blk[i]] - rep);
    if (prev)
      sys.add_positive(rep - *prev);
    else
      sys.add_positive(rep);
    prev = &rep;
  }
}

// Level-set integral of values arranged by the pattern (zero items carry
// value 0 and drop out of the level sets).
LinExpr pattern_integral(const Pattern& p, const std::vector<LinExpr>& forms,
                         const Coevent& phi, int nvars) {
  const int levels = static_cast<int>(p.blocks.size());
  std::vector<EventMask> tail(levels + 1, 0);
  for (int j = levels; j-- > 0;) {
    tail[j] = tail[j + 1];
    for (int it : p.blocks[j]) tail[j] |= EventMask{1} << it;
  }
  LinExpr acc(nvars);
  const LinExpr* prev = nullptr;
  for (int j = 0; j < levels; ++j) {
    const LinExpr& rep = forms[p.blocks[j][0]];
    if (phi.evaluate(tail[j])) {
      acc += rep;
      if (prev) acc -= *prev;
    }
    prev = &rep;
  }
  return acc;
}

class Search2Engine {
 public:
  Search2Engine(const QMeasure& mu, const Coevent& phi, WitnessStyle style)
      : mu_(mu),
        phi_(phi),
        n_(mu.n()),
        nvars_(n_ * (n_ + 1) / 2),
        style_(style) {}

  Gen2Report run() {
    Gen2Report rep;
    for (int i = 0; i < n_; ++i) {
      const EventMask w = EventMask{1} << i;
      const bool mu_zero = mu_(w) == 0;
      const bool phi_zero = !phi_.evaluate(w);
      if (mu_zero != phi_zero) {
        rep.outcome = Outcome::Infeasible;
        rep.prune_reason =
            "singleton " + format_event(w) + " has " +
            (mu_zero ? "measure 0 but truth value 1"
                     : "positive measure but truth value 0");
        return rep;
      }
    }
    if (!phi_.is_zero()) {
      int min_degree = n_ + 1;
      for (EventMask m : phi_.polynomial())
        min_degree = std::min(min_degree, popcount(m));
      if (min_degree >= 3) {
        rep.outcome = Outcome::Infeasible;
        rep.prune_reason = "every monomial has degree >= 3";
        return rep;
      }
    }

    events_ = nonempty_events(n_);

    LinearSystem base(nvars_);
    for (int v = 0; v < nvars_; ++v)
      base.add_positive(LinExpr::var(v, nvars_));
    for (int i = 0; i < n_; ++i)
      if (phi_.evaluate(EventMask{1} << i))
        base.add_equal(LinExpr::var(pair_index(i, i, n_), nvars_),
                       mu_(EventMask{1} << i));
    if (base.feasible()) dfs(base, 0);

    if (found_) {
      rep.outcome = Outcome::Feasible;
      rep.density = std::move(found_);
    } else {
      rep.outcome = Outcome::Infeasible;
    }
    rep.chambers_checked = chambers_;
    return rep;
  }

 private:
  const QMeasure& mu_;
  const Coevent& phi_;
  int n_;
  int nvars_;
  WitnessStyle style_;
  std::vector<EventMask> events_;
  std::uint64_t chambers_ = 0;
  std::optional<Density2> found_;

  void dfs(const LinearSystem& sys, std::size_t t) {
    if (found_) return;
    if (t == events_.size()) {
      leaf(sys);
      return;
    }
    const EventMask a = events_[t];
    if (popcount(a) == 1) {
      // The singleton value is v(w,w) phi(w): covered by the diagonal pins
      // and the upfront zero/zero consistency check.
      dfs(sys, t + 1);
      return;
    }
    std::vector<LinExpr> gforms(n_, LinExpr(nvars_));
    branch_column(sys, a, outcomes_of(a), 0, gforms, t);
  }

  void branch_column(const LinearSystem& sys, EventMask a,
                     const std::vector<int>& cols, std::size_t ci,
                     std::vector<LinExpr>& gforms, std::size_t t) {
    if (found_) return;
    if (ci == cols.size()) {
      branch_outer(sys, a, cols, gforms, t);
      return;
    }
    const int col = cols[ci];
    std::vector<LinExpr> vforms(n_, LinExpr(nvars_));
    for (int row : cols) vforms[row] = LinExpr::var(pair_index(row, col, n_), nvars_);
    for (const Pattern& p : patterns_for(cols, /*allow_zero=*/false)) {
      LinearSystem s2 = sys;
      add_pattern_constraints(s2, p, vforms);
      ++chambers_;
      if (!s2.feasible()) continue;
      gforms[col] = pattern_integral(p, vforms, phi_, nvars_);
      branch_column(s2, a, cols, ci + 1, gforms, t);
      if (found_) return;
    }
  }

  void branch_outer(const LinearSystem& sys, EventMask a,
                    const std::vector<int>& cols,
                    const std::vector<LinExpr>& gforms, std::size_t t) {
    for (const Pattern& p : patterns_for(cols, /*allow_zero=*/true)) {
      LinearSystem s2 = sys;
      add_pattern_constraints(s2, p, gforms);
      s2.add_equal(pattern_integral(p, gforms, phi_, nvars_), mu_(a));
      ++chambers_;
      if (!s2.feasible()) continue;
      dfs(s2, t + 1);
      if (found_) return;
    }
  }

  void leaf(const LinearSystem& sys) {
    auto x = sys.solve(style_);
    if (!x) return;
    PairFunction f(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) f.at(i, j) = (*x)[pair_index(i, j, n_)];
    Density2 d(std::move(f));
    if (!verify2(mu_, phi_, d))
      throw Error("internal: chamber witness failed re-verification");
    found_ = std::move(d);
  }
};

Gen2Report search2_heuristic(const QMeasure& mu, const Coevent& phi,
                             std::uint64_t seed) {
  Gen2Report rep;
  rep.heuristic = true;
  rep.outcome = Outcome::Unknown;
  const int n = mu.n();
  for (int i = 0; i < n; ++i) {
    const EventMask w = EventMask{1} << i;
    if ((mu(w) == 0) != !phi.evaluate(w)) return rep;  // no witness can exist
  }

  const int nvars = n * (n + 1) / 2;
  PairFunction f(n);
  std::vector<int> free_vars;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == j && phi.evaluate(EventMask{1} << i))
        f.at(i, i) = mu(EventMask{1} << i);
      else
        free_vars.push_back(pair_index(i, j, n));
    }

  // Candidate values derived from the measure, plus small rationals.
  std::vector<std::vector<Rational>> pools(nvars);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      auto& pool = pools[pair_index(i, j, n)];
      const EventMask pair = (EventMask{1} << i) | (EventMask{1} << j);
      const Rational mi = mu(EventMask{1} << i), mj = mu(EventMask{1} << j);
      const std::vector<Rational> candidates = {
          mu(pair),          Rational((mu(pair) + mi + mj) / 2),
          Rational(mi + mj), std::max(mi, mj),
          Rational((mi + mj) / 2), mu(phi.space().full_mask()),
          Rational(1)};
      for (const Rational& c : candidates)
        if (c > 0) pool.push_back(c);
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    }

  const EventMask full = phi.space().full_mask();
  auto l1_error = [&](const PairFunction& cand) {
    Rational err = 0;
    for (EventMask a = 1; a <= full; ++a)
      err += abs(double_integral(a, cand, phi) - mu(a));
    return err;
  };

  std::mt19937_64 rng(seed);
  auto random_rational = [&]() {
    std::uniform_int_distribution<int> num(1, 8), den(1, 4);
    return Rational(num(rng), den(rng));
  };

  const int kRestarts = 24;
  for (int t = 0; t < kRestarts; ++t) {
    PairFunction cand = f;
    for (int v : free_vars) {
      const auto& pool = pools[v];
      if (!pool.empty() && rng() % 2 == 0)
        cand.values[v] = pool[rng() % pool.size()];
      else
        cand.values[v] = random_rational();
    }
    Rational err = l1_error(cand);
    // Coordinate sweeps over pool values and nearby rationals.
    for (int sweep = 0; sweep < 3 && err != 0; ++sweep) {
      bool improved = false;
      for (int v : free_vars) {
        Rational best = cand.values[v];
        Rational best_err = err;
        std::vector<Rational> trials = pools[v];
        for (const Rational& d :
             {Rational(1), Rational(1, 2), Rational(1, 4)}) {
          trials.push_back(cand.values[v] + d);
          if (cand.values[v] - d > 0) trials.push_back(cand.values[v] - d);
        }
        for (const Rational& tr : trials) {
          if (tr <= 0) continue;
          Rational saved = cand.values[v];
          cand.values[v] = tr;
          Rational e = l1_error(cand);
          if (e < best_err) {
            best_err = e;
            best = tr;
            improved = true;
          }
          cand.values[v] = saved;
        }
        cand.values[v] = best;
        err = best_err;
      }
      if (!improved) break;
    }
    if (err == 0) {
      Density2 d(std::move(cand));
      if (!verify2(mu, phi, d))
        throw Error("internal: zero-error candidate failed verification");
      rep.outcome = Outcome::Feasible;
      rep.density = std::move(d);
      return rep;
    }
  }
  return rep;
}

}  // namespace

Gen2Report search2(const QMeasure& mu, const Coevent& phi, SearchMode mode,
                   std::uint64_t seed) {
  if (mu.n() != phi.n())
    throw Error("measure and coevent live on different sample spaces");
  if (mode == SearchMode::Heuristic) return search2_heuristic(mu, phi, seed);
  if (mu.n() > 3) throw Error("exact 2-generation search is capped at n = 3");
  return Search2Engine(mu, phi, WitnessStyle::Mid).run();
}

namespace {

template <class SearchFn>
Survey run_survey(const QMeasure& mu, int jobs, SearchFn&& search) {
  const std::uint64_t count = coevent_index_count(mu.n());
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), count));

  struct Shard {
    std::uint64_t feasible = 0, infeasible = 0, unknown = 0, chambers = 0;
    std::vector<SurveyRow> rows;
  };
  std::vector<Shard> shards(jobs);
  const SampleSpace sp(mu.n());

  using Report = decltype(search(std::declval<const Coevent&>(),
                                 std::uint64_t{0}));
  constexpr bool kGen2 = std::is_same_v<Report, Gen2Report>;

  auto work = [&](int shard_idx) {
    Shard& shard = shards[shard_idx];
    for (std::uint64_t k = shard_idx; k < count;
         k += static_cast<std::uint64_t>(jobs)) {
      Coevent phi = coevent_at(sp, k);
      SurveyRow row;
      row.index = k;
      row.phi = phi;
      Outcome outcome;
      if constexpr (kGen2) {
        row.gen2 = search(phi, k);
        outcome = row.gen2.outcome;
        shard.chambers += row.gen2.chambers_checked;
      } else {
        row.gen1 = search(phi, k);
        outcome = row.gen1.outcome;
        shard.chambers += row.gen1.chambers_checked;
      }
      switch (outcome) {
        case Outcome::Feasible:
          ++shard.feasible;
          shard.rows.push_back(std::move(row));
          break;
        case Outcome::Infeasible:
          ++shard.infeasible;
          break;
        case Outcome::Unknown:
          ++shard.unknown;
          break;
      }
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int s = 0; s < jobs; ++s) threads.emplace_back(work, s);
    for (auto& th : threads) th.join();
  }

  Survey out;
  out.coevents = count;
  for (auto& shard : shards) {
    out.feasible += shard.feasible;
    out.infeasible += shard.infeasible;
    out.unknown += shard.unknown;
    out.chambers_checked += shard.chambers;
    for (auto& row : shard.rows) out.rows.push_back(std::move(row));
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const SurveyRow& a, const SurveyRow& b) { return a.index < b.index; });
  return out;
}

}  // namespace

Survey survey1(const QMeasure& mu, int jobs) {
  if (mu.n() > 4) throw Error("survey1 is capped at n = 4");
  return run_survey(mu, jobs, [&](const Coevent& phi, std::uint64_t) {
    return search1(mu, phi);
  });
}

Survey survey2(const QMeasure& mu, SearchMode mode, std::uint64_t seed,
               int jobs) {
  if (mu.n() > 3) throw Error("survey2 is capped at n = 3");
  return run_survey(mu, jobs, [&](const Coevent& phi, std::uint64_t k) {
    return search2(mu, phi, mode, seed ^ (k * 0x9e3779b97f4a7c15ULL));
  });
}

LiftResult lift_density2_from_density1(const QMeasure& mu, const Coevent& phi,
                                       const Density1& f) {
  if (!verify1(mu, phi, f))
    throw Error("lift requires a verified 1-generating density");
  const EventMask full = phi.space().full_mask();
  for (EventMask a = 1; a <= full; ++a)
    if (mu(a) != 0 && !phi.evaluate(a)) return LiftRefusal{a};
  PairFunction g(phi.n());
  for (int i = 0; i < phi.n(); ++i)
    for (int j = i; j < phi.n(); ++j)
      g.at(i, j) = (f.f.values[i] + f.f.values[j]) / 2;
  Density2 d(std::move(g));
  if (!verify2(mu, phi, d))
    throw Error("internal: lifted density failed verification");
  return d;
}

Gen1Triple expand_generation(const Gen1Triple& t, int n) {
  if (!verify1(t.mu, t.phi, t.f))
    throw Error("expansion requires a verified generating triple");
  QMeasure mu_hat = QMeasure::create(expand_to(t.mu.set_function(), n));
  Coevent phi_hat = expand_to(t.phi, n);
  Rational big = *std::max_element(t.f.f.values.begin(), t.f.f.values.end());
  PointFunction f_hat = PointFunction::constant(n, big);
  for (int i = 0; i < t.f.f.n; ++i) f_hat.values[i] = t.f.f.values[i];
  Gen1Triple out{std::move(mu_hat), std::move(phi_hat),
                 Density1(std::move(f_hat))};
  if (!verify1(out.mu, out.phi, out.f))
    throw Error("internal: expanded triple failed verification");
  return out;
}

Gen2Triple expand_generation(const Gen2Triple& t, int n) {
  if (!verify2(t.mu, t.phi, t.f))
    throw Error("expansion requires a verified generating triple");
  const int m = t.mu.n();
  QMeasure mu_hat = QMeasure::create(expand_to(t.mu.set_function(), n));
  Coevent phi_hat = expand_to(t.phi, n);
  Rational big = *std::max_element(t.f.f.values.begin(), t.f.f.values.end());
  const EventMask small_full = (EventMask{1} << m) - 1;
  for (int i = 0; i < m; ++i)
    for (EventMask a = 1; a <= small_full; ++a)
      big = std::max(big, q_integral_over(a, t.f.f.column(i), t.phi));
  PairFunction f_hat(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      f_hat.at(i, j) = (j < m) ? t.f.f.at(i, j) : big;
  Gen2Triple out{std::move(mu_hat), std::move(phi_hat),
                 Density2(std::move(f_hat))};
  if (!verify2(out.mu, out.phi, out.f))
    throw Error("internal: expanded triple failed verification");
  return out;
}

namespace {

void require(bool ok, const std::string& inequality) {
  if (!ok) throw Error("constraint violated: " + inequality);
}

}  // namespace

Gen2Triple construct_two_point(const Rational& a1, const Rational& a2,
                               const Rational& big, int n) {
  require(a1 > 0, "a1 > 0");
  require(a2 > 0, "a2 > 0");
  require(big > a1 + a2, "M > a1 + a2");
  if (n < 2 || n > 5) throw Error("two-point construction needs 2 <= n <= 5");
  SampleSpace sp(n);
  SetFunction nu(n);
  for (EventMask a = 1; a <= sp.full_mask(); ++a)
    nu.at(a) = a1 * ((a & 1) ? 1 : 0) + a2 * ((a & 2) ? 1 : 0);
  QMeasure mu = QMeasure::create(std::move(nu));
  Coevent phi = Coevent::from_polynomial(sp, {1, 2, 3});
  PairFunction f(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) f.at(i, j) = big;
  f.at(0, 0) = a1;
  f.at(1, 1) = a2;
  f.at(0, 1) = a1 + a2;
  Gen2Triple out{std::move(mu), std::move(phi), Density2(std::move(f))};
  if (!verify2(out.mu, out.phi, out.f))
    throw Error("internal: two-point construction failed verification");
  return out;
}

Gen2Triple construct_midpoint_pair(const Rational& mu1, const Rational& mu2,
                                   const Rational& mu_omega) {
  require(mu1 > 0, "mu(w1) > 0");
  require(mu2 > 0, "mu(w2) > 0");
  require(mu_omega >= 0, "mu(Omega) >= 0");
  require(mu_omega <= abs(mu2 - mu1),
          "mu(Omega) <= max(mu(w1),mu(w2)) - min(mu(w1),mu(w2))");
  SampleSpace sp(2);
  SetFunction nu(2);
  nu.at(1) = mu1;
  nu.at(2) = mu2;
  nu.at(3) = mu_omega;
  QMeasure mu = QMeasure::create(std::move(nu));
  Coevent phi = Coevent::from_polynomial(sp, {1, 2});
  PairFunction f(2);
  f.at(0, 0) = mu1;
  f.at(1, 1) = mu2;
  f.at(0, 1) = (mu_omega + mu1 + mu2) / 2;
  Gen2Triple out{std::move(mu), std::move(phi), Density2(std::move(f))};
  if (!verify2(out.mu, out.phi, out.f))
    throw Error("internal: midpoint construction failed verification");
  return out;
}

Gen2Triple construct_three_point(const Rational& mu1, const Rational& mu2,
                                 const Rational& mu12) {
  require(mu1 > 0, "mu(w1) > 0");
  require(mu1 <= mu2, "mu(w1) <= mu(w2)");
  const Rational mu3 = mu1 + mu2;
  require(mu12 >= mu3, "mu({w1,w2}) >= mu(w3)");
  SampleSpace sp(3);
  SetFunction nu(3);
  nu.at(0b001) = mu1;
  nu.at(0b010) = mu2;
  nu.at(0b100) = mu3;
  nu.at(0b011) = mu12;
  nu.at(0b101) = mu2;
  nu.at(0b110) = mu1;
  nu.at(0b111) = mu12 - mu3;
  QMeasure mu = QMeasure::create(std::move(nu));
  Coevent phi = Coevent::from_polynomial(sp, {0b001, 0b010, 0b100, 0b011});
  PairFunction f(3);
  f.at(0, 0) = mu1;
  f.at(1, 1) = mu2;
  f.at(2, 2) = mu3;
  f.at(0, 1) = mu12;
  f.at(0, 2) = mu12;
  f.at(1, 2) = mu12;
  Gen2Triple out{std::move(mu), std::move(phi), Density2(std::move(f))};
  if (!verify2(out.mu, out.phi, out.f))
    throw Error("internal: three-point construction failed verification");
  return out;
}

Gen1Triple construct_dirac(const Rational& c, int outcome, int n) {
  require(c > 0, "c > 0");
  SampleSpace sp(n);
  if (outcome < 0 || outcome >= n) throw Error("outcome index out of range");
  SetFunction nu(n);
  for (EventMask a = 1; a <= sp.full_mask(); ++a)
    nu.at(a) = (a & (EventMask{1} << outcome)) ? c : Rational(0);
  QMeasure mu = QMeasure::create(std::move(nu));
  Coevent phi = Coevent::evaluation_map(sp, outcome);
  Gen1Triple out{std::move(mu), std::move(phi),
                 Density1(PointFunction::constant(n, c))};
  if (!verify1(out.mu, out.phi, out.f))
    throw Error("internal: dirac construction failed verification");
  return out;
}

}  // namespace coevent
