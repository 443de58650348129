#include "coevent/coevent.hpp"

#include <algorithm>

namespace coevent {

void xor_subset_transform(TruthTable& bits, int n) {
  const std::size_t size = std::size_t{1} << n;
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t b = 0; b < size; ++b)
      if (b & bit) bits[b] ^= bits[b ^ bit];
  }
}

void Coevent::check_same_space(const Coevent& other) const {
  if (n_ != other.n_)
    throw Error("coevents live on different sample spaces (" +
                std::to_string(n_) + " vs " + std::to_string(other.n_) + ")");
}

void Coevent::sync_poly_from_table() {
  TruthTable ind = table_;
  xor_subset_transform(ind, n_);
  poly_.clear();
  for (std::size_t m = 1; m < ind.size(); ++m)
    if (ind[m]) poly_.push_back(static_cast<EventMask>(m));
  std::sort(poly_.begin(), poly_.end(), canonical_mask_less);
}

void Coevent::sync_table_from_poly() {
  table_.resize(std::size_t{1} << n_);
  table_.reset();
  for (EventMask m : poly_) table_[m] = true;
  xor_subset_transform(table_, n_);
}

Coevent Coevent::zero(const SampleSpace& sp) {
  Coevent c;
  c.n_ = sp.n;
  c.table_.resize(sp.num_events());
  return c;
}

Coevent Coevent::one(const SampleSpace& sp) {
  std::vector<EventMask> all;
  for (EventMask m = 1; m <= sp.full_mask(); ++m) all.push_back(m);
  return from_polynomial(sp, std::move(all));
}

Coevent Coevent::from_table(const SampleSpace& sp, TruthTable table) {
  if (table.size() != sp.num_events())
    throw Error("truth table size does not match the sample space");
  if (table[0]) throw Error("a coevent must vanish on the empty event");
  Coevent c;
  c.n_ = sp.n;
  c.table_ = std::move(table);
  c.sync_poly_from_table();
  return c;
}

Coevent Coevent::from_polynomial(const SampleSpace& sp,
                                 std::vector<EventMask> monomials) {
  std::sort(monomials.begin(), monomials.end(), canonical_mask_less);
  monomials.erase(std::unique(monomials.begin(), monomials.end()),
                  monomials.end());
  for (EventMask m : monomials) {
    if (m == 0) throw Error("polynomials have no constant term (empty monomial)");
    sp.check_event(m);
  }
  Coevent c;
  c.n_ = sp.n;
  c.poly_ = std::move(monomials);
  c.sync_table_from_poly();
  return c;
}

Coevent Coevent::evaluation_map(const SampleSpace& sp, int outcome) {
  if (outcome < 0 || outcome >= sp.n)
    throw Error("outcome index out of range");
  return from_polynomial(sp, {EventMask{1} << outcome});
}

Coevent Coevent::atom(const SampleSpace& sp, EventMask a) {
  sp.check_event(a);
  if (a == 0) throw Error("atoms are indexed by nonempty events");
  TruthTable t(sp.num_events());
  t[a] = true;
  return from_table(sp, std::move(t));
}

Coevent Coevent::lower_star(const SampleSpace& sp, EventMask a) {
  sp.check_event(a);
  TruthTable t(sp.num_events());
  // Walk the subsets of a directly.
  for (EventMask b = a; b != 0; b = (b - 1) & a) t[b] = true;
  return from_table(sp, std::move(t));
}

Coevent Coevent::upper_star(const SampleSpace& sp, EventMask a) {
  sp.check_event(a);
  // The sum of all nonempty monomials inside a.
  std::vector<EventMask> monos;
  for (EventMask b = a; b != 0; b = (b - 1) & a) monos.push_back(b);
  if (monos.empty()) return zero(sp);
  return from_polynomial(sp, std::move(monos));
}

Coevent Coevent::psi(const SampleSpace& sp, EventMask a) {
  sp.check_event(a);
  if (a == 0) throw Error("psi is indexed by nonempty events");
  return from_polynomial(sp, {a});
}

bool Coevent::evaluate(EventMask a) const {
  space().check_event(a);
  return table_[a];
}

Coevent Coevent::add(const Coevent& other) const {
  check_same_space(other);
  Coevent c;
  c.n_ = n_;
  c.table_ = table_ ^ other.table_;
  c.sync_poly_from_table();
  return c;
}

Coevent Coevent::multiply(const Coevent& other) const {
  check_same_space(other);
  Coevent c;
  c.n_ = n_;
  c.table_ = table_ & other.table_;
  c.sync_poly_from_table();
  return c;
}

Coevent Coevent::complement() const {
  return one(space()).add(*this);
}

Coevent Coevent::join(const Coevent& other) const {
  check_same_space(other);
  Coevent c;
  c.n_ = n_;
  c.table_ = table_ | other.table_;
  c.sync_poly_from_table();
  return c;
}

bool Coevent::leq(const Coevent& other) const {
  check_same_space(other);
  return (table_ & ~other.table_).none();
}

bool coevent_less(const Coevent& a, const Coevent& b) {
  if (a.n() != b.n()) return a.n() < b.n();
  return a.table() < b.table();
}

std::vector<EventMask> atoms_below(const Coevent& phi) {
  std::vector<EventMask> out;
  for (std::size_t m = 1; m < phi.table().size(); ++m)
    if (phi.table()[m]) out.push_back(static_cast<EventMask>(m));
  std::sort(out.begin(), out.end(), canonical_mask_less);
  return out;
}

std::vector<Coevent> decompose(const Coevent& phi) {
  std::vector<Coevent> out;
  for (EventMask a : atoms_below(phi)) out.push_back(Coevent::atom(phi.space(), a));
  return out;
}

CoeventClass classify(const Coevent& phi) {
  CoeventClass c;
  const auto& poly = phi.polynomial();
  c.zero = poly.empty();
  c.additive = true;
  c.quadratic = true;
  for (EventMask m : poly) {
    int deg = popcount(m);
    if (deg > 1) c.additive = false;
    if (deg > 2) c.quadratic = false;
  }
  c.multiplicative = poly.size() <= 1;
  c.classical = poly.size() == 1 && popcount(poly[0]) == 1;
  c.unital = phi.evaluate(phi.space().full_mask());
  c.type_signature = poly;
  return c;
}

BigInt count_coevents(int n) {
  if (n < 1 || n > 6)
    throw Error("coevent counting is capped at n = 6");
  return BigInt(1) << ((1 << n) - 1);
}

std::uint64_t coevent_index_count(int n) {
  if (n < 1 || n > 6)
    throw Error("coevent enumeration indices are capped at n = 6");
  return std::uint64_t{1} << ((1 << n) - 1);
}

Coevent coevent_at(const SampleSpace& sp, std::uint64_t index) {
  TruthTable t(sp.num_events());
  // Bit A of the table, A >= 1, is bit A-1 of the index; the empty-event
  // bit stays 0, so ascending index is ascending table value.
  for (std::size_t a = 1; a < t.size(); ++a)
    if (index & (std::uint64_t{1} << (a - 1))) t[a] = true;
  return Coevent::from_table(sp, std::move(t));
}

void for_each_coevent(const SampleSpace& sp,
                      const std::function<void(const Coevent&)>& fn, int cap) {
  if (sp.n > cap)
    throw Error("enumeration cap exceeded: n = " + std::to_string(sp.n) +
                " > cap = " + std::to_string(cap));
  const std::uint64_t count = coevent_index_count(sp.n);
  for (std::uint64_t k = 0; k < count; ++k) fn(coevent_at(sp, k));
}

}  // namespace coevent
