#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <functional>
#include <vector>

#include "coevent/rational.hpp"
#include "coevent/space.hpp"

namespace coevent {

// Truth table of a coevent: bit at position A (the event mask) is phi(A).
using TruthTable = boost::dynamic_bitset<>;

// In-place XOR transform over the subset lattice; it is an involution, and
// it converts between a truth table and the indicator of the coevent's
// monomial set (the GF(2) polynomial in the evaluation maps).
void xor_subset_transform(TruthTable& bits, int n);

// A {0,1}-valued function on events with phi(empty) = 0, kept in the dual
// representation: full truth table and monomial set, eagerly synchronized.
class Coevent {
 public:
  Coevent() = default;

  static Coevent zero(const SampleSpace& sp);
  static Coevent one(const SampleSpace& sp);
  static Coevent from_table(const SampleSpace& sp, TruthTable table);
  static Coevent from_polynomial(const SampleSpace& sp,
                                 std::vector<EventMask> monomials);
  // w_k^* for a 0-based outcome.
  static Coevent evaluation_map(const SampleSpace& sp, int outcome);
  // phi_A: indicator of the single event A (A nonempty).
  static Coevent atom(const SampleSpace& sp, EventMask a);
  // A_*(B) = 1 iff {} != B subset A.
  static Coevent lower_star(const SampleSpace& sp, EventMask a);
  // A^*(B) = 1 iff B meets A.
  static Coevent upper_star(const SampleSpace& sp, EventMask a);
  // psi_A(B) = 1 iff A subset B (A nonempty); the monomial on A.
  static Coevent psi(const SampleSpace& sp, EventMask a);

  int n() const { return n_; }
  SampleSpace space() const { return SampleSpace(n_); }
  bool evaluate(EventMask a) const;
  const TruthTable& table() const { return table_; }
  const std::vector<EventMask>& polynomial() const { return poly_; }
  bool is_zero() const { return poly_.empty(); }

  Coevent add(const Coevent& other) const;       // pointwise XOR
  Coevent multiply(const Coevent& other) const;  // pointwise AND
  Coevent complement() const;
  Coevent meet(const Coevent& other) const { return multiply(other); }
  Coevent join(const Coevent& other) const;  // pointwise OR
  bool leq(const Coevent& other) const;

  bool operator==(const Coevent& other) const = default;

 private:
  int n_ = 0;
  TruthTable table_;
  std::vector<EventMask> poly_;  // canonical order, no empty monomial

  void check_same_space(const Coevent& other) const;
  void sync_poly_from_table();
  void sync_table_from_poly();
};

// Strict total order (by n, then table as a binary number); for sets/sorting.
bool coevent_less(const Coevent& a, const Coevent& b);

// {A : phi(A) = 1}, i.e. the events whose atoms lie below phi.
std::vector<EventMask> atoms_below(const Coevent& phi);
// The distinct atoms whose join is phi.
std::vector<Coevent> decompose(const Coevent& phi);

struct CoeventClass {
  bool zero = false;
  bool classical = false;       // exactly one singleton monomial
  bool additive = false;        // all monomials singletons (or zero)
  bool multiplicative = false;  // at most one monomial
  bool quadratic = false;       // all monomial degrees <= 2
  bool unital = false;          // phi(Omega) = 1
  std::vector<EventMask> type_signature;  // canonical-order monomials
};

CoeventClass classify(const Coevent& phi);

// |A_n^*| = 2^(2^n - 1); n <= 6 (counting only, no enumeration).
BigInt count_coevents(int n);

inline constexpr int kDefaultEnumerationCap = 5;

// Number of coevents as an index bound, n <= 5.
std::uint64_t coevent_index_count(int n);
// The index-th coevent in ascending truth-table order.
Coevent coevent_at(const SampleSpace& sp, std::uint64_t index);
// Streams all coevents in ascending truth-table order; throws if n > cap.
void for_each_coevent(const SampleSpace& sp,
                      const std::function<void(const Coevent&)>& fn,
                      int cap = kDefaultEnumerationCap);

}  // namespace coevent
