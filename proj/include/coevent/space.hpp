#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coevent/error.hpp"

namespace coevent {

// Events are subsets of the sample space, stored as bit masks.
// Outcome w(k) in text I/O (1-based) is bit k-1 of the mask.
using EventMask = std::uint32_t;

struct SampleSpace {
  int n = 0;

  static constexpr int max_n = 16;

  explicit SampleSpace(int n_) : n(n_) {
    if (n < 1 || n > max_n)
      throw Error("sample space size must be in [1, " +
                  std::to_string(max_n) + "], got " + std::to_string(n));
  }

  EventMask full_mask() const { return (EventMask{1} << n) - 1; }
  std::size_t num_events() const { return std::size_t{1} << n; }

  void check_event(EventMask a) const {
    if (a & ~full_mask())
      throw Error("event mask " + std::to_string(a) +
                  " has outcomes outside the " + std::to_string(n) +
                  "-point sample space");
  }

  bool operator==(const SampleSpace&) const = default;
};

int popcount(EventMask a);
inline bool is_subset(EventMask a, EventMask b) { return (a & ~b) == 0; }

// Canonical order on masks: by cardinality, then lexicographic on the
// sorted outcome tuple ({w1,w4} before {w2,w3}).
bool canonical_mask_less(EventMask a, EventMask b);

// All 2^n events in canonical order (starts with the empty event).
std::vector<EventMask> events_in_canonical_order(int n);
// The 2^n - 1 nonempty events in canonical order.
std::vector<EventMask> nonempty_events(int n);

std::vector<int> outcomes_of(EventMask a);

// "{}" or "{w1,w3}"
std::string format_event(EventMask a);
EventMask parse_event(const std::string& text, int n);

// "1,3" (used as JSON keys); empty event not representable.
std::string event_key(EventMask a);
EventMask parse_event_key(const std::string& key, int n);

}  // namespace coevent
