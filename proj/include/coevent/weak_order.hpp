#pragma once

#include <string>
#include <vector>

#include "coevent/space.hpp"

namespace coevent {

// An ordered partition of an index set: blocks of equal value, listed in
// ascending value order.
struct WeakOrder {
  std::vector<std::vector<int>> blocks;

  int level_of(int item) const;
  std::string describe() const;  // e.g. "{w1} < {w2,w3}"
};

// All weak orders of the given items, deterministic order.
std::vector<WeakOrder> all_weak_orders(const std::vector<int>& items);

}  // namespace coevent
