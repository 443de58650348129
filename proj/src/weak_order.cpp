#include "coevent/weak_order.hpp"

namespace coevent {

int WeakOrder::level_of(int item) const {
  for (std::size_t j = 0; j < blocks.size(); ++j)
    for (int x : blocks[j])
      if (x == item) return static_cast<int>(j);
  throw Error("item not in weak order");
}

std::string WeakOrder::describe() const {
  std::string s;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (j) s += " < ";
    s += "{";
    for (std::size_t i = 0; i < blocks[j].size(); ++i) {
      if (i) s += ",";
      s += "w" + std::to_string(blocks[j][i] + 1);
    }
    s += "}";
  }
  return s.empty() ? "{}" : s;
}

namespace {

void build(const std::vector<int>& items, std::vector<std::vector<int>>& acc,
           std::vector<WeakOrder>& out) {
  if (items.empty()) {
    out.push_back(WeakOrder{acc});
    return;
  }
  const int m = static_cast<int>(items.size());
  // Every nonempty subset of the remaining items can be the next (lowest)
  // block; iterate subset masks ascending for a deterministic order.
  for (unsigned s = 1; s < (1u << m); ++s) {
    std::vector<int> block, rest;
    for (int i = 0; i < m; ++i)
      ((s >> i) & 1 ? block : rest).push_back(items[i]);
    acc.push_back(std::move(block));
    build(rest, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<WeakOrder> all_weak_orders(const std::vector<int>& items) {
  std::vector<WeakOrder> out;
  std::vector<std::vector<int>> acc;
  build(items, acc, out);
  return out;
}

}  // namespace coevent
