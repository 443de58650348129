#include "coevent/space.hpp"

#include <algorithm>
#include <bit>

namespace coevent {

int popcount(EventMask a) { return std::popcount(a); }

bool canonical_mask_less(EventMask a, EventMask b) {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  if (a == b) return false;
  // Same cardinality: the mask containing the lowest differing outcome is
  // lexicographically smaller as a sorted index tuple.
  EventMask d = a ^ b;
  EventMask low = d & (~d + 1);
  return (a & low) != 0;
}

std::vector<EventMask> events_in_canonical_order(int n) {
  std::vector<EventMask> out;
  out.reserve(std::size_t{1} << n);
  for (EventMask a = 0; a < (EventMask{1} << n); ++a) out.push_back(a);
  std::sort(out.begin(), out.end(), canonical_mask_less);
  return out;
}

std::vector<EventMask> nonempty_events(int n) {
  auto out = events_in_canonical_order(n);
  out.erase(out.begin());  // drop the empty event
  return out;
}

std::vector<int> outcomes_of(EventMask a) {
  std::vector<int> out;
  for (int i = 0; a >> i; ++i)
    if (a & (EventMask{1} << i)) out.push_back(i);
  return out;
}

std::string format_event(EventMask a) {
  std::string s = "{";
  bool first = true;
  for (int i : outcomes_of(a)) {
    if (!first) s += ",";
    s += "w" + std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

namespace {

int parse_outcome_index(const std::string& text, std::size_t& pos, int n) {
  if (pos >= text.size() || text[pos] != 'w')
    throw Error("expected outcome 'w<k>' at position " + std::to_string(pos) +
                " in '" + text + "'");
  ++pos;
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    throw Error("expected digit after 'w' at position " + std::to_string(pos) +
                " in '" + text + "'");
  int k = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    k = k * 10 + (text[pos] - '0');
    if (k > SampleSpace::max_n) break;
    ++pos;
  }
  if (k < 1 || k > n)
    throw Error("outcome index w" + std::to_string(k) + " out of range 1.." +
                std::to_string(n));
  return k - 1;
}

void skip_ws(const std::string& text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

}  // namespace

EventMask parse_event(const std::string& text, int n) {
  std::size_t pos = 0;
  skip_ws(text, pos);
  if (pos >= text.size() || text[pos] != '{')
    throw Error("expected '{' at start of event '" + text + "'");
  ++pos;
  skip_ws(text, pos);
  EventMask a = 0;
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    while (true) {
      a |= EventMask{1} << parse_outcome_index(text, pos, n);
      skip_ws(text, pos);
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        skip_ws(text, pos);
        continue;
      }
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        break;
      }
      throw Error("expected ',' or '}' at position " + std::to_string(pos) +
                  " in '" + text + "'");
    }
  }
  skip_ws(text, pos);
  if (pos != text.size())
    throw Error("trailing characters after event in '" + text + "'");
  return a;
}

std::string event_key(EventMask a) {
  std::string s;
  bool first = true;
  for (int i : outcomes_of(a)) {
    if (!first) s += ",";
    s += std::to_string(i + 1);
    first = false;
  }
  return s;
}

EventMask parse_event_key(const std::string& key, int n) {
  EventMask a = 0;
  std::size_t pos = 0;
  while (pos < key.size()) {
    int k = 0;
    std::size_t start = pos;
    while (pos < key.size() && std::isdigit(static_cast<unsigned char>(key[pos]))) {
      k = k * 10 + (key[pos] - '0');
      ++pos;
    }
    if (pos == start || k < 1 || k > n)
      throw Error("bad outcome index in event key '" + key + "'");
    a |= EventMask{1} << (k - 1);
    if (pos < key.size()) {
      if (key[pos] != ',') throw Error("bad event key '" + key + "'");
      ++pos;
    }
  }
  if (a == 0) throw Error("empty event key");
  return a;
}

}  // namespace coevent
