#include "coevent/json_io.hpp"

#include "coevent/expr.hpp"

namespace coevent {

namespace {

constexpr const char* kVersion = "coevent 1.0.0";

std::string monomial_key(EventMask m) { return event_key(m); }

}  // namespace

Json coevent_to_json(const Coevent& phi) {
  Json j;
  j["n"] = phi.n();
  Json poly = Json::array();
  for (EventMask m : phi.polynomial()) poly.push_back(monomial_key(m));
  j["poly"] = std::move(poly);
  return j;
}

Coevent coevent_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("poly"))
    throw Error("coevent JSON needs \"n\" and \"poly\"");
  const int n = j.at("n").get<int>();
  SampleSpace sp(n);
  std::vector<EventMask> monos;
  for (const auto& item : j.at("poly"))
    monos.push_back(parse_event_key(item.get<std::string>(), n));
  return Coevent::from_polynomial(sp, std::move(monos));
}

Json point_function_to_json(const PointFunction& f) {
  Json inner;
  for (int i = 0; i < f.n; ++i)
    inner["w" + std::to_string(i + 1)] = format_rational(f.values[i]);
  Json j;
  j["f"] = std::move(inner);
  return j;
}

PointFunction point_function_from_json(const Json& j) {
  if (!j.contains("f")) throw Error("point function JSON needs \"f\"");
  const auto& inner = j.at("f");
  const int n = static_cast<int>(inner.size());
  SampleSpace sp(n);
  PointFunction f = PointFunction::constant(n, 0);
  std::vector<bool> seen(n, false);
  for (auto it = inner.begin(); it != inner.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() < 2 || key[0] != 'w')
      throw Error("point function keys look like \"w1\"; got '" + key + "'");
    int k = std::stoi(key.substr(1));
    if (k < 1 || k > n) throw Error("outcome " + key + " out of range");
    if (seen[k - 1]) throw Error("duplicate entry for " + key);
    seen[k - 1] = true;
    f.values[k - 1] = parse_rational(it.value().get<std::string>());
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i]) throw Error("missing entry for w" + std::to_string(i + 1));
  return f;
}

Json pair_function_to_json(const PairFunction& f) {
  Json inner;
  for (int i = 0; i < f.n; ++i)
    for (int j = i; j < f.n; ++j)
      inner["w" + std::to_string(i + 1) + ",w" + std::to_string(j + 1)] =
          format_rational(f.at(i, j));
  Json j;
  j["f2"] = std::move(inner);
  return j;
}

PairFunction pair_function_from_json(const Json& j) {
  if (!j.contains("f2")) throw Error("pair function JSON needs \"f2\"");
  const auto& inner = j.at("f2");
  // m = n(n+1)/2 entries
  int n = 0;
  while (n * (n + 1) / 2 < static_cast<int>(inner.size())) ++n;
  if (n * (n + 1) / 2 != static_cast<int>(inner.size()) || n < 1)
    throw Error("pair function must list every unordered pair exactly once");
  PairFunction f(n);
  std::vector<bool> seen(f.values.size(), false);
  for (auto it = inner.begin(); it != inner.end(); ++it) {
    const std::string& key = it.key();
    auto comma = key.find(',');
    if (comma == std::string::npos || key[0] != 'w' ||
        comma + 1 >= key.size() || key[comma + 1] != 'w')
      throw Error("pair keys look like \"w1,w2\"; got '" + key + "'");
    int a = std::stoi(key.substr(1, comma - 1));
    int b = std::stoi(key.substr(comma + 2));
    if (a < 1 || a > n || b < 1 || b > n)
      throw Error("outcome out of range in key '" + key + "'");
    int idx = pair_index(a - 1, b - 1, n);
    if (seen[idx])
      throw Error("pair {" + key + "} listed twice (asymmetric input?)");
    seen[idx] = true;
    f.values[idx] = parse_rational(it.value().get<std::string>());
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw Error("missing pair entry");
  return f;
}

Json set_function_to_json(const SetFunction& nu) {
  Json inner;
  for (EventMask a : nonempty_events(nu.n)) inner[event_key(a)] = format_rational(nu.at(a));
  Json j;
  j["n"] = nu.n;
  j["mu"] = std::move(inner);
  return j;
}

SetFunction set_function_from_json(const Json& j, bool complete_grade2) {
  if (!j.contains("n") || !j.contains("mu"))
    throw Error("measure JSON needs \"n\" and \"mu\"");
  const int n = j.at("n").get<int>();
  SampleSpace sp(n);
  SetFunction nu(n);
  std::vector<bool> seen(nu.values.size(), false);
  seen[0] = true;
  for (auto it = j.at("mu").begin(); it != j.at("mu").end(); ++it) {
    EventMask a = parse_event_key(it.key(), n);
    if (seen[a]) throw Error("duplicate entry for event " + it.key());
    seen[a] = true;
    nu.at(a) = parse_rational(it.value().get<std::string>());
  }
  for (EventMask a = 1; a <= sp.full_mask(); ++a) {
    if (seen[a]) continue;
    if (!complete_grade2 || popcount(a) < 3)
      throw Error("missing entry for event " + event_key(a));
  }
  if (complete_grade2) {
    std::vector<Rational> singles(n), pairs(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i) singles[i] = nu.at(EventMask{1} << i);
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k)
        pairs[idx++] = nu.at((EventMask{1} << i) | (EventMask{1} << k));
    auto build = from_low_order(n, singles, pairs);
    if (!build.measure)
      throw Error("grade-2 completion forces a negative value on " +
                  format_event(build.offending));
    for (EventMask a = 1; a <= sp.full_mask(); ++a) {
      if (seen[a]) continue;
      nu.at(a) = build.measure->set_function().at(a);
    }
  }
  return nu;
}

namespace {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Feasible:
      return "feasible";
    case Outcome::Infeasible:
      return "infeasible";
    case Outcome::Unknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace

Json gen1_report_to_json(const Gen1Report& rep, const Coevent& phi) {
  Json j;
  j["coevent"] = format_coevent(phi);
  j["outcome"] = outcome_name(rep.outcome);
  if (rep.density) j["density"] = point_function_to_json(rep.density->f)["f"];
  if (rep.chamber) j["chamber"] = rep.chamber->describe();
  j["chambers_checked"] = rep.chambers_checked;
  if (!rep.prune_reason.empty()) j["prune_reason"] = rep.prune_reason;
  return j;
}

Json gen2_report_to_json(const Gen2Report& rep, const Coevent& phi) {
  Json j;
  j["coevent"] = format_coevent(phi);
  j["outcome"] = outcome_name(rep.outcome);
  if (rep.density) j["density"] = pair_function_to_json(rep.density->f)["f2"];
  j["chambers_checked"] = rep.chambers_checked;
  if (rep.heuristic) j["mode"] = "heuristic";
  if (!rep.prune_reason.empty()) j["prune_reason"] = rep.prune_reason;
  return j;
}

std::string survey_to_jsonl(const Survey& survey, const std::string& command,
                            std::uint64_t seed, bool gen2) {
  std::string out;
  Json meta;
  meta["type"] = "meta";
  meta["version"] = kVersion;
  meta["command"] = command;
  meta["seed"] = seed;
  out += meta.dump();
  out += "\n";
  for (const SurveyRow& row : survey.rows) {
    Json r = gen2 ? gen2_report_to_json(row.gen2, row.phi)
                  : gen1_report_to_json(row.gen1, row.phi);
    Json line;
    line["type"] = "row";
    line["index"] = row.index;
    for (auto it = r.begin(); it != r.end(); ++it) line[it.key()] = it.value();
    out += line.dump();
    out += "\n";
  }
  Json summary;
  summary["type"] = "summary";
  summary["coevents"] = survey.coevents;
  summary["feasible"] = survey.feasible;
  summary["infeasible"] = survey.infeasible;
  summary["unknown"] = survey.unknown;
  summary["chambers_checked"] = survey.chambers_checked;
  out += summary.dump();
  out += "\n";
  return out;
}

}  // namespace coevent
