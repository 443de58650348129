#pragma once

#include <json.hpp>
#include <string>

#include "coevent/generation.hpp"
#include "coevent/qintegral.hpp"
#include "coevent/qmeasure.hpp"

namespace coevent {

// Insertion order is preserved so identical inputs give identical bytes.
using Json = nlohmann::ordered_json;

// {"n": 2, "poly": ["1", "1,2"]}
Json coevent_to_json(const Coevent& phi);
Coevent coevent_from_json(const Json& j);

// {"f": {"w1": "3/2", ...}}
Json point_function_to_json(const PointFunction& f);
PointFunction point_function_from_json(const Json& j);

// {"f2": {"w1,w1": "1", "w1,w2": "5/2", ...}} with each unordered pair once
Json pair_function_to_json(const PairFunction& f);
PairFunction pair_function_from_json(const Json& j);

// {"n": 3, "mu": {"1": "1", "1,2": "4", ...}}
Json set_function_to_json(const SetFunction& nu);
// With complete_grade2, missing |A| >= 3 entries are filled from the
// singleton and doubleton values; otherwise every nonempty event is required.
SetFunction set_function_from_json(const Json& j, bool complete_grade2 = false);

Json gen1_report_to_json(const Gen1Report& rep, const Coevent& phi);
Json gen2_report_to_json(const Gen2Report& rep, const Coevent& phi);

// JSON-lines: a meta record, one record per feasible coevent, a summary.
std::string survey_to_jsonl(const Survey& survey, const std::string& command,
                            std::uint64_t seed, bool gen2);

}  // namespace coevent
