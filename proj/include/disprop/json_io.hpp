#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "disprop/conjecture.hpp"
#include "disprop/division.hpp"
#include "disprop/instances.hpp"
#include "disprop/pair.hpp"
#include "disprop/solver.hpp"

// JSON forms of every artifact. Rationals are strings ("p/q" or "k"); object
// keys come out sorted, so dump() is byte-stable. Readers throw
// ValidationError naming the offending field, e.g. "measures[1].densities[0]".
namespace disprop::json_io {

using nlohmann::json;

json to_json(const Rational& r);
Rational rational_from_json(const json& j, const std::string& field);

json to_json(const Measure& m);
Measure measure_from_json(const json& j, const std::string& field);

json to_json(const Instance& inst);
/// `strict` additionally requires the demands to sum to exactly 1.
Instance instance_from_json(const json& j, bool strict);

/// Written in canonical form (same-owner neighbours merged).
json to_json(const Division& div);
Division division_from_json(const json& j);

json to_json(const VerificationReport& report);
json to_json(const CircleArc& arc);
CircleArc arc_from_json(const json& j, const std::string& field);

json to_json(const solver::CaseStep& step);
solver::CaseStep trace_from_json(const json& j);

json to_json(const pair::CircleLemmaResult& lemma);
json to_json(const instances::OracleResult& result);

json to_json(const conjecture::Witness& w);
conjecture::Witness witness_from_json(const json& j);
json to_json(const conjecture::SearchResult& result);
json to_json(const conjecture::CampaignRecord& record);

/// Parses text; malformed JSON becomes a ValidationError.
json parse(std::string_view text);
/// Two-space indented with a trailing newline.
std::string dump(const json& j);
/// Single line, for JSON-lines reports.
std::string dump_line(const json& j);

Instance read_instance(std::string_view text, bool strict = true);
std::string write_instance(const Instance& inst);
Division read_division(std::string_view text);
std::string write_division(const Division& div);

}  // namespace disprop::json_io
