#pragma once

#include "permseq/census.hpp"
#include "permseq/dynamics.hpp"
#include "permseq/perm.hpp"

#include <json.hpp>

#include <string>

namespace permseq {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
Json big_to_json(const BigInt& x);
BigInt big_from_json(const Json& j);

Json to_json(const PermSpec& spec);
/// Throws ParseError on malformed documents; the rule list is not validated
/// here (ResidueMap does that).
PermSpec perm_spec_from_json(const Json& j);

Json to_json(const CycleRecord& c);
CycleRecord cycle_from_json(const Json& j);

Json to_json(const TrajectoryOutcome& outcome);
Json to_json(const CensusReport& report);

/// nr,x_min,x_max,length,m with one row per cycle (the fixed point 0 included).
std::string census_csv(const CensusReport& report);

}  // namespace permseq
