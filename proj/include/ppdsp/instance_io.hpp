#pragma once

// Canonical text forms for instances and delivery routing solutions.
//
// Both are JSON documents with a fixed key order and one record per line.
// Reals are written with 17 significant digits so that parsing restores the
// exact binary64 value; serialize(parse(s)) == s for any serialized s.

#include <string>
#include <string_view>

#include "ppdsp/core.hpp"

namespace ppdsp {

std::string format_real(double value);

std::string serialize_instance(const Instance& instance);

// Throws ParseError for malformed JSON and SchemaError naming the field path
// for schema or invariant violations.
Instance parse_instance(std::string_view text);

std::string serialize_routing_solution(const DeliveryRoutingSolution& solution);
DeliveryRoutingSolution parse_routing_solution(std::string_view text);

}  // namespace ppdsp
