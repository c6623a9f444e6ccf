#pragma once

#include "pppt/ptm.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace pppt::ptm {

// Machine document:
//   {"states": [...], "start_state": ..., "accept_state": ..., "reject_state": ...,
//    "tape_alphabet": [...], "blank": ..., "input_alphabet": [...], "bits_per_step": r,
//    "transitions": [{"state", "read", "bits", "write", "move": "L"|"R"|"S", "next"}, ...]}

nlohmann::ordered_json to_json(const MachineDescription& desc);
/// Throws ParseError on a malformed document (no semantic checks).
MachineDescription description_from_json(const nlohmann::json& doc);

std::string serialize_machine(const MachineDescription& desc);
/// Parses and builds (structural validation only). Throws ParseError or ValidationError.
Machine parse_machine(std::string_view text);

}  // namespace pppt::ptm
