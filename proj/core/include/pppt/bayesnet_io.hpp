#pragma once

#include "pppt/bayesnet.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace pppt::bn {

// Network document:
//   {"nodes": [{"name": ..., "outcomes": [...], "parents": [...],
//               "cpt": [{"given": {parent: outcome, ...},
//                        "dist": {outcome: "num/den", ...}}, ...]}, ...]}
// Keys are written in the order listed and `given` / `dist` entries follow
// the parent and outcome order, so serialization is byte-stable.

nlohmann::ordered_json to_json(const Network& net);
/// Parses and validates. Throws ParseError or ValidationError.
Network network_from_json(const nlohmann::json& doc);
/// Parses without validating (for reporting every violation of a bad file).
std::vector<Node> nodes_from_json(const nlohmann::json& doc);

std::string serialize_network(const Network& net);
Network parse_network(std::string_view text);

nlohmann::ordered_json assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const nlohmann::json& doc);

/// Query document that accompanies a network file. Two shapes are accepted:
///
///   promise form:  {"network": path, "h": {...}, "e": {...}, "q": "num/den",
///                   "epsilon": "num/den", "gap_kind": "absolute"|"relative"}
///   compiler form: {"network": path, "query_node": name,
///                   "accept_outcome": label, "q": "num/den", "k": int}
///
/// The compiler form reads as h = {query_node: accept_outcome}, e = {},
/// epsilon = 2^-k with an absolute gap. `network` is relative to the
/// directory holding the instance document.
struct InstanceDocument {
  std::string network;
  Assignment h;
  Assignment e;
  Rational q;
  Rational epsilon;
  GapKind gap_kind = GapKind::Absolute;
  std::optional<unsigned> k;
  std::optional<std::string> query_node;
  std::optional<std::string> accept_outcome;
};

nlohmann::ordered_json to_json(const InstanceDocument& doc);
InstanceDocument instance_document_from_json(const nlohmann::json& doc);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// JSON text with two-space indentation and a trailing newline.
std::string dump(const nlohmann::ordered_json& doc);
nlohmann::json parse_json(std::string_view text);

}  // namespace pppt::bn
