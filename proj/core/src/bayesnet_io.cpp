#include "pppt/bayesnet_io.hpp"

#include "pppt/errors.hpp"

#include <fstream>
#include <sstream>

namespace pppt::bn {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::string> as_string_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) out.push_back(as_string(item, where));
  return out;
}

Rational as_rational(const json& v, const std::string& where) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw ParseError(where + ": expected a rational string \"num/den\"");
}

}  // namespace

ordered_json to_json(const Network& net) {
  ordered_json nodes = ordered_json::array();
  for (const auto& node : net.nodes()) {
    ordered_json n;
    n["name"] = node.name;
    n["outcomes"] = node.outcomes;
    n["parents"] = node.parents;
    ordered_json cpt = ordered_json::array();
    for (const auto& row : node.cpt) {
      ordered_json r;
      ordered_json given = ordered_json::object();
      for (std::size_t k = 0; k < node.parents.size(); ++k) given[node.parents[k]] = row.given[k];
      ordered_json dist = ordered_json::object();
      for (std::size_t k = 0; k < node.outcomes.size(); ++k) dist[node.outcomes[k]] = row.dist[k].to_string();
      r["given"] = std::move(given);
      r["dist"] = std::move(dist);
      cpt.push_back(std::move(r));
    }
    n["cpt"] = std::move(cpt);
    nodes.push_back(std::move(n));
  }
  ordered_json doc;
  doc["nodes"] = std::move(nodes);
  return doc;
}

std::vector<Node> nodes_from_json(const json& doc) {
  const auto& list = require(doc, "nodes", "network");
  if (!list.is_array()) throw ParseError("network: \"nodes\" must be an array");
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& n = list[i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    Node node;
    node.name = as_string(require(n, "name", where), where + ".name");
    node.outcomes = as_string_list(require(n, "outcomes", where), where + ".outcomes");
    node.parents = as_string_list(require(n, "parents", where), where + ".parents");
    const auto& cpt = require(n, "cpt", where);
    if (!cpt.is_array()) throw ParseError(where + ".cpt: expected an array");
    for (std::size_t r = 0; r < cpt.size(); ++r) {
      const std::string rwhere = where + ".cpt[" + std::to_string(r) + "]";
      const auto& given = require(cpt[r], "given", rwhere);
      const auto& dist = require(cpt[r], "dist", rwhere);
      if (!given.is_object()) throw ParseError(rwhere + ".given: expected an object");
      if (!dist.is_object()) throw ParseError(rwhere + ".dist: expected an object");
      if (given.size() != node.parents.size()) {
        throw ParseError(rwhere + ".given: expected one entry per parent");
      }
      if (dist.size() != node.outcomes.size()) {
        throw ParseError(rwhere + ".dist: expected one entry per outcome");
      }
      CptRow row;
      for (const auto& p : node.parents) {
        if (!given.contains(p)) throw ParseError(rwhere + ".given: missing parent \"" + p + "\"");
        row.given.push_back(as_string(given.at(p), rwhere + ".given"));
      }
      for (const auto& o : node.outcomes) {
        if (!dist.contains(o)) throw ParseError(rwhere + ".dist: missing outcome \"" + o + "\"");
        row.dist.push_back(as_rational(dist.at(o), rwhere + ".dist"));
      }
      node.cpt.push_back(std::move(row));
    }
    nodes.push_back(std::move(node));
  }
  return nodes;
}

Network network_from_json(const json& doc) { return Network::build(nodes_from_json(doc)); }

std::string serialize_network(const Network& net) { return dump(to_json(net)); }

Network parse_network(std::string_view text) { return network_from_json(parse_json(text)); }

ordered_json assignment_to_json(const Assignment& a) {
  ordered_json out = ordered_json::object();
  for (const auto& [name, label] : a) out[name] = label;
  return out;
}

Assignment assignment_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("assignment: expected an object");
  Assignment a;
  for (const auto& [name, label] : doc.items()) a.emplace(name, as_string(label, "assignment." + name));
  return a;
}

ordered_json to_json(const InstanceDocument& doc) {
  ordered_json out;
  out["network"] = doc.network;
  if (doc.query_node) {
    out["query_node"] = *doc.query_node;
    out["accept_outcome"] = doc.accept_outcome.value_or("");
    out["q"] = doc.q.to_string();
    out["k"] = doc.k.value_or(0);
    return out;
  }
  out["h"] = assignment_to_json(doc.h);
  out["e"] = assignment_to_json(doc.e);
  out["q"] = doc.q.to_string();
  out["epsilon"] = doc.epsilon.to_string();
  out["gap_kind"] = std::string(to_string(doc.gap_kind));
  if (doc.k) out["k"] = *doc.k;
  return out;
}

InstanceDocument instance_document_from_json(const json& doc) {
  InstanceDocument out;
  out.network = as_string(require(doc, "network", "instance"), "instance.network");
  out.q = as_rational(require(doc, "q", "instance"), "instance.q");
  if (doc.contains("k")) {
    const auto& k = doc.at("k");
    if (!k.is_number_integer() || k.get<std::int64_t>() < 1) {
      throw ParseError("instance.k: expected a positive integer");
    }
    out.k = k.get<unsigned>();
  }
  if (doc.contains("query_node")) {
    out.query_node = as_string(doc.at("query_node"), "instance.query_node");
    out.accept_outcome = as_string(require(doc, "accept_outcome", "instance"), "instance.accept_outcome");
    if (!out.k) throw ParseError("instance: compiler header requires \"k\"");
    out.h = {{*out.query_node, *out.accept_outcome}};
    out.epsilon = Rational::pow2_inverse(*out.k);
    out.gap_kind = GapKind::Absolute;
    return out;
  }
  out.h = assignment_from_json(require(doc, "h", "instance"));
  if (doc.contains("e")) out.e = assignment_from_json(doc.at("e"));
  out.epsilon = as_rational(require(doc, "epsilon", "instance"), "instance.epsilon");
  if (doc.contains("gap_kind")) out.gap_kind = gap_kind_from_string(as_string(doc.at("gap_kind"), "instance.gap_kind"));
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing " + path.string());
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace pppt::bn
