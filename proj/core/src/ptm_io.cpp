#include "pppt/ptm_io.hpp"

#include "pppt/bayesnet_io.hpp"
#include "pppt/errors.hpp"

namespace pppt::ptm {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

std::string str(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::string> str_list(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_array()) throw ParseError(where + "." + key + ": expected an array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw ParseError(where + "." + key + ": expected strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

ordered_json to_json(const MachineDescription& d) {
  ordered_json doc;
  doc["states"] = d.states;
  doc["start_state"] = d.start_state;
  doc["accept_state"] = d.accept_state;
  doc["reject_state"] = d.reject_state;
  doc["tape_alphabet"] = d.tape_alphabet;
  doc["blank"] = d.blank;
  doc["input_alphabet"] = d.input_alphabet;
  doc["bits_per_step"] = d.bits_per_step;
  ordered_json ts = ordered_json::array();
  for (const auto& t : d.transitions) {
    ordered_json e;
    e["state"] = t.state;
    e["read"] = t.read;
    e["bits"] = t.bits;
    e["write"] = t.write;
    e["move"] = std::string(to_string(t.move));
    e["next"] = t.next;
    ts.push_back(std::move(e));
  }
  doc["transitions"] = std::move(ts);
  return doc;
}

MachineDescription description_from_json(const json& doc) {
  const std::string where = "machine";
  MachineDescription d;
  d.states = str_list(doc, "states", where);
  d.start_state = str(doc, "start_state", where);
  d.accept_state = str(doc, "accept_state", where);
  d.reject_state = str(doc, "reject_state", where);
  d.tape_alphabet = str_list(doc, "tape_alphabet", where);
  d.blank = str(doc, "blank", where);
  d.input_alphabet = str_list(doc, "input_alphabet", where);
  const auto& r = field(doc, "bits_per_step", where);
  if (!r.is_number_integer() || r.get<std::int64_t>() < 1) {
    throw ParseError("machine.bits_per_step: expected a positive integer");
  }
  d.bits_per_step = r.get<unsigned>();
  const auto& ts = field(doc, "transitions", where);
  if (!ts.is_array()) throw ParseError("machine.transitions: expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string tw = "machine.transitions[" + std::to_string(i) + "]";
    Transition t;
    t.state = str(ts[i], "state", tw);
    t.read = str(ts[i], "read", tw);
    t.bits = str(ts[i], "bits", tw);
    t.write = str(ts[i], "write", tw);
    t.move = move_from_string(str(ts[i], "move", tw));
    t.next = str(ts[i], "next", tw);
    d.transitions.push_back(std::move(t));
  }
  return d;
}

std::string serialize_machine(const MachineDescription& desc) { return bn::dump(to_json(desc)); }

Machine parse_machine(std::string_view text) { return Machine::build(description_from_json(bn::parse_json(text))); }

}  // namespace pppt::ptm
