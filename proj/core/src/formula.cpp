#include "pppt/formula.hpp"

#include "pppt/bayesnet_io.hpp"
#include "pppt/errors.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace pppt::reductions {

using nlohmann::json;
using nlohmann::ordered_json;

Formula Formula::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("Formula::var: empty variable name");
  return Formula(Kind::Var, std::move(name), {});
}

Formula Formula::negation(Formula operand) {
  std::vector<Formula> ops;
  ops.push_back(std::move(operand));
  return Formula(Kind::Not, {}, std::move(ops));
}

Formula Formula::conjunction(std::vector<Formula> operands) { return Formula(Kind::And, {}, std::move(operands)); }

Formula Formula::disjunction(std::vector<Formula> operands) { return Formula(Kind::Or, {}, std::move(operands)); }

std::vector<std::string> Formula::variables() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.kind_ == Kind::Var) {
      if (seen.insert(f.name_).second) out.push_back(f.name_);
      return;
    }
    for (const auto& op : f.operands_) walk(op);
  };
  walk(*this);
  return out;
}

namespace {

// Formula with variables resolved to indices, for repeated evaluation.
struct Indexed {
  Formula::Kind kind;
  std::size_t var = 0;
  std::vector<Indexed> operands;

  bool eval(std::uint64_t mask) const {
    switch (kind) {
      case Formula::Kind::Var:
        return ((mask >> var) & 1U) != 0;
      case Formula::Kind::Not:
        return !operands[0].eval(mask);
      case Formula::Kind::And:
        return std::all_of(operands.begin(), operands.end(), [&](const Indexed& f) { return f.eval(mask); });
      case Formula::Kind::Or:
        return std::any_of(operands.begin(), operands.end(), [&](const Indexed& f) { return f.eval(mask); });
    }
    return false;
  }
};

Indexed index_formula(const Formula& f, const std::unordered_map<std::string, std::size_t>& vars) {
  Indexed out{f.kind(), 0, {}};
  if (f.kind() == Formula::Kind::Var) {
    out.var = vars.at(f.name());
    return out;
  }
  for (const auto& op : f.operands()) out.operands.push_back(index_formula(op, vars));
  return out;
}

}  // namespace

bool Formula::evaluate(const std::vector<std::string>& variables, const std::vector<bool>& values) const {
  if (variables.size() != values.size()) throw std::invalid_argument("Formula::evaluate: size mismatch");
  switch (kind_) {
    case Kind::Var: {
      auto it = std::find(variables.begin(), variables.end(), name_);
      if (it == variables.end()) throw std::invalid_argument("Formula::evaluate: unassigned variable " + name_);
      return values[static_cast<std::size_t>(it - variables.begin())];
    }
    case Kind::Not:
      return !operands_[0].evaluate(variables, values);
    case Kind::And:
      return std::all_of(operands_.begin(), operands_.end(),
                         [&](const Formula& f) { return f.evaluate(variables, values); });
    case Kind::Or:
      return std::any_of(operands_.begin(), operands_.end(),
                         [&](const Formula& f) { return f.evaluate(variables, values); });
  }
  return false;
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& op : operands_) n += op.size();
  return n;
}

ordered_json to_json(const Formula& f) {
  ordered_json out = ordered_json::array();
  switch (f.kind()) {
    case Formula::Kind::Var:
      out.push_back("var");
      out.push_back(f.name());
      return out;
    case Formula::Kind::Not:
      out.push_back("not");
      break;
    case Formula::Kind::And:
      out.push_back("and");
      break;
    case Formula::Kind::Or:
      out.push_back("or");
      break;
  }
  for (const auto& op : f.operands()) out.push_back(to_json(op));
  return out;
}

Formula formula_from_json(const json& doc) {
  if (!doc.is_array() || doc.empty() || !doc[0].is_string()) {
    throw ParseError("formula: expected [\"var\"|\"not\"|\"and\"|\"or\", ...]");
  }
  const auto tag = doc[0].get<std::string>();
  if (tag == "var") {
    if (doc.size() != 2 || !doc[1].is_string() || doc[1].get<std::string>().empty()) {
      throw ParseError("formula: [\"var\", name] needs one non-empty name");
    }
    return Formula::var(doc[1].get<std::string>());
  }
  std::vector<Formula> ops;
  for (std::size_t i = 1; i < doc.size(); ++i) ops.push_back(formula_from_json(doc[i]));
  if (tag == "not") {
    if (ops.size() != 1) throw ParseError("formula: \"not\" takes exactly one operand");
    return Formula::negation(std::move(ops[0]));
  }
  if (tag == "and") return Formula::conjunction(std::move(ops));
  if (tag == "or") return Formula::disjunction(std::move(ops));
  throw ParseError("formula: unknown connective \"" + tag + "\"");
}

std::string serialize_formula(const Formula& f) { return bn::dump(to_json(f)); }

Formula parse_formula(std::string_view text) { return formula_from_json(bn::parse_json(text)); }

SatCount count_satisfying(const Formula& f) {
  const auto vars = f.variables();
  if (vars.size() > kMaxCountingVariables) {
    throw TooManyVariables("count_satisfying: " + std::to_string(vars.size()) + " variables (limit " +
                           std::to_string(kMaxCountingVariables) + ")");
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vars.size(); ++i) index.emplace(vars[i], i);
  const Indexed compiled = index_formula(f, index);

  SatCount count;
  count.total = std::uint64_t{1} << vars.size();
  for (std::uint64_t mask = 0; mask < count.total; ++mask) {
    if (compiled.eval(mask)) ++count.satisfying;
  }
  return count;
}

Decision majority_satisfied(const SatCount& count) { return decision_from(2 * count.satisfying > count.total); }

bool majsat_promise_holds(const Rational& ratio, unsigned k, GapReading reading) {
  const Rational half(1, 2);
  const Rational gap = Rational::pow2_inverse(k);
  if (reading == GapReading::OneSided) return ratio <= half || ratio >= half + gap;
  return ratio <= half - gap || ratio >= half + gap;
}

OrComposition or_compose(const std::vector<Formula>& formulas) {
  if (formulas.empty()) throw std::invalid_argument("or_compose: need at least one formula");
  std::vector<std::string> shared;
  std::unordered_set<std::string> seen;
  for (const auto& f : formulas) {
    for (auto& v : f.variables()) {
      if (seen.insert(v).second) shared.push_back(v);
    }
  }
  std::string fresh = "x0";
  while (seen.contains(fresh)) fresh += "'";

  std::vector<Formula> disjuncts(formulas.begin(), formulas.end());
  disjuncts.push_back(Formula::var(fresh));
  return OrComposition{Formula::disjunction(std::move(disjuncts)), static_cast<unsigned>(shared.size() + 1), fresh};
}

}  // namespace pppt::reductions
