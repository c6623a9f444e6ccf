#pragma once

#include "pppt/decision.hpp"
#include "pppt/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pppt::reductions {

/// Propositional formula over named variables. And/Or take any number of
/// operands (an empty conjunction is true, an empty disjunction false).
class Formula {
 public:
  enum class Kind { Var, Not, And, Or };

  static Formula var(std::string name);
  static Formula negation(Formula operand);
  static Formula conjunction(std::vector<Formula> operands);
  static Formula disjunction(std::vector<Formula> operands);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Formula>& operands() const noexcept { return operands_; }

  /// Distinct variable names in order of first occurrence (left to right).
  std::vector<std::string> variables() const;

  /// Truth value with `values[i]` assigned to `variables[i]`.
  bool evaluate(const std::vector<std::string>& variables, const std::vector<bool>& values) const;

  std::size_t size() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Formula(Kind kind, std::string name, std::vector<Formula> operands)
      : kind_(kind), name_(std::move(name)), operands_(std::move(operands)) {}

  Kind kind_;
  std::string name_;
  std::vector<Formula> operands_;
};

/// Nested-array JSON: ["var","x1"], ["not", f], ["and", f1, ...], ["or", f1, ...].
nlohmann::ordered_json to_json(const Formula& f);
Formula formula_from_json(const nlohmann::json& doc);
std::string serialize_formula(const Formula& f);
Formula parse_formula(std::string_view text);

inline constexpr unsigned kMaxCountingVariables = 20;

struct SatCount {
  std::uint64_t satisfying = 0;
  std::uint64_t total = 0;

  Rational ratio() const { return Rational(BigInt(satisfying), BigInt(total)); }
};

/// Brute-force model count over `f.variables()`. Throws TooManyVariables
/// beyond kMaxCountingVariables.
SatCount count_satisfying(const Formula& f);

/// Majority question: more than half of all assignments satisfy f.
Decision majority_satisfied(const SatCount& count);

enum class GapReading {
  /// ratio <= 1/2 or ratio >= 1/2 + 2^-k.
  OneSided,
  /// ratio outside the open interval (1/2 - 2^-k, 1/2 + 2^-k).
  Literal,
};

bool majsat_promise_holds(const Rational& ratio, unsigned k, GapReading reading = GapReading::OneSided);

struct OrComposition {
  Formula psi;
  unsigned k = 0;
  std::string fresh_variable;
};

/// psi = phi_1 or ... or phi_t or x0 over the union of the input variables
/// plus one fresh variable; k is the resulting variable count. A majority of
/// psi's assignments satisfy it iff some phi_i is satisfiable. Throws
/// std::invalid_argument for an empty list.
OrComposition or_compose(const std::vector<Formula>& formulas);

}  // namespace pppt::reductions
