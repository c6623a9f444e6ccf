#include "pppt/errors.hpp"
#include "pppt/reductions.hpp"

#include "network_builder.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace pppt::reductions {

namespace {

const std::vector<std::string> kBinary = {"0", "1"};
const std::vector<std::string> kTruth = {"false", "true"};

std::vector<Rational> fair() { return {Rational(1, 2), Rational(1, 2)}; }

}  // namespace

GadgetResult cond_gadget(const bn::PromiseInstance& inst) {
  if (!inst.e.empty()) throw std::invalid_argument("cond_gadget: instance already has evidence (E must be empty)");
  if (inst.gap_kind != bn::GapKind::Absolute) throw std::invalid_argument("cond_gadget: expected an absolute gap");
  bn::validate_instance(inst);

  const auto& base = inst.network;
  std::string prefix;
  auto clashes = [&](const std::string& p) {
    for (const auto& node : base.nodes()) {
      const auto& name = node.name;
      if (name == p + "R" || name == p + "S" || name.rfind(p + "T_H", 0) == 0) return true;
    }
    return false;
  };
  while (clashes(prefix)) prefix += "_";

  GadgetNames names{prefix + "R", prefix + "S", prefix + "T_H"};
  detail::NetworkBuilder b(base.nodes());

  // Leaf indicators, one per node of H, then a balanced AND tree.
  std::vector<std::string> level;
  std::size_t leaf = 0;
  for (const auto& [node, value] : inst.h) {
    const std::size_t target = base.outcome_index(base.index_of(node), value);
    level.push_back(names.terminal + ".leaf" + std::to_string(leaf++));
    b.add_point(level.back(), kBinary, {node}, [target](std::span<const std::size_t> v) {
      return v[0] == target ? std::size_t{1} : std::size_t{0};
    });
  }
  std::size_t depth = 0;
  while (level.size() > 1) {
    std::vector<std::string> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(names.terminal + ".and" + std::to_string(depth) + "_" + std::to_string(i / 2));
      b.add_point(next.back(), kBinary, {level[i], level[i + 1]},
                  [](std::span<const std::size_t> v) { return v[0] & v[1]; });
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
    ++depth;
  }
  if (level.empty()) {
    b.add_point(names.terminal, kBinary, {}, [](auto) { return std::size_t{1}; });
  } else {
    b.add_point(names.terminal, kBinary, {level.front()}, [](std::span<const std::size_t> v) { return v[0]; });
  }

  b.add(names.root, kBinary, {}, [](auto) { return fair(); });
  b.add(names.signal, kBinary, {names.root, names.terminal}, [](std::span<const std::size_t> v) {
    const bool r = v[0] == 1;
    const bool t = v[1] == 1;
    if (t && r) return std::vector<Rational>{Rational(0), Rational(1)};
    if (t && !r) return std::vector<Rational>{Rational(1), Rational(0)};
    return fair();
  });

  bn::PromiseInstance out{std::move(b).build(),
                          {{names.root, "1"}},
                          {{names.signal, "1"}},
                          Rational(1, 2) + inst.q / Rational(2),
                          inst.epsilon / Rational(2),
                          bn::GapKind::Absolute};
  return GadgetResult{std::move(out), names};
}

CompiledInstance formula_to_bn(const Formula& f, unsigned k) {
  if (k == 0) throw std::invalid_argument("formula_to_bn: parameter k must be positive");
  detail::NetworkBuilder b;
  for (const auto& v : f.variables()) b.add("var:" + v, kTruth, {}, [](auto) { return fair(); });

  std::size_t next_gate = 0;
  // Emits the node computing `g` (children first) and returns its name.
  std::function<std::string(const Formula&, bool)> emit = [&](const Formula& g, bool is_root) -> std::string {
    if (g.kind() == Formula::Kind::Var && !is_root) return "var:" + g.name();

    std::vector<std::string> operand_nodes;
    if (g.kind() == Formula::Kind::Var) {
      operand_nodes.push_back("var:" + g.name());
    } else {
      for (const auto& op : g.operands()) operand_nodes.push_back(emit(op, false));
    }
    // Repeated operands (e.g. x and x) share one parent.
    std::vector<std::string> parents;
    std::vector<std::size_t> slot;
    for (const auto& name : operand_nodes) {
      auto it = std::find(parents.begin(), parents.end(), name);
      slot.push_back(static_cast<std::size_t>(it - parents.begin()));
      if (it == parents.end()) parents.push_back(name);
    }

    std::string name = is_root ? "OUT" : "gate:" + std::to_string(next_gate++);
    const auto kind = g.kind();
    b.add_point(name, kTruth, parents, [kind, slot](std::span<const std::size_t> v) -> std::size_t {
      switch (kind) {
        case Formula::Kind::Var:
          return v[slot[0]];
        case Formula::Kind::Not:
          return 1 - v[slot[0]];
        case Formula::Kind::And:
          for (auto s : slot) {
            if (v[s] == 0) return 0;
          }
          return 1;
        case Formula::Kind::Or:
          for (auto s : slot) {
            if (v[s] == 1) return 1;
          }
          return 0;
      }
      return 0;
    });
    return name;
  };
  emit(f, true);

  return CompiledInstance{std::move(b).build(), "OUT", "true", Rational(1, 2), k};
}

}  // namespace pppt::reductions
