#include "pppt/bayesnet.hpp"

#include "pppt/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace pppt::bn {

namespace {

// Rows per node beyond which the validator refuses to build a dense index.
constexpr std::size_t kMaxConfigurations = std::size_t{1} << 26;

std::string in_quotes(std::string_view s) { return "\"" + std::string(s) + "\""; }

void find_cycles(std::span<const Node> nodes, const std::unordered_map<std::string, std::size_t>& by_name,
                 std::vector<std::string>& out) {
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(nodes.size(), Mark::White);
  std::vector<std::size_t> path;
  std::set<std::vector<std::string>> reported;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    mark[v] = Mark::Grey;
    path.push_back(v);
    for (const auto& p : nodes[v].parents) {
      auto it = by_name.find(p);
      if (it == by_name.end()) continue;
      std::size_t u = it->second;
      if (mark[u] == Mark::Grey) {
        auto start = std::find(path.begin(), path.end(), u);
        std::vector<std::string> cycle;
        for (auto i = start; i != path.end(); ++i) cycle.push_back(nodes[*i].name);
        auto key = cycle;
        std::rotate(key.begin(), std::min_element(key.begin(), key.end()), key.end());
        if (reported.insert(key).second) {
          std::string msg = "cycle: ";
          for (const auto& name : cycle) msg += name + " <- ";
          msg += nodes[u].name;
          out.push_back(msg);
        }
      } else if (mark[u] == Mark::White) {
        visit(u);
      }
    }
    path.pop_back();
    mark[v] = Mark::Black;
  };

  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (mark[v] == Mark::White) visit(v);
  }
}

}  // namespace

void for_each_configuration(std::span<const std::size_t> radices,
                            const std::function<void(std::span<const std::size_t>)>& fn) {
  std::vector<std::size_t> digits(radices.size(), 0);
  for (auto r : radices) {
    if (r == 0) return;
  }
  for (;;) {
    fn(digits);
    std::size_t pos = digits.size();
    while (pos > 0) {
      --pos;
      if (++digits[pos] < radices[pos]) break;
      digits[pos] = 0;
      if (pos == 0) return;
    }
    if (digits.empty()) return;
  }
}

ValidationReport validate(std::span<const Node> nodes) {
  ValidationReport report;
  auto& out = report.violations;

  std::unordered_map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    if (node.name.empty()) out.push_back("node " + std::to_string(i) + ": empty name");
    if (!by_name.emplace(node.name, i).second) out.push_back("duplicate node name " + in_quotes(node.name));
  }

  bool structure_ok = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    const std::string where = "node " + in_quotes(node.name);
    if (node.outcomes.empty()) {
      out.push_back(where + ": no outcomes");
      structure_ok = false;
    }
    std::unordered_set<std::string> seen_outcomes;
    for (const auto& o : node.outcomes) {
      if (!seen_outcomes.insert(o).second) {
        out.push_back(where + ": duplicate outcome " + in_quotes(o));
        structure_ok = false;
      }
    }
    std::unordered_set<std::string> seen_parents;
    for (const auto& p : node.parents) {
      if (!seen_parents.insert(p).second) {
        out.push_back(where + ": duplicate parent " + in_quotes(p));
        structure_ok = false;
      }
      if (!by_name.contains(p)) {
        out.push_back(where + ": dangling parent " + in_quotes(p));
        structure_ok = false;
      }
    }
  }

  const std::size_t before_cycles = out.size();
  find_cycles(nodes, by_name, out);
  const bool acyclic = out.size() == before_cycles;
  if (!acyclic) structure_ok = false;

  if (acyclic) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (const auto& p : nodes[i].parents) {
        auto it = by_name.find(p);
        if (it != by_name.end() && it->second >= i) {
          out.push_back("node " + in_quotes(nodes[i].name) + ": parent " + in_quotes(p) +
                        " appears later (nodes not in topological order)");
        }
      }
    }
  }

  // CPT checks need resolvable parents with well-formed outcome sets.
  if (!structure_ok) return report;

  for (const auto& node : nodes) {
    const std::string where = "node " + in_quotes(node.name);
    std::vector<std::size_t> radices;
    std::vector<std::unordered_map<std::string, std::size_t>> parent_outcomes;
    std::size_t configs = 1;
    bool too_large = false;
    for (const auto& p : node.parents) {
      const auto& pnode = nodes[by_name.at(p)];
      radices.push_back(pnode.outcomes.size());
      std::unordered_map<std::string, std::size_t> m;
      for (std::size_t k = 0; k < pnode.outcomes.size(); ++k) m.emplace(pnode.outcomes[k], k);
      parent_outcomes.push_back(std::move(m));
      if (configs > kMaxConfigurations / pnode.outcomes.size()) too_large = true;
      configs *= pnode.outcomes.size();
    }
    if (too_large) {
      out.push_back(where + ": too many parent configurations to index");
      continue;
    }

    std::vector<int> hits(configs, 0);
    for (std::size_t r = 0; r < node.cpt.size(); ++r) {
      const auto& row = node.cpt[r];
      const std::string rwhere = where + " row " + std::to_string(r);
      if (row.given.size() != node.parents.size()) {
        out.push_back(rwhere + ": expected " + std::to_string(node.parents.size()) + " parent values, got " +
                      std::to_string(row.given.size()));
        continue;
      }
      bool labels_ok = true;
      std::size_t config = 0;
      for (std::size_t k = 0; k < row.given.size(); ++k) {
        auto it = parent_outcomes[k].find(row.given[k]);
        if (it == parent_outcomes[k].end()) {
          out.push_back(rwhere + ": unknown outcome " + in_quotes(row.given[k]) + " for parent " +
                        in_quotes(node.parents[k]));
          labels_ok = false;
          break;
        }
        config = config * radices[k] + it->second;
      }
      if (row.dist.size() != node.outcomes.size()) {
        out.push_back(rwhere + ": distribution has " + std::to_string(row.dist.size()) + " entries for " +
                      std::to_string(node.outcomes.size()) + " outcomes");
      } else {
        Rational sum;
        bool range_ok = true;
        for (const auto& p : row.dist) {
          if (p < Rational(0) || p > Rational(1)) range_ok = false;
          sum += p;
        }
        if (!range_ok) out.push_back(rwhere + ": probability outside [0, 1]");
        if (sum != Rational(1)) out.push_back(rwhere + ": row not normalized (sums to " + sum.to_string() + ")");
      }
      if (labels_ok && ++hits[config] == 2) out.push_back(rwhere + ": duplicate parent configuration");
    }
    std::size_t missing = static_cast<std::size_t>(std::count(hits.begin(), hits.end(), 0));
    if (missing > 0) {
      out.push_back(where + ": missing CPT row for " + std::to_string(missing) + " of " + std::to_string(configs) +
                    " parent configurations");
    }
  }
  return report;
}

Network Network::build(std::vector<Node> nodes) {
  auto report = validate(nodes);
  if (!report.ok()) throw ValidationError(std::move(report.violations));

  Network net;
  net.nodes_ = std::move(nodes);
  net.index_.resize(net.nodes_.size());
  for (std::size_t i = 0; i < net.nodes_.size(); ++i) net.by_name_.emplace(net.nodes_[i].name, i);

  for (std::size_t i = 0; i < net.nodes_.size(); ++i) {
    const auto& node = net.nodes_[i];
    auto& idx = net.index_[i];
    for (std::size_t k = 0; k < node.outcomes.size(); ++k) idx.outcome_of_label.emplace(node.outcomes[k], k);
    std::size_t configs = 1;
    for (const auto& p : node.parents) {
      std::size_t pi = net.by_name_.at(p);
      idx.parents.push_back(pi);
      idx.radices.push_back(net.nodes_[pi].outcomes.size());
      configs *= net.nodes_[pi].outcomes.size();
    }
    idx.row_of_config.assign(configs, 0);
    for (std::size_t r = 0; r < node.cpt.size(); ++r) {
      std::size_t config = 0;
      for (std::size_t k = 0; k < idx.parents.size(); ++k) {
        config = config * idx.radices[k] + net.index_[idx.parents[k]].outcome_of_label.at(node.cpt[r].given[k]);
      }
      idx.row_of_config[config] = static_cast<std::uint32_t>(r);
    }
  }
  return net;
}

std::optional<std::size_t> Network::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t Network::index_of(std::string_view name) const {
  auto found = find(name);
  if (!found) throw ParseError("unknown node " + in_quotes(name));
  return *found;
}

std::size_t Network::outcome_index(std::size_t node, std::string_view label) const {
  const auto& m = index_.at(node).outcome_of_label;
  auto it = m.find(std::string(label));
  if (it == m.end()) throw ParseError("unknown outcome " + in_quotes(label) + " for node " + in_quotes(nodes_[node].name));
  return it->second;
}

const std::vector<Rational>& Network::row(std::size_t node, std::span<const std::size_t> values) const {
  const auto& idx = index_[node];
  std::size_t config = 0;
  for (std::size_t k = 0; k < idx.parents.size(); ++k) config = config * idx.radices[k] + values[idx.parents[k]];
  return nodes_[node].cpt[idx.row_of_config[config]].dist;
}

std::vector<std::pair<std::size_t, std::size_t>> Network::resolve(const Assignment& a) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(a.size());
  for (const auto& [name, label] : a) {
    std::size_t i = index_of(name);
    out.emplace_back(i, outcome_index(i, label));
  }
  return out;
}

Assignment to_labels(const Network& net, const FullAssignment& values) {
  Assignment out;
  for (std::size_t i = 0; i < net.size(); ++i) out.emplace(net.node(i).name, net.node(i).outcomes.at(values.at(i)));
  return out;
}

Rational joint_probability(const Network& net, const FullAssignment& values) {
  if (values.size() != net.size()) throw std::invalid_argument("joint_probability: assignment size mismatch");
  Rational p(1);
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto& factor = net.row(i, values).at(values[i]);
    if (factor.is_zero()) return Rational(0);
    if (!factor.is_one()) p *= factor;
  }
  return p;
}

Rational joint_probability(const Network& net, const Assignment& assignment) {
  FullAssignment values(net.size(), 0);
  std::vector<bool> covered(net.size(), false);
  for (const auto& [i, o] : net.resolve(assignment)) {
    values[i] = o;
    covered[i] = true;
  }
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (!covered[i]) throw ParseError("joint_probability: node " + in_quotes(net.node(i).name) + " not assigned");
  }
  return joint_probability(net, values);
}

namespace {

class Enumerator {
 public:
  Enumerator(const Network& net, const Assignment& fixed) : net_(net), values_(net.size(), 0) {
    fixed_.assign(net.size(), std::nullopt);
    for (const auto& [i, o] : net.resolve(fixed)) fixed_[i] = o;
  }

  Rational run() {
    total_ = Rational(0);
    visit(0, Rational(1));
    return total_;
  }

 private:
  void visit(std::size_t i, const Rational& weight) {
    if (i == net_.size()) {
      total_ += weight;
      return;
    }
    const auto& dist = net_.row(i, values_);
    auto branch = [&](std::size_t o) {
      const auto& p = dist[o];
      if (p.is_zero()) return;
      values_[i] = o;
      if (p.is_one()) {
        visit(i + 1, weight);
      } else {
        visit(i + 1, weight * p);
      }
    };
    if (fixed_[i]) {
      branch(*fixed_[i]);
    } else {
      for (std::size_t o = 0; o < dist.size(); ++o) branch(o);
    }
  }

  const Network& net_;
  FullAssignment values_;
  std::vector<std::optional<std::size_t>> fixed_;
  Rational total_;
};

}  // namespace

Rational marginal(const Network& net, const Assignment& h) { return Enumerator(net, h).run(); }

Rational conditional(const Network& net, const Assignment& h, const Assignment& e) {
  Assignment joint = e;
  for (const auto& [name, label] : h) {
    auto [it, inserted] = joint.emplace(name, label);
    if (!inserted && it->second != label) {
      // h and e disagree on a shared node: Pr(h, e) = 0.
      if (marginal(net, e).is_zero()) throw ZeroEvidence();
      return Rational(0);
    }
  }
  Rational pe = marginal(net, e);
  if (pe.is_zero()) throw ZeroEvidence();
  return marginal(net, joint) / pe;
}

FullAssignment forward_sample(const Network& net, RandomStream& stream) {
  FullAssignment values(net.size(), 0);
  for (std::size_t i = 0; i < net.size(); ++i) values[i] = sample_categorical(net.row(i, values), stream);
  return values;
}

bool agrees(const Network& net, const FullAssignment& values, const Assignment& a) {
  for (const auto& [i, o] : net.resolve(a)) {
    if (values.at(i) != o) return false;
  }
  return true;
}

Decision decide_threshold(const Network& net, const Assignment& h, const Assignment& e, const Rational& q) {
  return decision_from(conditional(net, h, e) > q);
}

std::string_view to_string(GapKind kind) noexcept { return kind == GapKind::Absolute ? "absolute" : "relative"; }

GapKind gap_kind_from_string(std::string_view text) {
  if (text == "absolute") return GapKind::Absolute;
  if (text == "relative") return GapKind::Relative;
  throw ParseError("unknown gap kind " + in_quotes(text));
}

void validate_instance(const PromiseInstance& inst) {
  std::vector<std::string> out;
  auto check_assignment = [&](const Assignment& a, const char* what) {
    for (const auto& [name, label] : a) {
      auto i = inst.network.find(name);
      if (!i) {
        out.push_back(std::string(what) + ": unknown node " + in_quotes(name));
        continue;
      }
      const auto& outcomes = inst.network.node(*i).outcomes;
      if (std::find(outcomes.begin(), outcomes.end(), label) == outcomes.end()) {
        out.push_back(std::string(what) + ": invalid outcome " + in_quotes(label) + " for node " + in_quotes(name));
      }
    }
  };
  check_assignment(inst.h, "h");
  check_assignment(inst.e, "e");
  for (const auto& [name, label] : inst.h) {
    if (inst.e.contains(name)) out.push_back("node " + in_quotes(name) + " appears in both H and E");
  }
  if (inst.q < Rational(0) || inst.q > Rational(1)) out.push_back("q outside [0, 1]");
  if (inst.epsilon <= Rational(0)) out.push_back("epsilon must be positive");
  if (inst.gap_kind == GapKind::Absolute && inst.epsilon > Rational(1, 2)) {
    out.push_back("absolute epsilon must be at most 1/2");
  }
  if (!out.empty()) throw ValidationError(std::move(out));
}

Rational query_probability(const PromiseInstance& inst) { return conditional(inst.network, inst.h, inst.e); }

std::pair<Rational, Rational> gap_interval(const PromiseInstance& inst) {
  if (inst.gap_kind == GapKind::Absolute) return {inst.q - inst.epsilon, inst.q + inst.epsilon};
  Rational scale = Rational(1) + inst.epsilon;
  return {inst.q / scale, inst.q * scale};
}

PromiseStatus check_promise(const PromiseInstance& inst) {
  Rational p = query_probability(inst);
  auto [low, high] = gap_interval(inst);
  return (low < p && p < high) ? PromiseStatus::Violated : PromiseStatus::Holds;
}

}  // namespace pppt::bn
