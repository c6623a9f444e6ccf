#pragma once

#include "pppt/decision.hpp"
#include "pppt/random_stream.hpp"
#include "pppt/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pppt::bn {

/// Partial assignment: node name -> outcome label. The key set plays the
/// role of the variable set (H or E) and the values the joint value (h or e).
using Assignment = std::map<std::string, std::string>;

/// Outcome index per node, in network order.
using FullAssignment = std::vector<std::size_t>;

/// One CPT row. `given` holds one outcome label per parent, in the node's
/// parent-list order; `dist` holds one probability per outcome, in the
/// node's outcome order.
struct CptRow {
  std::vector<std::string> given;
  std::vector<Rational> dist;
};

struct Node {
  std::string name;
  std::vector<std::string> outcomes;
  std::vector<std::string> parents;
  std::vector<CptRow> cpt;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks every node and network invariant and lists all violations:
/// duplicate names, empty outcome sets, dangling parents, cycles, nodes out
/// of topological order, malformed rows, rows that do not sum to 1, and
/// missing or duplicated parent configurations.
ValidationReport validate(std::span<const Node> nodes);

/// Calls `fn` once per configuration of a mixed-radix counter, last digit
/// fastest. This is the canonical CPT row order used by every builder.
void for_each_configuration(std::span<const std::size_t> radices,
                            const std::function<void(std::span<const std::size_t>)>& fn);

/// Validated, immutable Bayesian network. Nodes are stored in a topological
/// order and every CPT is total over its parent configurations.
class Network {
 public:
  /// Validates and indexes `nodes`. Throws ValidationError.
  static Network build(std::vector<Node> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Index of a node; throws ParseError for an unknown name.
  std::size_t index_of(std::string_view name) const;
  /// Index of an outcome label of node `node`; throws ParseError if unknown.
  std::size_t outcome_index(std::size_t node, std::string_view label) const;

  const std::vector<std::size_t>& parent_indices(std::size_t node) const { return index_.at(node).parents; }

  /// Distribution of `node` given the outcomes its parents take in `values`
  /// (only parent entries are read).
  const std::vector<Rational>& row(std::size_t node, std::span<const std::size_t> values) const;

  /// Converts a label assignment to (node index, outcome index) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> resolve(const Assignment& a) const;

 private:
  struct NodeIndex {
    std::vector<std::size_t> parents;
    std::vector<std::size_t> radices;
    std::vector<std::uint32_t> row_of_config;
    std::unordered_map<std::string, std::size_t> outcome_of_label;
  };

  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::vector<NodeIndex> index_;
};

Assignment to_labels(const Network& net, const FullAssignment& values);

/// Chain-rule product of CPT entries. Throws on size mismatch.
Rational joint_probability(const Network& net, const FullAssignment& values);
/// Same, from labels; `assignment` must name every node. Throws ParseError
/// on unknown nodes or outcome labels.
Rational joint_probability(const Network& net, const Assignment& assignment);

/// Pr(h): the sum of joint probabilities over every full assignment that
/// agrees with `h`. Exact enumeration; assignments that are inconsistent
/// with `h` or carry a zero CPT factor are skipped since they add nothing.
Rational marginal(const Network& net, const Assignment& h);

/// Pr(h | e) = Pr(h, e) / Pr(e). Throws ZeroEvidence when Pr(e) = 0.
Rational conditional(const Network& net, const Assignment& h, const Assignment& e);

/// One full assignment drawn in node (topological) order from the CPTs.
FullAssignment forward_sample(const Network& net, RandomStream& stream);

/// True when `values` agrees with every entry of `a`.
bool agrees(const Network& net, const FullAssignment& values, const Assignment& a);

/// Yes iff Pr(h | e) > q, exactly.
Decision decide_threshold(const Network& net, const Assignment& h, const Assignment& e, const Rational& q);

enum class GapKind { Absolute, Relative };

std::string_view to_string(GapKind kind) noexcept;
GapKind gap_kind_from_string(std::string_view text);

/// An approximate-inference query with its promise.
///
/// Absolute gap: Pr(h | e) lies outside the open interval (q - eps, q + eps).
/// Relative gap: Pr(h | e) lies outside the open interval (q / (1 + eps), q (1 + eps)).
/// With e empty the queried quantity is simply Pr(h).
struct PromiseInstance {
  Network network;
  Assignment h;
  Assignment e;
  Rational q;
  Rational epsilon;
  GapKind gap_kind = GapKind::Absolute;
};

/// Checks the instance invariants (H and E disjoint, labels valid, q in
/// [0, 1], eps in (0, 1/2] for absolute gaps and eps > 0 for relative ones).
/// Throws ValidationError.
void validate_instance(const PromiseInstance& inst);

/// Pr(h | e) for the instance.
Rational query_probability(const PromiseInstance& inst);

/// The open gap interval (low, high) around q.
std::pair<Rational, Rational> gap_interval(const PromiseInstance& inst);

enum class PromiseStatus { Holds, Violated };

/// Evaluates the promise exactly. Interval endpoints satisfy the promise.
PromiseStatus check_promise(const PromiseInstance& inst);

}  // namespace pppt::bn
