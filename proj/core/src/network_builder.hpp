#pragma once

#include "pppt/bayesnet.hpp"

#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace pppt::detail {

/// Accumulates nodes in topological order and fills their CPTs from a
/// function of the parents' outcome indices, in canonical row order.
class NetworkBuilder {
 public:
  using DistFn = std::function<std::vector<Rational>(std::span<const std::size_t>)>;
  using PointFn = std::function<std::size_t(std::span<const std::size_t>)>;

  explicit NetworkBuilder(std::vector<bn::Node> base = {}) : nodes_(std::move(base)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].name, i);
  }

  bool contains(const std::string& name) const { return index_.contains(name); }
  const std::vector<std::string>& outcomes_of(const std::string& name) const {
    return nodes_.at(index_.at(name)).outcomes;
  }

  void add(std::string name, std::vector<std::string> outcomes, std::vector<std::string> parents, const DistFn& dist) {
    bn::Node node;
    node.name = std::move(name);
    node.outcomes = std::move(outcomes);
    node.parents = std::move(parents);
    std::vector<const std::vector<std::string>*> labels;
    std::vector<std::size_t> radices;
    for (const auto& p : node.parents) {
      labels.push_back(&outcomes_of(p));
      radices.push_back(labels.back()->size());
    }
    bn::for_each_configuration(radices, [&](std::span<const std::size_t> config) {
      bn::CptRow row;
      row.given.reserve(config.size());
      for (std::size_t k = 0; k < config.size(); ++k) row.given.push_back((*labels[k])[config[k]]);
      row.dist = dist(config);
      node.cpt.push_back(std::move(row));
    });
    index_.emplace(node.name, nodes_.size());
    nodes_.push_back(std::move(node));
  }

  void add_point(std::string name, std::vector<std::string> outcomes, std::vector<std::string> parents,
                 const PointFn& pick) {
    const std::size_t width = outcomes.size();
    add(std::move(name), std::move(outcomes), std::move(parents), [&](std::span<const std::size_t> config) {
      std::vector<Rational> dist(width, Rational(0));
      dist.at(pick(config)) = Rational(1);
      return dist;
    });
  }

  bn::Network build() && { return bn::Network::build(std::move(nodes_)); }

 private:
  std::vector<bn::Node> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace pppt::detail
