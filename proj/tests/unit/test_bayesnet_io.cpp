#include <doctest.h>

#include "pppt/bayesnet_io.hpp"
#include "pppt/errors.hpp"
#include "support/fixtures.hpp"

#include <random>

using namespace pppt;
using namespace pppt::bn;

namespace {

// Random network over up to 6 nodes with 2-3 outcomes and up to 2 parents.
Network random_network(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nodes_d(1, 6), outcomes_d(2, 3), weight_d(0, 5);
  const int count = nodes_d(rng);
  std::vector<Node> nodes;
  for (int i = 0; i < count; ++i) {
    Node n;
    n.name = "N" + std::to_string(i);
    const int k = outcomes_d(rng);
    for (int o = 0; o < k; ++o) n.outcomes.push_back("o" + std::to_string(o));
    for (int p = 0; p < i && n.parents.size() < 2; ++p) {
      if (rng() % 2) n.parents.push_back(nodes[p].name);
    }
    std::vector<std::size_t> radices;
    for (const auto& p : n.parents) radices.push_back(nodes[std::stoi(p.substr(1))].outcomes.size());
    for_each_configuration(radices, [&](std::span<const std::size_t> cfg) {
      CptRow row;
      for (std::size_t j = 0; j < cfg.size(); ++j) {
        row.given.push_back(nodes[std::stoi(n.parents[j].substr(1))].outcomes[cfg[j]]);
      }
      std::vector<int> w(k);
      int total = 0;
      for (auto& x : w) total += (x = weight_d(rng));
      if (total == 0) {
        w[0] = 1;
        total = 1;
      }
      for (int x : w) row.dist.emplace_back(x, total);
      n.cpt.push_back(std::move(row));
    });
    nodes.push_back(std::move(n));
  }
  return Network::build(std::move(nodes));
}

}  // namespace

TEST_CASE("network serialization round-trips") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    auto net = random_network(rng);
    const std::string text = serialize_network(net);
    auto back = parse_network(text);
    CHECK(serialize_network(back) == text);
    CHECK(back.size() == net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
      CHECK(back.node(i).name == net.node(i).name);
      CHECK(back.node(i).parents == net.node(i).parents);
      REQUIRE(back.node(i).cpt.size() == net.node(i).cpt.size());
      for (std::size_t r = 0; r < net.node(i).cpt.size(); ++r) {
        CHECK(back.node(i).cpt[r].dist == net.node(i).cpt[r].dist);
      }
    }
  }
}

TEST_CASE("fixture networks round-trip") {
  for (const auto& net : {testing::noisy_or(), testing::chained_with_marginal(Rational(1, 3))}) {
    const std::string text = serialize_network(net);
    CHECK(serialize_network(parse_network(text)) == text);
    CHECK(text.back() == '\n');
  }
}

TEST_CASE("probabilities are written as exact fractions") {
  auto text = serialize_network(testing::biased_binary(Rational(1, 3)));
  CHECK(text.find("\"2/3\"") != std::string::npos);
  CHECK(text.find("\"1/3\"") != std::string::npos);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(parse_network("{"), ParseError);
  CHECK_THROWS_AS(parse_network("{\"nodes\": 3}"), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"nodes": [{"name": "X", "outcomes": ["0", "1"], "parents": [],
      "cpt": [{"given": {}, "dist": {"0": "1/2", "1": "2/5"}}]}]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_network(R"({"nodes": [{"name": "X", "outcomes": ["0", "1"], "parents": [],
      "cpt": [{"given": {}, "dist": {"0": "half", "1": "1/2"}}]}]})"),
                  ParseError);
}

TEST_CASE("instance documents in both shapes") {
  auto promise = instance_document_from_json(parse_json(R"({"network": "net.json", "h": {"C": "1"},
      "e": {"A": "0"}, "q": "1/2", "epsilon": "1/8", "gap_kind": "relative"})"));
  CHECK(promise.network == "net.json");
  CHECK(promise.h == Assignment{{"C", "1"}});
  CHECK(promise.e == Assignment{{"A", "0"}});
  CHECK(promise.epsilon == Rational(1, 8));
  CHECK(promise.gap_kind == GapKind::Relative);

  auto compiled = instance_document_from_json(
      parse_json(R"({"network": "net.json", "query_node": "MS_3", "accept_outcome": "acc", "q": "1/2", "k": 3})"));
  CHECK(compiled.h == Assignment{{"MS_3", "acc"}});
  CHECK(compiled.e.empty());
  CHECK(compiled.epsilon == Rational(1, 8));
  CHECK(compiled.gap_kind == GapKind::Absolute);
  REQUIRE(compiled.k.has_value());
  CHECK(*compiled.k == 3);

  auto again = instance_document_from_json(parse_json(dump(to_json(compiled))));
  CHECK(again.h == compiled.h);
  CHECK(again.epsilon == compiled.epsilon);
}
