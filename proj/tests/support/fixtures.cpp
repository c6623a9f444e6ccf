#include "support/fixtures.hpp"

#include <set>
#include <tuple>

namespace pppt::testing {

namespace {

std::vector<std::string> expand_bits(const std::string& pattern) {
  std::vector<std::string> out{""};
  for (char c : pattern) {
    std::vector<std::string> next;
    for (const auto& prefix : out) {
      if (c == '*') {
        next.push_back(prefix + '0');
        next.push_back(prefix + '1');
      } else {
        next.push_back(prefix + c);
      }
    }
    out = std::move(next);
  }
  return out;
}

Rational r(std::int64_t num, std::int64_t den) { return Rational(num, den); }

}  // namespace

ptm::MachineDescription make_machine(std::vector<std::string> working_states, std::vector<std::string> tape_alphabet,
                                     std::vector<std::string> input_alphabet, unsigned bits_per_step,
                                     const std::vector<Rule>& rules) {
  ptm::MachineDescription d;
  d.states = working_states;
  d.states.push_back("acc");
  d.states.push_back("rej");
  d.start_state = working_states.front();
  d.accept_state = "acc";
  d.reject_state = "rej";
  d.tape_alphabet = tape_alphabet;
  d.blank = tape_alphabet.front();
  d.input_alphabet = std::move(input_alphabet);
  d.bits_per_step = bits_per_step;

  std::set<std::tuple<std::string, std::string, std::string>> taken;
  for (const auto& rule : rules) {
    std::vector<std::string> reads = rule.read == "*" ? tape_alphabet : std::vector<std::string>{rule.read};
    for (const auto& a : reads) {
      for (const auto& bits : expand_bits(rule.bits)) {
        if (!taken.emplace(rule.state, a, bits).second) continue;
        d.transitions.push_back(
            ptm::Transition{rule.state, a, bits, rule.write == "*" ? a : rule.write, rule.move, rule.next});
      }
    }
  }
  return d;
}

using ptm::Move;

namespace {
const std::vector<std::string> kTape = {"_", "0", "1"};
const std::vector<std::string> kInput = {"0", "1"};
}  // namespace

ptm::Machine always_accept() {
  return ptm::Machine::build(make_machine({"s"}, kTape, kInput, 1, {{"s", "*", "*", "*", Move::Stay, "acc"}}));
}

ptm::Machine always_reject() {
  return ptm::Machine::build(make_machine({"s"}, kTape, kInput, 1, {{"s", "*", "*", "*", Move::Stay, "rej"}}));
}

ptm::Machine first_bit() {
  return ptm::Machine::build(make_machine({"s"}, kTape, kInput, 1,
                                          {{"s", "*", "1", "*", Move::Stay, "acc"},
                                           {"s", "*", "0", "*", Move::Stay, "rej"}}));
}

ptm::Machine coin_cascade() {
  return ptm::Machine::build(make_machine({"s0", "s1"}, kTape, kInput, 1,
                                          {{"s0", "*", "1", "*", Move::Stay, "s1"},
                                           {"s0", "*", "0", "*", Move::Stay, "rej"},
                                           {"s1", "*", "1", "*", Move::Stay, "acc"},
                                           {"s1", "*", "0", "*", Move::Stay, "rej"}}));
}

ptm::Machine three_quarters() {
  return ptm::Machine::build(make_machine({"s"}, kTape, kInput, 2,
                                          {{"s", "*", "00", "*", Move::Stay, "rej"},
                                           {"s", "*", "**", "*", Move::Stay, "acc"}}));
}

std::vector<MachineFixture> machine_suite() {
  std::vector<MachineFixture> suite;
  const std::vector<ptm::Word> words = {{}, {"1"}, {"0", "1"}, {"1", "1", "0"}};

  suite.push_back({"always_accept", always_accept(), {{}, {"1"}}});
  suite.push_back({"always_reject", always_reject(), {{}}});
  suite.push_back({"first_bit", first_bit(), {{}, {"0"}}});
  suite.push_back({"coin_cascade", coin_cascade(), {{}, {"1", "0"}}});
  suite.push_back({"three_quarters", three_quarters(), {{}}});

  // Walks right over the input; on a 1 it flips a coin to accept or erase it.
  suite.push_back({"scan",
                   ptm::Machine::build(make_machine({"s"}, kTape, kInput, 1,
                                                    {{"s", "1", "1", "1", Move::Stay, "acc"},
                                                     {"s", "1", "0", "0", Move::Right, "s"},
                                                     {"s", "0", "*", "0", Move::Right, "s"},
                                                     {"s", "_", "*", "_", Move::Stay, "rej"}})),
                   words});

  // Writes random symbols, sometimes stepping left (clamped at cell 0) to
  // read back what is there.
  suite.push_back({"random_writer",
                   ptm::Machine::build(make_machine({"w", "r"}, kTape, kInput, 2,
                                                    {{"w", "*", "00", "0", Move::Left, "r"},
                                                     {"w", "*", "01", "0", Move::Right, "w"},
                                                     {"w", "*", "10", "1", Move::Left, "r"},
                                                     {"w", "*", "11", "1", Move::Right, "w"},
                                                     {"r", "1", "**", "1", Move::Stay, "acc"},
                                                     {"r", "0", "**", "0", Move::Stay, "rej"},
                                                     {"r", "_", "**", "_", Move::Right, "w"}})),
                   {{}, {"1"}, {"0", "1"}}});

  // Never halts: all mass is unhalted.
  suite.push_back({"looper",
                   ptm::Machine::build(make_machine({"s"}, kTape, kInput, 1, {{"s", "*", "*", "*", Move::Right, "s"}})),
                   {{}, {"1", "0"}}});

  // Moves left from cell 0 (clamped) and inspects what it wrote.
  suite.push_back({"bouncer",
                   ptm::Machine::build(make_machine({"s", "t"}, kTape, kInput, 1,
                                                    {{"s", "*", "0", "1", Move::Left, "t"},
                                                     {"s", "*", "1", "0", Move::Right, "s"},
                                                     {"t", "1", "*", "1", Move::Stay, "acc"},
                                                     {"t", "0", "*", "0", Move::Right, "s"},
                                                     {"t", "_", "*", "_", Move::Stay, "rej"}})),
                   words});

  // Deterministic on a leading 1, otherwise a fair coin after one step.
  suite.push_back({"input_gate",
                   ptm::Machine::build(make_machine({"s", "c"}, kTape, kInput, 1,
                                                    {{"s", "1", "*", "1", Move::Right, "acc"},
                                                     {"s", "0", "*", "0", Move::Right, "c"},
                                                     {"s", "_", "*", "_", Move::Stay, "rej"},
                                                     {"c", "*", "1", "*", Move::Stay, "acc"},
                                                     {"c", "*", "0", "*", Move::Stay, "rej"}})),
                   {{"1"}, {"0"}, {}, {"0", "1", "1"}}});

  // Binary alphabet {_, 1}, r = 2: copies bit pairs onto the tape and
  // accepts after seeing two written ones in a row.
  suite.push_back({"pair_writer",
                   ptm::Machine::build(make_machine({"a", "b"}, {"_", "1"}, {"1"}, 2,
                                                    {{"a", "*", "1*", "1", Move::Right, "b"},
                                                     {"a", "*", "0*", "_", Move::Right, "a"},
                                                     {"b", "1", "**", "1", Move::Stay, "acc"},
                                                     {"b", "_", "*1", "1", Move::Left, "b"},
                                                     {"b", "_", "*0", "_", Move::Stay, "rej"}})),
                   {{}, {"1"}, {"1", "1"}}});
  return suite;
}

bn::Network uniform_binary(const std::string& name) {
  return bn::Network::build({bn::Node{name, {"0", "1"}, {}, {{{}, {r(1, 2), r(1, 2)}}}}});
}

bn::Network copy_chain() {
  return bn::Network::build({
      bn::Node{"A", {"0", "1"}, {}, {{{}, {r(1, 2), r(1, 2)}}}},
      bn::Node{"B", {"0", "1"}, {"A"}, {{{"0"}, {r(1, 1), r(0, 1)}}, {{"1"}, {r(0, 1), r(1, 1)}}}},
  });
}

bn::Network noisy_or() {
  // Pr(C=1 | a, b) = 1 - (9/10) (1/5)^a (2/5)^b.
  auto on = [](Rational p) { return std::vector<Rational>{Rational(1) - p, p}; };
  return bn::Network::build({
      bn::Node{"A", {"0", "1"}, {}, {{{}, {r(2, 3), r(1, 3)}}}},
      bn::Node{"B", {"0", "1"}, {}, {{{}, {r(3, 4), r(1, 4)}}}},
      bn::Node{"C",
               {"0", "1"},
               {"A", "B"},
               {{{"0", "0"}, on(r(1, 10))},
                {{"0", "1"}, on(Rational(1) - r(9, 10) * r(2, 5))},
                {{"1", "0"}, on(Rational(1) - r(9, 10) * r(1, 5))},
                {{"1", "1"}, on(Rational(1) - r(9, 10) * r(1, 5) * r(2, 5))}}},
  });
}

bn::Network biased_binary(const Rational& p, const std::string& name) {
  return bn::Network::build({bn::Node{name, {"0", "1"}, {}, {{{}, {Rational(1) - p, p}}}}});
}

bn::Network chained_with_marginal(const Rational& p) {
  // A over {a, b, c}; Pr(H = 1 | A) averages to p; C is a noisy copy of H.
  const Rational third(1, 3);
  return bn::Network::build({
      bn::Node{"A", {"a", "b", "c"}, {}, {{{}, {third, third, third}}}},
      bn::Node{"H",
               {"0", "1"},
               {"A"},
               {{{"a"}, {Rational(1) - p, p}}, {{"b"}, {Rational(1) - p, p}}, {{"c"}, {Rational(1) - p, p}}}},
      bn::Node{"C", {"0", "1"}, {"H"}, {{{"0"}, {r(3, 4), r(1, 4)}}, {{"1"}, {r(1, 4), r(3, 4)}}}},
  });
}

}  // namespace pppt::testing
