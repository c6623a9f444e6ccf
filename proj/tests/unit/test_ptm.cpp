#include <doctest.h>

#include "pppt/errors.hpp"
#include "pppt/ptm.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace pppt;
using namespace pppt::ptm;
using pppt::testing::make_machine;
using pppt::testing::Rule;

namespace {

Machine walker() {
  // Copies the read symbol and steps right on a 1, left on a 0.
  return Machine::build(make_machine({"s"}, {"_", "0", "1"}, {"0", "1"}, 1,
                                     {{"s", "*", "1", "*", Move::Right, "s"}, {"s", "*", "0", "*", Move::Left, "s"}}));
}

}  // namespace

TEST_CASE("a single step writes, moves and changes state") {
  auto m = Machine::build(make_machine({"s", "t"}, {"_", "0", "1"}, {"0", "1"}, 1,
                                       {{"s", "1", "1", "0", Move::Right, "t"},
                                        {"s", "*", "*", "*", Move::Stay, "rej"},
                                        {"t", "*", "*", "*", Move::Stay, "acc"}}));
  auto c0 = initial_configuration(m, {"1", "0"}, 3);
  CHECK(c0.tape.size() == 4);
  CHECK(c0.head == 0);
  auto c1 = step(m, c0, "1");
  CHECK(m.symbol_name(c1.tape[0]) == "0");
  CHECK(c1.head == 1);
  CHECK(m.state_name(c1.state) == "t");
  CHECK(c1.step == 1);
  auto c1b = step(m, c0, "0");
  CHECK(m.state_name(c1b.state) == "rej");
  CHECK_THROWS_AS(step(m, c1b, "0"), std::logic_error);
}

TEST_CASE("the head is clamped to the tape window") {
  auto m = walker();
  auto c = initial_configuration(m, {}, 2);
  c = step(m, c, "0");
  CHECK(c.head == 0);
  c = step(m, c, "1");
  c = step(m, c, "1");
  CHECK(c.head == 2);
  c = step(m, c, "1");
  CHECK(c.head == 2);
}

TEST_CASE("missing transitions") {
  auto d = make_machine({"s"}, {"_", "0", "1"}, {"0", "1"}, 1, {{"s", "_", "*", "_", Move::Stay, "acc"}});
  auto m = Machine::build(d);
  CHECK_FALSE(m.is_total());
  CHECK(m.missing_transitions().size() == 4);
  CHECK_FALSE(lint(d).ok());
  auto c = initial_configuration(m, {"1"}, 1);
  CHECK_THROWS_AS(step(m, c, "0"), MissingTransition);
}

TEST_CASE("machine construction rejects malformed descriptions") {
  auto d = testing::always_accept().description();
  auto bad = d;
  bad.start_state = "nowhere";
  CHECK_THROWS_AS(Machine::build(bad), ValidationError);
  bad = d;
  bad.transitions[0].bits = "01";
  CHECK_THROWS_AS(Machine::build(bad), ValidationError);
  bad = d;
  bad.input_alphabet.push_back("_");
  CHECK_THROWS_AS(Machine::build(bad), ValidationError);
}

TEST_CASE("exact acceptance probabilities") {
  CHECK(acceptance_probability(testing::always_accept(), {}, 1) == Rational(1));
  CHECK(acceptance_probability(testing::always_reject(), {}, 1) == Rational(0));
  CHECK(acceptance_probability(testing::first_bit(), {}, 1) == Rational(1, 2));
  CHECK(acceptance_probability(testing::coin_cascade(), {}, 2) == Rational(1, 4));
  CHECK(acceptance_probability(testing::coin_cascade(), {}, 1) == Rational(0));
  CHECK(acceptance_probability(testing::three_quarters(), {}, 1) == Rational(3, 4));
  CHECK(acceptance_probability(testing::always_accept(), {}, 0) == Rational(0));
}

TEST_CASE("the outcome split always sums to one") {
  for (const auto& fx : testing::machine_suite()) {
    for (const auto& x : fx.inputs) {
      for (std::size_t n = std::max<std::size_t>(x.size(), 1) - 1; n <= 5; ++n) {
        if (x.size() > n + 1) continue;
        auto split = acceptance_split(fx.machine, x, n);
        CAPTURE(fx.name);
        CAPTURE(n);
        CHECK(split.accept + split.reject + split.unhalted == Rational(1));
        CHECK(split.accept >= Rational(0));
        CHECK(split.unhalted >= Rational(0));
      }
    }
  }
  auto split = acceptance_split(testing::machine_suite()[7].machine, {}, 4);
  CHECK(split.unhalted == Rational(1));
}

TEST_CASE("the enumeration guard") {
  auto m = testing::three_quarters();
  CHECK_THROWS_AS(acceptance_split(m, {}, 13), EnumerationTooLarge);
  CHECK_NOTHROW(acceptance_split(m, {}, 12));
  CHECK_THROWS_AS(acceptance_split(m, {}, 3, 4), EnumerationTooLarge);
}

TEST_CASE("sampled runs converge to the exact acceptance probability") {
  auto m = testing::three_quarters();
  const std::uint64_t n = 10000;
  std::uint64_t accepted = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    RandomStream s(31, t);
    accepted += run_sampled(m, {}, 1, s) == RunOutcome::Accepted;
  }
  const double freq = static_cast<double>(accepted) / n;
  CHECK(freq >= 0.737);
  CHECK(freq <= 0.763);

  for (const auto& fx : testing::machine_suite()) {
    for (const auto& x : fx.inputs) {
      const std::size_t steps = 4;
      const double p = acceptance_probability(fx.machine, x, steps).to_double();
      const std::uint64_t trials = 4000;
      std::uint64_t yes = 0;
      for (std::uint64_t t = 0; t < trials; ++t) {
        RandomStream s(77, t);
        yes += decide_error_ptm_acceptance(x, steps, fx.machine, s) == Decision::Yes;
      }
      CAPTURE(fx.name);
      CHECK(std::abs(static_cast<double>(yes) / trials - p) <= std::max(testing::three_sigma(p, trials), 1e-12));
    }
  }
}

TEST_CASE("sampled runs stop drawing bits at halt") {
  RandomStream s(1, 0);
  CHECK(run_sampled(testing::always_accept(), {}, 10, s) == RunOutcome::Accepted);
  CHECK(s.position() == 1);
}

TEST_CASE("run_exact_steps leaves halted configurations alone") {
  auto m = testing::coin_cascade();
  auto c = run_exact_steps(m, initial_configuration(m, {}, 3), "011", 3);
  CHECK(m.state_name(c.state) == "rej");
  CHECK(c.step == 1);
  auto d = run_exact_steps(m, c, "11", 2);
  CHECK(d == c);
}

TEST_CASE("bit patterns are read most significant first") {
  CHECK(pattern_value("10") == 2);
  CHECK(pattern_value("01") == 1);
  CHECK(pattern_string(5, 3) == "101");
  CHECK(parse_word("a,b,c") == Word{"a", "b", "c"});
  CHECK(parse_word("101") == Word{"1", "0", "1"});
  CHECK(parse_word("").empty());
}

TEST_CASE("clockify preserves acceptance and fixes the running time") {
  for (const auto& fx : testing::machine_suite()) {
    for (const auto& x : fx.inputs) {
      for (std::size_t t : {1u, 2u, 3u, 4u}) {
        if (x.size() > t + 1) continue;
        auto c = clockify(fx.machine, t);
        CAPTURE(fx.name);
        CAPTURE(t);
        CHECK(c.is_total() == fx.machine.is_total());
        auto original = acceptance_split(fx.machine, x, t);
        auto clocked = acceptance_split(c, x, t);
        CHECK(clocked.accept == original.accept);
        CHECK(clocked.unhalted == Rational(0));
        // No run of the clocked machine halts early.
        if (t > 1 && x.size() <= t) CHECK(acceptance_split(c, x, t - 1).unhalted == Rational(1));
      }
    }
  }
}

TEST_CASE("clockify on a machine that halts immediately") {
  auto c = clockify(testing::always_accept(), 3);
  CHECK(acceptance_probability(c, {}, 3) == Rational(1));
  CHECK(acceptance_probability(c, {}, 2) == Rational(0));
  auto rc = clockify(testing::always_reject(), 3);
  CHECK(acceptance_split(rc, {}, 3).reject == Rational(1));
}
