#pragma once

#include "pppt/bayesnet.hpp"
#include "pppt/ptm.hpp"

#include <string>
#include <vector>

namespace pppt::testing {

/// Rule with wildcards: `read` "*" matches every tape symbol (and "*" in
/// `write` then copies the read symbol); '*' characters in `bits` match
/// both bit values.
struct Rule {
  std::string state;
  std::string read;
  std::string bits;
  std::string write;
  ptm::Move move;
  std::string next;
};

ptm::MachineDescription make_machine(std::vector<std::string> working_states, std::vector<std::string> tape_alphabet,
                                     std::vector<std::string> input_alphabet, unsigned bits_per_step,
                                     const std::vector<Rule>& rules);

struct MachineFixture {
  std::string name;
  ptm::Machine machine;
  std::vector<ptm::Word> inputs;
};

ptm::Machine always_accept();
ptm::Machine always_reject();
ptm::Machine first_bit();
ptm::Machine coin_cascade();
ptm::Machine three_quarters();

/// The fixture suite: at most 4 states, alphabets of 2-3 symbols,
/// r in {1, 2}, inputs of length at most 3.
std::vector<MachineFixture> machine_suite();

/// Uniform binary node "X" with outcomes {"0", "1"}.
bn::Network uniform_binary(const std::string& name = "X");

/// A -> B where B copies A.
bn::Network copy_chain();

/// Leak/noisy-OR style network: A, B independent causes, C = noisy OR.
bn::Network noisy_or();

/// Single node H over {"0","1"} with Pr(H = "1") = p.
bn::Network biased_binary(const Rational& p, const std::string& name = "H");

/// Chain A -> H -> C of width 3 with Pr(H = "1") = p (for multi-node H tests).
bn::Network chained_with_marginal(const Rational& p);

}  // namespace pppt::testing
