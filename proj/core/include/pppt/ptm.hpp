#pragma once

#include "pppt/decision.hpp"
#include "pppt/random_stream.hpp"
#include "pppt/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pppt::ptm {

enum class Move { Left, Right, Stay };

std::string_view to_string(Move m) noexcept;
Move move_from_string(std::string_view text);

/// One entry of the transition map. `bits` is a string of '0'/'1' of length
/// bits_per_step; its first character is the first bit drawn in the step.
struct Transition {
  std::string state;
  std::string read;
  std::string bits;
  std::string write;
  Move move = Move::Stay;
  std::string next;
};

struct MachineDescription {
  std::vector<std::string> states;
  std::string start_state;
  std::string accept_state;
  std::string reject_state;
  std::vector<std::string> tape_alphabet;
  std::string blank;
  std::vector<std::string> input_alphabet;
  unsigned bits_per_step = 1;
  std::vector<Transition> transitions;
};

struct LintReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const noexcept { return errors.empty(); }
};

/// Structural checks plus totality. Missing transitions are errors. A
/// bits_per_step above log2 of the description size is only a warning.
LintReport lint(const MachineDescription& desc);

/// A probabilistic Turing machine with its transition map indexed densely.
///
/// The accept and reject states are absorbing: transitions listed from them
/// are ignored. The map may be partial; stepping into a missing entry throws
/// MissingTransition, and `missing_transitions()` lists the gaps.
class Machine {
 public:
  struct Action {
    std::size_t write = 0;
    Move move = Move::Stay;
    std::size_t next = 0;
  };

  /// Checks names, alphabets and bit-pattern widths (not totality).
  /// Throws ValidationError.
  static Machine build(MachineDescription desc);

  const MachineDescription& description() const noexcept { return desc_; }

  std::size_t state_count() const noexcept { return desc_.states.size(); }
  std::size_t symbol_count() const noexcept { return desc_.tape_alphabet.size(); }
  unsigned bits_per_step() const noexcept { return desc_.bits_per_step; }
  std::uint32_t bit_patterns() const noexcept { return std::uint32_t{1} << desc_.bits_per_step; }

  std::size_t start() const noexcept { return start_; }
  std::size_t accept() const noexcept { return accept_; }
  std::size_t reject() const noexcept { return reject_; }
  std::size_t blank() const noexcept { return blank_; }
  bool is_halting(std::size_t state) const noexcept { return state == accept_ || state == reject_; }

  std::size_t state_index(std::string_view name) const;
  std::size_t symbol_index(std::string_view name) const;
  const std::string& state_name(std::size_t i) const { return desc_.states.at(i); }
  const std::string& symbol_name(std::size_t i) const { return desc_.tape_alphabet.at(i); }
  bool is_input_symbol(std::size_t symbol) const { return input_symbol_.at(symbol); }

  /// Action for (state, symbol, bit pattern) or nullptr when undefined.
  const Action* action(std::size_t state, std::size_t symbol, std::uint32_t bits) const;

  std::vector<std::string> missing_transitions() const;
  bool is_total() const { return missing_transitions().empty(); }

 private:
  MachineDescription desc_;
  std::size_t start_ = 0;
  std::size_t accept_ = 0;
  std::size_t reject_ = 0;
  std::size_t blank_ = 0;
  std::vector<bool> input_symbol_;
  std::vector<Action> table_;
  std::vector<bool> defined_;
};

/// Bit-pattern string ("01...") to its integer value, first character most
/// significant, and back.
std::uint32_t pattern_value(std::string_view bits);
std::string pattern_string(std::uint32_t value, unsigned width);

/// A tape word: one symbol per cell.
using Word = std::vector<std::string>;

/// Splits "a,b,c" on commas, otherwise treats every character as a symbol.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

/// Machine configuration over the tape window [0, last_cell].
struct Configuration {
  std::vector<std::size_t> tape;
  std::size_t head = 0;
  std::size_t state = 0;
  std::uint64_t step = 0;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Start configuration with `input` written from cell 0 in a window of
/// `steps + 1` cells. Throws std::invalid_argument if the input does not fit
/// or uses a non-input symbol.
Configuration initial_configuration(const Machine& m, const Word& input, std::size_t steps);

/// One transition. Moves leaving the window leave the head in place.
/// Throws std::logic_error from a halting state and MissingTransition when
/// the map has no entry for the key.
Configuration step(const Machine& m, const Configuration& c, std::uint32_t bits);
Configuration step(const Machine& m, const Configuration& c, std::string_view bits);

/// Runs until `steps` transitions have been taken or the machine halts,
/// consuming bits_per_step characters of `bit_string` per transition. A
/// halted configuration is returned unchanged.
Configuration run_exact_steps(const Machine& m, Configuration c, std::string_view bit_string, std::size_t steps);

enum class RunOutcome { Accepted, Rejected, Unhalted };

std::string_view to_string(RunOutcome o) noexcept;

/// Simulates `steps` transitions drawing bits_per_step bits per transition
/// from `stream` (no bits are drawn once the machine has halted).
RunOutcome run_sampled(const Machine& m, const Word& input, std::size_t steps, RandomStream& stream);

/// Exact probabilities of the three outcomes after `steps` transitions.
/// The three always sum to 1.
struct AcceptanceSplit {
  Rational accept;
  Rational reject;
  Rational unhalted;
};

inline constexpr unsigned kDefaultEnumerationGuard = 24;

/// Enumerates all 2^(r * steps) random strings. Throws EnumerationTooLarge
/// when r * steps exceeds `max_random_bits`.
AcceptanceSplit acceptance_split(const Machine& m, const Word& input, std::size_t steps,
                                 unsigned max_random_bits = kDefaultEnumerationGuard);

Rational acceptance_probability(const Machine& m, const Word& input, std::size_t steps,
                                unsigned max_random_bits = kDefaultEnumerationGuard);

/// Single sampled run: Yes iff the run accepts within `steps`. Unhalted runs
/// count as No.
Decision decide_error_ptm_acceptance(const Word& input, std::size_t steps, const Machine& m, RandomStream& stream);

/// Machine that runs exactly `total_steps` transitions on every input and
/// random string, carrying `m`'s outcome in holding states once `m` halts,
/// then accepts iff `m` accepted. Runs of `m` still going after
/// `total_steps` transitions end in reject.
Machine clockify(const Machine& m, std::size_t total_steps);

}  // namespace pppt::ptm
