#include "pppt/ptm.hpp"

#include "pppt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace pppt::ptm {

namespace {

std::string in_quotes(std::string_view s) { return "\"" + std::string(s) + "\""; }

constexpr unsigned kMaxBitsPerStep = 16;

std::size_t position_of(const std::vector<std::string>& items, std::string_view name) {
  auto it = std::find(items.begin(), items.end(), name);
  return it == items.end() ? items.size() : static_cast<std::size_t>(it - items.begin());
}

bool is_bit_pattern(std::string_view bits, unsigned width) {
  return bits.size() == width && std::all_of(bits.begin(), bits.end(), [](char c) { return c == '0' || c == '1'; });
}

std::vector<std::string> structural_errors(const MachineDescription& d) {
  std::vector<std::string> out;
  auto check_unique = [&](const std::vector<std::string>& items, const char* what) {
    std::set<std::string> seen;
    for (const auto& s : items) {
      if (s.empty()) out.push_back(std::string("empty ") + what + " name");
      if (!seen.insert(s).second) out.push_back(std::string("duplicate ") + what + " " + in_quotes(s));
    }
  };
  check_unique(d.states, "state");
  check_unique(d.tape_alphabet, "tape symbol");

  auto has_state = [&](const std::string& s) { return position_of(d.states, s) < d.states.size(); };
  auto has_symbol = [&](const std::string& s) { return position_of(d.tape_alphabet, s) < d.tape_alphabet.size(); };

  if (!has_state(d.start_state)) out.push_back("start state " + in_quotes(d.start_state) + " is not a state");
  if (!has_state(d.accept_state)) out.push_back("accept state " + in_quotes(d.accept_state) + " is not a state");
  if (!has_state(d.reject_state)) out.push_back("reject state " + in_quotes(d.reject_state) + " is not a state");
  if (d.accept_state == d.reject_state) out.push_back("accept and reject states coincide");
  if (!has_symbol(d.blank)) out.push_back("blank " + in_quotes(d.blank) + " is not a tape symbol");
  for (const auto& a : d.input_alphabet) {
    if (!has_symbol(a)) out.push_back("input symbol " + in_quotes(a) + " is not a tape symbol");
    if (a == d.blank) out.push_back("blank may not be an input symbol");
  }
  if (d.bits_per_step < 1) out.push_back("bits_per_step must be at least 1");
  if (d.bits_per_step > kMaxBitsPerStep) out.push_back("bits_per_step above " + std::to_string(kMaxBitsPerStep));

  std::set<std::tuple<std::string, std::string, std::string>> keys;
  for (std::size_t i = 0; i < d.transitions.size(); ++i) {
    const auto& t = d.transitions[i];
    const std::string where = "transition " + std::to_string(i);
    if (!has_state(t.state)) out.push_back(where + ": unknown state " + in_quotes(t.state));
    if (!has_state(t.next)) out.push_back(where + ": unknown next state " + in_quotes(t.next));
    if (!has_symbol(t.read)) out.push_back(where + ": unknown read symbol " + in_quotes(t.read));
    if (!has_symbol(t.write)) out.push_back(where + ": unknown write symbol " + in_quotes(t.write));
    if (!is_bit_pattern(t.bits, d.bits_per_step)) {
      out.push_back(where + ": bits " + in_quotes(t.bits) + " is not a " + std::to_string(d.bits_per_step) +
                    "-bit pattern");
    }
    if (!keys.emplace(t.state, t.read, t.bits).second) {
      out.push_back(where + ": duplicate key (" + t.state + ", " + t.read + ", " + t.bits + ")");
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Move m) noexcept {
  switch (m) {
    case Move::Left:
      return "L";
    case Move::Right:
      return "R";
    case Move::Stay:
      return "S";
  }
  return "S";
}

Move move_from_string(std::string_view text) {
  if (text == "L") return Move::Left;
  if (text == "R") return Move::Right;
  if (text == "S") return Move::Stay;
  throw ParseError("unknown move " + in_quotes(text) + " (expected L, R or S)");
}

std::string_view to_string(RunOutcome o) noexcept {
  switch (o) {
    case RunOutcome::Accepted:
      return "accepted";
    case RunOutcome::Rejected:
      return "rejected";
    case RunOutcome::Unhalted:
      return "unhalted";
  }
  return "unhalted";
}

std::uint32_t pattern_value(std::string_view bits) {
  std::uint32_t v = 0;
  for (char c : bits) v = (v << 1) | (c == '1' ? 1U : 0U);
  return v;
}

std::string pattern_string(std::uint32_t value, unsigned width) {
  std::string s(width, '0');
  for (unsigned i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1U) s[i] = '1';
  }
  return s;
}

LintReport lint(const MachineDescription& desc) {
  LintReport report;
  report.errors = structural_errors(desc);
  if (report.ok()) {
    auto missing = Machine::build(desc).missing_transitions();
    for (auto& m : missing) report.errors.push_back("missing transition " + m);
  }
  const double size = static_cast<double>(desc.states.size() + desc.tape_alphabet.size() + desc.transitions.size());
  if (size > 0 && static_cast<double>(desc.bits_per_step) > std::log2(size)) {
    report.warnings.push_back("bits_per_step " + std::to_string(desc.bits_per_step) +
                              " exceeds log2 of the machine size (" + std::to_string(static_cast<int>(size)) + ")");
  }
  return report;
}

Machine Machine::build(MachineDescription desc) {
  auto errors = structural_errors(desc);
  if (!errors.empty()) throw ValidationError(std::move(errors));

  Machine m;
  m.desc_ = std::move(desc);
  const auto& d = m.desc_;
  m.start_ = position_of(d.states, d.start_state);
  m.accept_ = position_of(d.states, d.accept_state);
  m.reject_ = position_of(d.states, d.reject_state);
  m.blank_ = position_of(d.tape_alphabet, d.blank);
  m.input_symbol_.assign(d.tape_alphabet.size(), false);
  for (const auto& a : d.input_alphabet) m.input_symbol_[position_of(d.tape_alphabet, a)] = true;

  const std::size_t slots = d.states.size() * d.tape_alphabet.size() * m.bit_patterns();
  m.table_.assign(slots, Action{});
  m.defined_.assign(slots, false);
  for (const auto& t : d.transitions) {
    std::size_t q = position_of(d.states, t.state);
    if (m.is_halting(q)) continue;
    std::size_t a = position_of(d.tape_alphabet, t.read);
    std::size_t slot = (q * d.tape_alphabet.size() + a) * m.bit_patterns() + pattern_value(t.bits);
    m.table_[slot] = Action{position_of(d.tape_alphabet, t.write), t.move, position_of(d.states, t.next)};
    m.defined_[slot] = true;
  }
  return m;
}

std::size_t Machine::state_index(std::string_view name) const {
  std::size_t i = position_of(desc_.states, name);
  if (i == desc_.states.size()) throw ParseError("unknown state " + in_quotes(name));
  return i;
}

std::size_t Machine::symbol_index(std::string_view name) const {
  std::size_t i = position_of(desc_.tape_alphabet, name);
  if (i == desc_.tape_alphabet.size()) throw ParseError("unknown tape symbol " + in_quotes(name));
  return i;
}

const Machine::Action* Machine::action(std::size_t state, std::size_t symbol, std::uint32_t bits) const {
  std::size_t slot = (state * symbol_count() + symbol) * bit_patterns() + bits;
  return defined_[slot] ? &table_[slot] : nullptr;
}

std::vector<std::string> Machine::missing_transitions() const {
  std::vector<std::string> out;
  for (std::size_t q = 0; q < state_count(); ++q) {
    if (is_halting(q)) continue;
    for (std::size_t a = 0; a < symbol_count(); ++a) {
      for (std::uint32_t b = 0; b < bit_patterns(); ++b) {
        if (action(q, a, b) == nullptr) {
          out.push_back("(" + state_name(q) + ", " + symbol_name(a) + ", " + pattern_string(b, bits_per_step()) + ")");
        }
      }
    }
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    for (;;) {
      auto comma = text.find(',', start);
      w.emplace_back(text.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return w;
  }
  for (char c : text) w.emplace_back(1, c);
  return w;
}

std::string format_word(const Word& w) {
  bool single = std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.size() == 1 && s != ","; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i > 0) out += ',';
    out += w[i];
  }
  return out;
}

Configuration initial_configuration(const Machine& m, const Word& input, std::size_t steps) {
  if (input.size() > steps + 1) {
    throw std::invalid_argument("input of length " + std::to_string(input.size()) + " does not fit the " +
                                std::to_string(steps + 1) + "-cell tape window");
  }
  Configuration c;
  c.tape.assign(steps + 1, m.blank());
  for (std::size_t j = 0; j < input.size(); ++j) {
    std::size_t a = m.symbol_index(input[j]);
    if (!m.is_input_symbol(a)) throw std::invalid_argument("symbol " + in_quotes(input[j]) + " is not an input symbol");
    c.tape[j] = a;
  }
  c.head = 0;
  c.state = m.start();
  c.step = 0;
  return c;
}

Configuration step(const Machine& m, const Configuration& c, std::uint32_t bits) {
  if (m.is_halting(c.state)) throw std::logic_error("step: configuration is halted");
  const auto* act = m.action(c.state, c.tape.at(c.head), bits);
  if (act == nullptr) {
    throw MissingTransition("no transition for (" + m.state_name(c.state) + ", " + m.symbol_name(c.tape[c.head]) +
                            ", " + pattern_string(bits, m.bits_per_step()) + ")");
  }
  Configuration next = c;
  next.tape[c.head] = act->write;
  if (act->move == Move::Left && c.head > 0) next.head = c.head - 1;
  if (act->move == Move::Right && c.head + 1 < c.tape.size()) next.head = c.head + 1;
  next.state = act->next;
  next.step = c.step + 1;
  return next;
}

Configuration step(const Machine& m, const Configuration& c, std::string_view bits) {
  if (!is_bit_pattern(bits, m.bits_per_step())) {
    throw std::invalid_argument("step: expected " + std::to_string(m.bits_per_step()) + " bits, got " + in_quotes(bits));
  }
  return step(m, c, pattern_value(bits));
}

Configuration run_exact_steps(const Machine& m, Configuration c, std::string_view bit_string, std::size_t steps) {
  const unsigned r = m.bits_per_step();
  for (std::size_t s = 0; s < steps && !m.is_halting(c.state); ++s) {
    if ((s + 1) * r > bit_string.size()) throw std::invalid_argument("run_exact_steps: bit string too short");
    c = step(m, c, bit_string.substr(s * r, r));
  }
  return c;
}

namespace {

RunOutcome classify(const Machine& m, std::size_t state) {
  if (state == m.accept()) return RunOutcome::Accepted;
  if (state == m.reject()) return RunOutcome::Rejected;
  return RunOutcome::Unhalted;
}

}  // namespace

RunOutcome run_sampled(const Machine& m, const Word& input, std::size_t steps, RandomStream& stream) {
  Configuration c = initial_configuration(m, input, steps);
  for (std::size_t s = 0; s < steps && !m.is_halting(c.state); ++s) {
    std::uint32_t bits = 0;
    for (unsigned b = 0; b < m.bits_per_step(); ++b) bits = (bits << 1) | (stream.next_bit() ? 1U : 0U);
    c = step(m, c, bits);
  }
  return classify(m, c.state);
}

AcceptanceSplit acceptance_split(const Machine& m, const Word& input, std::size_t steps, unsigned max_random_bits) {
  const std::uint64_t r = m.bits_per_step();
  const std::uint64_t total_bits = r * steps;
  if (total_bits > max_random_bits || total_bits >= 63) {
    throw EnumerationTooLarge("enumeration needs " + std::to_string(total_bits) + " random bits (guard is " +
                              std::to_string(max_random_bits) + ")");
  }
  const Configuration start = initial_configuration(m, input, steps);
  const std::uint64_t strings = std::uint64_t{1} << total_bits;
  const std::uint32_t mask = m.bit_patterns() - 1;

  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  for (std::uint64_t w = 0; w < strings; ++w) {
    Configuration c = start;
    for (std::size_t s = 0; s < steps && !m.is_halting(c.state); ++s) {
      // Step s reads the s-th r-bit chunk, most significant chunk first.
      auto bits = static_cast<std::uint32_t>((w >> (r * (steps - 1 - s))) & mask);
      c = step(m, c, bits);
    }
    if (c.state == m.accept()) ++accepted;
    if (c.state == m.reject()) ++rejected;
  }
  BigInt denom = BigInt(1) << total_bits;
  return AcceptanceSplit{Rational(BigInt(accepted), denom), Rational(BigInt(rejected), denom),
                         Rational(BigInt(strings - accepted - rejected), denom)};
}

Rational acceptance_probability(const Machine& m, const Word& input, std::size_t steps, unsigned max_random_bits) {
  return acceptance_split(m, input, steps, max_random_bits).accept;
}

Decision decide_error_ptm_acceptance(const Word& input, std::size_t steps, const Machine& m, RandomStream& stream) {
  return decision_from(run_sampled(m, input, steps, stream) == RunOutcome::Accepted);
}

Machine clockify(const Machine& m, std::size_t total_steps) {
  if (total_steps < 1) throw std::invalid_argument("clockify: total_steps must be at least 1");
  const auto& d = m.description();

  std::string sep = "@";
  auto clashes = [&] {
    return std::any_of(d.states.begin(), d.states.end(),
                       [&](const std::string& s) { return s.find(sep) != std::string::npos; });
  };
  while (clashes()) sep += "@";

  auto timed = [&](const std::string& q, std::size_t t) { return q + sep + std::to_string(t); };
  auto hold = [&](bool accepting, std::size_t t) {
    return std::string(accepting ? "hold-accept" : "hold-reject") + sep + std::to_string(t);
  };
  // Name of the state reached at time t when the simulated machine is in q.
  auto target = [&](std::size_t q, std::size_t t) -> std::string {
    if (t == total_steps) return q == m.accept() ? d.accept_state : d.reject_state;
    if (q == m.accept()) return hold(true, t);
    if (q == m.reject()) return hold(false, t);
    return timed(m.state_name(q), t);
  };

  MachineDescription out;
  out.tape_alphabet = d.tape_alphabet;
  out.blank = d.blank;
  out.input_alphabet = d.input_alphabet;
  out.bits_per_step = d.bits_per_step;
  out.accept_state = d.accept_state;
  out.reject_state = d.reject_state;
  out.start_state = target(m.start(), 0);

  for (std::size_t t = 0; t < total_steps; ++t) {
    for (std::size_t q = 0; q < m.state_count(); ++q) {
      if (!m.is_halting(q)) out.states.push_back(timed(m.state_name(q), t));
    }
    out.states.push_back(hold(true, t));
    out.states.push_back(hold(false, t));
  }
  out.states.push_back(d.accept_state);
  out.states.push_back(d.reject_state);

  for (std::size_t t = 0; t < total_steps; ++t) {
    for (std::size_t a = 0; a < m.symbol_count(); ++a) {
      for (std::uint32_t b = 0; b < m.bit_patterns(); ++b) {
        const std::string bits = pattern_string(b, m.bits_per_step());
        for (std::size_t q = 0; q < m.state_count(); ++q) {
          if (m.is_halting(q)) continue;
          const auto* act = m.action(q, a, b);
          if (act == nullptr) continue;
          out.transitions.push_back(Transition{timed(m.state_name(q), t), m.symbol_name(a), bits,
                                               m.symbol_name(act->write), act->move, target(act->next, t + 1)});
        }
        for (bool accepting : {true, false}) {
          out.transitions.push_back(Transition{hold(accepting, t), m.symbol_name(a), bits, m.symbol_name(a),
                                               Move::Stay, target(accepting ? m.accept() : m.reject(), t + 1)});
        }
      }
    }
  }
  return Machine::build(std::move(out));
}

}  // namespace pppt::ptm
