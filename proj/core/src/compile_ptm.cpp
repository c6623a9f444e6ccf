#include "pppt/errors.hpp"
#include "pppt/reductions.hpp"

#include "network_builder.hpp"

#include <stdexcept>

namespace pppt::reductions {

std::string cell_node(std::size_t layer, std::size_t cell) {
  return "X_" + std::to_string(layer) + "_" + std::to_string(cell);
}
std::string head_node(std::size_t layer) { return "TH_" + std::to_string(layer); }
std::string state_node(std::size_t layer) { return "MS_" + std::to_string(layer); }
std::string bit_node(std::size_t layer, std::size_t bit) {
  return "B_" + std::to_string(layer) + "_" + std::to_string(bit);
}
std::string reader_node(std::size_t layer, std::size_t cell) {
  return "Y_" + std::to_string(layer) + "_" + std::to_string(cell);
}

std::size_t compiled_node_count(std::size_t steps, unsigned bits_per_step) {
  const std::size_t n = steps;
  return (n + 1) * (n + 3) + n * bits_per_step + n * (n + 1);
}

bn::PromiseInstance to_promise(const CompiledInstance& inst) {
  return bn::PromiseInstance{inst.network, {{inst.query_node, inst.accept_outcome}}, {}, inst.q,
                             Rational::pow2_inverse(inst.k), bn::GapKind::Absolute};
}

unsigned epsilon_parameter(const Rational& epsilon) {
  if (epsilon <= Rational(0) || epsilon > Rational(1)) {
    throw std::invalid_argument("epsilon_parameter: epsilon must lie in (0, 1]");
  }
  unsigned k = 0;
  while (Rational::pow2_inverse(k) > epsilon) ++k;
  return k;
}

CompiledInstance compile_ptm_to_bn(const ptm::Word& input, std::size_t steps, const ptm::Machine& m, unsigned k) {
  if (k == 0) throw std::invalid_argument("compile_ptm_to_bn: parameter k must be positive");
  if (auto missing = m.missing_transitions(); !missing.empty()) {
    for (auto& s : missing) s = "missing transition " + s;
    throw ValidationError(std::move(missing));
  }
  const ptm::Configuration start = ptm::initial_configuration(m, input, steps);

  const std::size_t n = steps;
  const std::size_t cells = n + 1;
  const unsigned r = m.bits_per_step();
  const auto& symbols = m.description().tape_alphabet;
  const auto& states = m.description().states;

  std::vector<std::string> positions;
  for (std::size_t p = 0; p < cells; ++p) positions.push_back(std::to_string(p));

  // Reader outcomes: "pos:<p>" for p in 0..n, then "sym:<a>" per tape symbol.
  std::vector<std::string> reader_outcomes;
  for (std::size_t p = 0; p < cells; ++p) reader_outcomes.push_back("pos:" + positions[p]);
  for (const auto& a : symbols) reader_outcomes.push_back("sym:" + a);
  auto sym = [&](std::size_t a) { return cells + a; };
  auto read_symbol = [&](std::size_t reader) { return reader >= cells ? reader - cells : m.blank(); };

  detail::NetworkBuilder b;

  for (std::size_t j = 0; j < cells; ++j) {
    b.add_point(cell_node(0, j), symbols, {}, [&](auto) { return start.tape[j]; });
  }
  b.add_point(head_node(0), positions, {}, [&](auto) { return start.head; });
  b.add_point(state_node(0), states, {}, [&](auto) { return start.state; });

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> bits;
    for (unsigned t = 1; t <= r; ++t) {
      bits.push_back(bit_node(i, t));
      b.add(bits.back(), {"0", "1"}, {}, [](auto) { return std::vector<Rational>{Rational(1, 2), Rational(1, 2)}; });
    }

    b.add_point(reader_node(i, 0), reader_outcomes, {head_node(i), cell_node(i, 0)},
                [&](std::span<const std::size_t> v) { return v[0] == 0 ? sym(v[1]) : v[0]; });
    for (std::size_t j = 1; j < cells; ++j) {
      b.add_point(reader_node(i, j), reader_outcomes, {reader_node(i, j - 1), cell_node(i, j)},
                  [&, j](std::span<const std::size_t> v) { return v[0] == j ? sym(v[1]) : v[0]; });
    }

    // Shared suffix of the successor nodes' parent lists: Y_i_n, B_i_1..B_i_r.
    auto with_reader_and_bits = [&](std::vector<std::string> head) {
      head.push_back(reader_node(i, n));
      head.insert(head.end(), bits.begin(), bits.end());
      return head;
    };
    // Pattern from the B values starting at offset; B_i_1 is the most significant bit.
    auto pattern = [r](std::span<const std::size_t> v, std::size_t offset) {
      std::uint32_t p = 0;
      for (unsigned t = 0; t < r; ++t) p = (p << 1) | static_cast<std::uint32_t>(v[offset + t]);
      return p;
    };
    auto act = [&](std::size_t state, std::size_t reader, std::uint32_t p) {
      return *m.action(state, read_symbol(reader), p);
    };

    for (std::size_t j = 0; j < cells; ++j) {
      // Parents: X_i_j, MS_i, TH_i, Y_i_n, B_i_*.
      b.add_point(cell_node(i + 1, j), symbols,
                  with_reader_and_bits({cell_node(i, j), state_node(i), head_node(i)}),
                  [&, j](std::span<const std::size_t> v) {
                    if (m.is_halting(v[1]) || v[2] != j) return v[0];
                    return act(v[1], v[3], pattern(v, 4)).write;
                  });
    }
    // Parents: MS_i, TH_i, Y_i_n, B_i_*.
    b.add_point(head_node(i + 1), positions, with_reader_and_bits({state_node(i), head_node(i)}),
                [&](std::span<const std::size_t> v) {
                  const std::size_t head = v[1];
                  if (m.is_halting(v[0])) return head;
                  switch (act(v[0], v[2], pattern(v, 3)).move) {
                    case ptm::Move::Left:
                      return head > 0 ? head - 1 : head;
                    case ptm::Move::Right:
                      return head + 1 < cells ? head + 1 : head;
                    case ptm::Move::Stay:
                      break;
                  }
                  return head;
                });
    // Parents: MS_i, Y_i_n, B_i_*.
    b.add_point(state_node(i + 1), states, with_reader_and_bits({state_node(i)}),
                [&](std::span<const std::size_t> v) {
                  if (m.is_halting(v[0])) return v[0];
                  return act(v[0], v[1], pattern(v, 2)).next;
                });
  }

  return CompiledInstance{std::move(b).build(), state_node(n), m.description().accept_state, Rational(1, 2), k};
}

}  // namespace pppt::reductions
