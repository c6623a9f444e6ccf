#pragma once

#include "pppt/bayesnet.hpp"
#include "pppt/formula.hpp"
#include "pppt/ptm.hpp"

#include <cstddef>
#include <string>

namespace pppt::reductions {

/// Inference instance produced by a reduction: is Pr(query_node =
/// accept_outcome) > q, with promised absolute gap 2^-k.
struct CompiledInstance {
  bn::Network network;
  std::string query_node;
  std::string accept_outcome;
  Rational q;
  unsigned k = 1;
};

bn::PromiseInstance to_promise(const CompiledInstance& inst);

/// ceil(-log2(eps)) for eps in (0, 1].
unsigned epsilon_parameter(const Rational& epsilon);

/// Node names used by the machine compiler.
std::string cell_node(std::size_t layer, std::size_t cell);    // X_<i>_<j>
std::string head_node(std::size_t layer);                      // TH_<i>
std::string state_node(std::size_t layer);                     // MS_<i>
std::string bit_node(std::size_t layer, std::size_t bit);      // B_<i>_<b>, b from 1
std::string reader_node(std::size_t layer, std::size_t cell);  // Y_<i>_<j>

/// (n+1)(n+3) layer nodes, n*r random-bit nodes and n(n+1) reader nodes.
std::size_t compiled_node_count(std::size_t steps, unsigned bits_per_step);

/// Layered network simulating `m` on `input` for `steps` transitions.
///
/// Layer i holds the tape cells X_i_0..X_i_n, the head position TH_i and the
/// state MS_i. Between layers i and i+1 sit r uniform bits B_i_1..B_i_r and
/// a reader chain Y_i_0..Y_i_n that walks the tape and ends holding the
/// symbol under the head ("sym:<a>"; "pos:<p>" while still searching). All
/// other CPTs are deterministic, halting states are absorbing, and moves off
/// the window leave the head in place, mirroring ptm::step.
///
/// Pr(MS_n = accept) equals the machine's acceptance probability after
/// `steps` transitions. Output threshold is 1/2; the parameter is passed
/// through. Throws ValidationError if the machine's map is not total and
/// std::invalid_argument if the input does not fit the window or k == 0.
CompiledInstance compile_ptm_to_bn(const ptm::Word& input, std::size_t steps, const ptm::Machine& m, unsigned k);

/// Node names added by cond_gadget (possibly prefixed with '_' to avoid
/// clashes with the base network).
struct GadgetNames {
  std::string root;      // R
  std::string signal;    // S
  std::string terminal;  // T_H
};

struct GadgetResult {
  bn::PromiseInstance instance;
  GadgetNames names;
};

/// Turns an unconditional absolute-gap query (B, H, h, q, eps) into the
/// conditional query Pr(R=1 | S=1) vs 1/2 + q/2 with gap eps/2. An indicator
/// tree over H feeds a terminal T_H that is 1 iff H = h; R is a fair coin and
/// S has parents (R, T_H) with Pr(S=1) = 1 if R=1 and T_H=1, 0 if R=0 and
/// T_H=1, 1/2 otherwise. Then Pr(S=1) = 1/2 and Pr(R=1 | S=1) = 1/2 + Pr(h)/2.
/// Throws std::invalid_argument if the instance has evidence or a relative gap.
GadgetResult cond_gadget(const bn::PromiseInstance& inst);

/// One fair root per variable ("var:<name>"), one deterministic node per
/// connective ("gate:<i>"), and the output node OUT, all over {false, true}.
/// Pr(OUT = true) = #sat / 2^#vars. Query q = 1/2, gap 2^-k.
CompiledInstance formula_to_bn(const Formula& f, unsigned k);

}  // namespace pppt::reductions
