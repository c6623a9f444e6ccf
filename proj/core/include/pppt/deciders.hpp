#pragma once

#include "pppt/bayesnet.hpp"
#include "pppt/decision.hpp"
#include "pppt/random_stream.hpp"
#include "pppt/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace pppt::deciders {

/// A randomized procedure that accepts or rejects using the given stream.
using Trial = std::function<bool(RandomStream&)>;

/// Outcome of a (possibly repeated) randomized decision.
///
/// `margin` is the advantage over 1/2 that the procedure claims on
/// promise-satisfying instances: the per-trial advantage for majority votes
/// and 1/2 minus the failure budget for rejection sampling.
struct DeciderReport {
  enum class Status { Decided, AllSamplesRejected };

  Status status = Status::Decided;
  Decision decision = Decision::No;
  std::uint64_t trials = 0;
  std::uint64_t accept_count = 0;
  std::optional<std::uint64_t> retained;
  std::optional<Rational> exact_accept_prob;
  Rational margin;
};

nlohmann::ordered_json to_json(const DeciderReport& report);

/// Exact single-trial acceptance probability of the forward-sampling
/// decider: 1/2 + (Pr(h) - q) / 2.
Rational forward_acceptance_probability(const Rational& pr_h, const Rational& q);

/// Single forward-sampling trial for an instance without evidence: draw a
/// full assignment, then accept with probability 1 - q/2 if it agrees with h
/// and 1/2 - q/2 otherwise.
bool forward_sampling_decider(const bn::PromiseInstance& inst, RandomStream& stream);

/// Trials needed by the rejection sampler:
/// ceil(3 ln(2 / failure) / (pe_lower * gap^2)).
std::uint64_t rejection_budget(const Rational& pe_lower, const Rational& gap, const Rational& failure);

/// Absolute distance from q that the instance's promise guarantees for
/// Pr(h | e): eps for absolute gaps, q eps / (1 + eps) for relative ones.
Rational promise_margin(const bn::PromiseInstance& inst);

/// Rejection sampling: `trials` forward samples (trial t uses stream
/// (seed, t)), samples that disagree with e are discarded, and the decision
/// compares the retained fraction agreeing with h against q. With nothing
/// retained the report has status AllSamplesRejected and decision No.
DeciderReport rejection_sampling_decider(const bn::PromiseInstance& inst, std::uint64_t seed, std::uint64_t trials,
                                         const Rational& failure = Rational(1, 100));

/// Majority vote over `trials` runs of `base` (odd), trial t on stream
/// (seed, t). `advantage` is the claimed per-trial advantage in (0, 1/2].
DeciderReport amplify(const Trial& base, const Rational& advantage, std::uint64_t seed, std::uint64_t trials);

/// Probability that a majority of n independent trials, each correct with
/// probability p, is correct. Exact; n must be odd.
Rational majority_correct_probability(const Rational& p, unsigned n);

/// exp(-2 n eps^2), evaluated in floating point.
double hoeffding_bound(unsigned n, double epsilon);

/// Smallest odd n with exp(-2 n eps^2) <= target_error.
unsigned trials_for_error(double epsilon, double target_error);

/// Accept probability a * (1 - delta/2) of the debiased decider.
Rational debias_accept_probability(const Rational& accept_probability, const Rational& delta);

/// Wraps `base` so that each acceptance is overturned with probability
/// delta/2. A decider accepting Yes-instances with probability >= 1/2 + delta
/// and No-instances with probability <= 1/2 then accepts them with
/// probability >= 1/2 + delta/4 and <= 1/2 - delta/4 respectively.
Trial debias(Trial base, const Rational& delta);

/// A decider that may run out of its step budget (nullopt).
using BudgetedDecider = std::function<std::optional<Decision>(std::uint64_t budget)>;
using FallbackDecider = std::function<Decision()>;

struct CombinedOutcome {
  Decision decision = Decision::No;
  bool used_fallback = false;
  std::uint64_t budget = 0;
};

/// |x|^(c+1) with |x| >= 1 enforced.
std::uint64_t step_budget(std::uint64_t input_length, unsigned c);

/// Runs `fpt` under the budget |x|^(c+1); adopts its answer when it halts in
/// budget and otherwise runs `pp` and adopts that.
CombinedOutcome combined_decider(const BudgetedDecider& fpt, const FallbackDecider& pp, std::uint64_t input_length,
                                 unsigned c);

}  // namespace pppt::deciders
