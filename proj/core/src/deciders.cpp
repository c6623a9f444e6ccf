#include "pppt/deciders.hpp"

#include "pppt/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

namespace pppt::deciders {

using nlohmann::ordered_json;

ordered_json to_json(const DeciderReport& report) {
  ordered_json out;
  out["status"] = report.status == DeciderReport::Status::Decided ? "decided" : "all_samples_rejected";
  out["decision"] = std::string(to_string(report.decision));
  out["trials"] = report.trials;
  out["accept_count"] = report.accept_count;
  if (report.retained) out["retained"] = *report.retained;
  if (report.exact_accept_prob) out["exact_accept_prob"] = report.exact_accept_prob->to_string();
  out["margin"] = report.margin.to_string();
  return out;
}

Rational forward_acceptance_probability(const Rational& pr_h, const Rational& q) {
  return Rational(1, 2) + (pr_h - q) / Rational(2);
}

bool forward_sampling_decider(const bn::PromiseInstance& inst, RandomStream& stream) {
  if (!inst.e.empty()) throw std::invalid_argument("forward_sampling_decider: instance has evidence");
  const auto sample = bn::forward_sample(inst.network, stream);
  const Rational half_q = inst.q / Rational(2);
  const Rational accept = bn::agrees(inst.network, sample, inst.h) ? Rational(1) - half_q : Rational(1, 2) - half_q;
  return sample_bernoulli(accept, stream);
}

std::uint64_t rejection_budget(const Rational& pe_lower, const Rational& gap, const Rational& failure) {
  if (pe_lower <= Rational(0) || pe_lower > Rational(1)) throw std::invalid_argument("rejection_budget: Pr(e) bound");
  if (gap <= Rational(0)) throw std::invalid_argument("rejection_budget: gap must be positive");
  if (failure <= Rational(0) || failure >= Rational(1)) throw std::invalid_argument("rejection_budget: failure");
  const double g = gap.to_double();
  const double n = 3.0 * std::log(2.0 / failure.to_double()) / (pe_lower.to_double() * g * g);
  return static_cast<std::uint64_t>(std::ceil(n));
}

Rational promise_margin(const bn::PromiseInstance& inst) {
  if (inst.gap_kind == bn::GapKind::Absolute) return inst.epsilon;
  return inst.q * inst.epsilon / (Rational(1) + inst.epsilon);
}

DeciderReport rejection_sampling_decider(const bn::PromiseInstance& inst, std::uint64_t seed, std::uint64_t trials,
                                         const Rational& failure) {
  if (trials == 0) throw std::invalid_argument("rejection_sampling_decider: trials must be positive");
  const auto h = inst.network.resolve(inst.h);
  const auto e = inst.network.resolve(inst.e);
  auto matches = [](const bn::FullAssignment& s, const auto& fixed) {
    for (const auto& [i, o] : fixed) {
      if (s[i] != o) return false;
    }
    return true;
  };

  DeciderReport report;
  report.trials = trials;
  report.margin = Rational(1, 2) - failure;
  std::uint64_t retained = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomStream stream(seed, t);
    const auto sample = bn::forward_sample(inst.network, stream);
    if (!matches(sample, e)) continue;
    ++retained;
    if (matches(sample, h)) ++report.accept_count;
  }
  report.retained = retained;
  if (retained == 0) {
    report.status = DeciderReport::Status::AllSamplesRejected;
    report.decision = Decision::No;
    return report;
  }
  // accept_count / retained > q, compared exactly.
  report.decision = decision_from(Rational(BigInt(report.accept_count), BigInt(retained)) > inst.q);
  return report;
}

DeciderReport amplify(const Trial& base, const Rational& advantage, std::uint64_t seed, std::uint64_t trials) {
  if (trials % 2 == 0) throw std::invalid_argument("amplify: trial count must be odd");
  if (advantage <= Rational(0) || advantage > Rational(1, 2)) {
    throw std::invalid_argument("amplify: advantage must lie in (0, 1/2]");
  }
  DeciderReport report;
  report.trials = trials;
  report.margin = advantage;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomStream stream(seed, t);
    if (base(stream)) ++report.accept_count;
  }
  report.decision = decision_from(2 * report.accept_count > trials);
  return report;
}

Rational majority_correct_probability(const Rational& p, unsigned n) {
  if (n % 2 == 0) throw std::invalid_argument("majority_correct_probability: n must be odd");
  if (p < Rational(0) || p > Rational(1)) throw std::invalid_argument("majority_correct_probability: p");
  const BigInt& a = p.numerator();
  const BigInt& b = p.denominator();
  const BigInt c = b - a;
  namespace mp = boost::multiprecision;
  BigInt sum = 0;
  for (unsigned j = n / 2 + 1; j <= n; ++j) sum += binomial(n, j) * mp::pow(a, j) * mp::pow(c, n - j);
  return Rational(sum, mp::pow(b, n));
}

double hoeffding_bound(unsigned n, double epsilon) { return std::exp(-2.0 * n * epsilon * epsilon); }

unsigned trials_for_error(double epsilon, double target_error) {
  if (epsilon <= 0 || epsilon > 0.5) throw std::invalid_argument("trials_for_error: epsilon must lie in (0, 1/2]");
  if (target_error <= 0 || target_error >= 1) throw std::invalid_argument("trials_for_error: target in (0, 1)");
  auto n = static_cast<unsigned>(std::ceil(std::log(1.0 / target_error) / (2.0 * epsilon * epsilon)));
  if (n == 0) n = 1;
  if (n % 2 == 0) ++n;
  while (n > 2 && hoeffding_bound(n - 2, epsilon) <= target_error) n -= 2;
  while (hoeffding_bound(n, epsilon) > target_error) n += 2;
  return n;
}

Rational debias_accept_probability(const Rational& accept_probability, const Rational& delta) {
  return accept_probability * (Rational(1) - delta / Rational(2));
}

Trial debias(Trial base, const Rational& delta) {
  if (delta <= Rational(0) || delta > Rational(1, 2)) throw std::invalid_argument("debias: delta must lie in (0, 1/2]");
  const Rational overturn = delta / Rational(2);
  return [base = std::move(base), overturn](RandomStream& stream) {
    if (!base(stream)) return false;
    return !sample_bernoulli(overturn, stream);
  };
}

std::uint64_t step_budget(std::uint64_t input_length, unsigned c) {
  const std::uint64_t base = input_length == 0 ? 1 : input_length;
  std::uint64_t budget = 1;
  for (unsigned i = 0; i <= c; ++i) {
    if (budget > UINT64_MAX / base) return UINT64_MAX;
    budget *= base;
  }
  return budget;
}

CombinedOutcome combined_decider(const BudgetedDecider& fpt, const FallbackDecider& pp, std::uint64_t input_length,
                                 unsigned c) {
  CombinedOutcome out;
  out.budget = step_budget(input_length, c);
  if (auto d = fpt(out.budget)) {
    out.decision = *d;
    return out;
  }
  out.used_fallback = true;
  out.decision = pp();
  return out;
}

}  // namespace pppt::deciders
