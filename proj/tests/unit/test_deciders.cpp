#include <doctest.h>

#include "pppt/deciders.hpp"
#include "pppt/errors.hpp"
#include "pppt/reductions.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace pppt;
using namespace pppt::deciders;

namespace {

bn::PromiseInstance unconditional(const Rational& p, const Rational& q, const Rational& eps = Rational(1, 8)) {
  return bn::PromiseInstance{testing::biased_binary(p), {{"H", "1"}}, {}, q, eps, bn::GapKind::Absolute};
}

Trial coin(const Rational& p) {
  return [p](RandomStream& s) { return sample_bernoulli(p, s); };
}

double frequency(const Trial& t, std::uint64_t seed, std::uint64_t n) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    RandomStream s(seed, i);
    hits += t(s);
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

}  // namespace

TEST_CASE("forward-sampling acceptance probability") {
  CHECK(forward_acceptance_probability(Rational(1), Rational(0)) == Rational(1));
  CHECK(forward_acceptance_probability(Rational(1, 3), Rational(1, 3)) == Rational(1, 2));
  CHECK(forward_acceptance_probability(Rational(3, 4), Rational(1, 2)) == Rational(5, 8));

  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 6; ++b) {
      const Rational p(a, 6), q(b, 6);
      const Rational by_cases = p * (Rational(1) - q / Rational(2)) + (Rational(1) - p) * (Rational(1, 2) - q / Rational(2));
      CHECK(forward_acceptance_probability(p, q) == by_cases);
    }
  }
}

TEST_CASE("forward-sampling frequency") {
  auto inst = unconditional(Rational(3, 4), Rational(1, 2));
  const double f = frequency([&](RandomStream& s) { return forward_sampling_decider(inst, s); }, 7, 100000);
  CHECK(f >= 0.620);
  CHECK(f <= 0.630);
}

TEST_CASE("forward sampling over a multi-node hypothesis") {
  auto net = testing::noisy_or();
  bn::PromiseInstance inst{net, {{"A", "1"}, {"C", "1"}}, {}, Rational(1, 5), Rational(1, 20), bn::GapKind::Absolute};
  const Rational exact = forward_acceptance_probability(bn::marginal(net, inst.h), inst.q);
  const double p = exact.to_double();
  const std::uint64_t n = 40000;
  const double f = frequency([&](RandomStream& s) { return forward_sampling_decider(inst, s); }, 3, n);
  CHECK(std::abs(f - p) <= testing::three_sigma(p, n));
}

TEST_CASE("rejection sampling") {
  SUBCASE("evidence that always holds keeps every sample") {
    auto certain = bn::Network::build({
        bn::Node{"E", {"0", "1"}, {}, {{{}, {Rational(0), Rational(1)}}}},
        bn::Node{"H", {"0", "1"}, {"E"}, {{{"0"}, {Rational(1, 2), Rational(1, 2)}}, {{"1"}, {Rational(1, 4), Rational(3, 4)}}}},
    });
    bn::PromiseInstance all_kept{certain, {{"H", "1"}}, {{"E", "1"}}, Rational(1, 2), Rational(1, 4),
                                 bn::GapKind::Relative};
    auto report = rejection_sampling_decider(all_kept, 4, 500);
    REQUIRE(report.retained.has_value());
    CHECK(*report.retained == 500);
    CHECK(report.trials == 500);
    CHECK(report.status == DeciderReport::Status::Decided);
    CHECK(report.decision == Decision::Yes);
    CHECK(report.accept_count <= report.trials);
  }
  SUBCASE("impossible evidence rejects everything") {
    bn::PromiseInstance inst{testing::biased_binary(Rational(0)), {}, {{"H", "1"}}, Rational(1, 2), Rational(1, 4),
                             bn::GapKind::Relative};
    auto report = rejection_sampling_decider(inst, 4, 200);
    CHECK(report.status == DeciderReport::Status::AllSamplesRejected);
    CHECK(report.decision == Decision::No);
    CHECK(*report.retained == 0);
  }
  SUBCASE("gadget instances are decided correctly") {
    bn::PromiseInstance base{testing::biased_binary(Rational(1, 3)), {{"H", "1"}}, {}, Rational(1, 2),
                             Rational(1, 8), bn::GapKind::Absolute};
    auto g = reductions::cond_gadget(base).instance;
    REQUIRE(bn::query_probability(g) == Rational(2, 3));
    for (const Rational& q : {Rational(1, 2), Rational(3, 4)}) {
      g.q = q;
      REQUIRE(bn::check_promise(g) == bn::PromiseStatus::Holds);
      const Decision truth = bn::decide_threshold(g.network, g.h, g.e, q);
      const auto budget = rejection_budget(Rational(1, 2), promise_margin(g), Rational(1, 100));
      int correct = 0;
      for (std::uint64_t rep = 0; rep < 100; ++rep) {
        correct += rejection_sampling_decider(g, 1000 + rep, budget).decision == truth;
      }
      CAPTURE(q);
      CHECK(correct >= 99);
    }
  }
}

TEST_CASE("rejection budget and margins") {
  // 3 ln(200) / (1/2 * 1/256) = 1536 ln 200 = 8138.2...
  CHECK(rejection_budget(Rational(1, 2), Rational(1, 16), Rational(1, 100)) == 8139);
  auto abs = unconditional(Rational(1, 4), Rational(1, 2), Rational(1, 8));
  CHECK(promise_margin(abs) == Rational(1, 8));
  auto rel = abs;
  rel.gap_kind = bn::GapKind::Relative;
  rel.epsilon = Rational(1, 4);
  CHECK(promise_margin(rel) == Rational(1, 10));
}

TEST_CASE("exact majority correctness") {
  for (const Rational& p : {Rational(3, 5), Rational(1, 3), Rational(9, 10)}) {
    for (unsigned n : {1u, 3u, 11u, 41u}) {
      CHECK(majority_correct_probability(p, n) == testing::majority_by_dynamic_programming(p, n));
    }
  }
  CHECK(majority_correct_probability(Rational(1), 7) == Rational(1));
  CHECK(majority_correct_probability(Rational(3, 5), 1) == Rational(3, 5));
  CHECK_THROWS_AS(majority_correct_probability(Rational(3, 5), 4), std::invalid_argument);

  Rational previous(0);
  for (unsigned n = 1; n <= 101; n += 2) {
    const Rational now = majority_correct_probability(Rational(11, 20), n);
    CHECK(now >= previous);
    previous = now;
  }
}

TEST_CASE("amplified frequency matches the binomial tail") {
  const Rational exact = majority_correct_probability(Rational(3, 5), 101);
  CHECK(exact == testing::majority_by_dynamic_programming(Rational(3, 5), 101));
  const double p = exact.to_double();
  const std::uint64_t reps = 2000;
  std::uint64_t yes = 0;
  for (std::uint64_t rep = 0; rep < reps; ++rep) {
    auto report = amplify(coin(Rational(3, 5)), Rational(1, 10), 50000 + rep, 101);
    CHECK(report.trials == 101);
    yes += report.decision == Decision::Yes;
  }
  CHECK(std::abs(static_cast<double>(yes) / reps - p) <= testing::three_sigma(p, reps));
}

TEST_CASE("Hoeffding bound") {
  const Rational err = Rational(1) - majority_correct_probability(Rational(3, 5), 500 + 1);
  CHECK(err.to_double() <= hoeffding_bound(501, 0.1));
  CHECK(hoeffding_bound(500, 0.1) == doctest::Approx(std::exp(-10.0)));
  const unsigned n = trials_for_error(0.1, 1e-3);
  CHECK(n % 2 == 1);
  CHECK(hoeffding_bound(n, 0.1) <= 1e-3);
  CHECK(hoeffding_bound(n - 2, 0.1) > 1e-3);
}

TEST_CASE("amplification preconditions and the always-correct trial") {
  auto always = [](RandomStream&) { return true; };
  for (std::uint64_t n : {1u, 3u, 9u}) {
    auto report = amplify(always, Rational(1, 2), 1, n);
    CHECK(report.decision == Decision::Yes);
    CHECK(report.accept_count == n);
    CHECK(report.margin == Rational(1, 2));
  }
  CHECK_THROWS_AS(amplify(always, Rational(1, 2), 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(amplify(always, Rational(0), 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(amplify(always, Rational(3, 4), 1, 3), std::invalid_argument);
}

TEST_CASE("debiasing") {
  CHECK(debias_accept_probability(Rational(1, 2), Rational(1, 4)) == Rational(7, 16));
  CHECK(Rational(7, 16) <= Rational(1, 2) - Rational(1, 16));
  CHECK(debias_accept_probability(Rational(1), Rational(1, 4)) == Rational(7, 8));
  CHECK(debias_accept_probability(Rational(0), Rational(1, 4)) == Rational(0));

  for (const Rational& delta : {Rational(1, 8), Rational(1, 4), Rational(1, 2)}) {
    for (int i = 0; i <= 32; ++i) {
      const Rational a(i, 32);
      const Rational t = debias_accept_probability(a, delta);
      if (a >= Rational(1, 2) + delta) CHECK(t >= Rational(1, 2) + delta / Rational(4));
      if (a <= Rational(1, 2)) CHECK(t <= Rational(1, 2) - delta / Rational(4));
    }
  }

  const Trial wrapped = debias(coin(Rational(3, 4)), Rational(1, 2));
  const double p = debias_accept_probability(Rational(3, 4), Rational(1, 2)).to_double();
  const std::uint64_t n = 40000;
  CHECK(std::abs(frequency(wrapped, 12, n) - p) <= testing::three_sigma(p, n));
}

TEST_CASE("combined decider") {
  CHECK(step_budget(3, 1) == 9);
  CHECK(step_budget(0, 2) == 1);
  CHECK(step_budget(2, 3) == 16);

  SUBCASE("fpt in budget") {
    int fallback_calls = 0;
    auto out = combined_decider([](std::uint64_t) { return std::optional<Decision>(Decision::Yes); },
                                [&] {
                                  ++fallback_calls;
                                  return Decision::No;
                                },
                                4, 1);
    CHECK(out.decision == Decision::Yes);
    CHECK_FALSE(out.used_fallback);
    CHECK(fallback_calls == 0);
    CHECK(out.budget == 16);
  }
  SUBCASE("fpt out of budget") {
    auto out = combined_decider([](std::uint64_t) { return std::optional<Decision>(); },
                                [] { return Decision::No; }, 4, 1);
    CHECK(out.decision == Decision::No);
    CHECK(out.used_fallback);
  }
  SUBCASE("advantage on a family with a known budget boundary") {
    // The fpt component needs 2^k steps and is always right; the fallback is
    // right with probability 1/2 + |x|^-1. Combined advantage must be at
    // least the smaller of the two component advantages.
    for (unsigned k = 1; k <= 8; ++k) {
      for (std::uint64_t len = 1; len <= 12; ++len) {
        const std::uint64_t need = std::uint64_t{1} << k;
        const Rational pp_correct = Rational(1, 2) + Rational(1, static_cast<std::int64_t>(len));
        auto fpt = [&](std::uint64_t budget) {
          return need <= budget ? std::optional<Decision>(Decision::Yes) : std::nullopt;
        };
        bool used_fallback = combined_decider(fpt, [] { return Decision::Yes; }, len, 1).used_fallback;
        CHECK(used_fallback == (need > step_budget(len, 1)));
        const Rational correct = used_fallback ? std::min(pp_correct, Rational(1)) : Rational(1);
        const Rational g = Rational(1, 2);
        const Rational witness = std::min(g, Rational(1, static_cast<std::int64_t>(len)));
        CHECK(correct - Rational(1, 2) >= std::min(witness, Rational(1, 2)));
      }
    }
  }
  SUBCASE("deterministic in which component decides") {
    for (int rep = 0; rep < 3; ++rep) {
      auto out = combined_decider([](std::uint64_t b) { return b >= 27 ? std::optional(Decision::No) : std::nullopt; },
                                  [] { return Decision::Yes; }, 3, 2);
      CHECK_FALSE(out.used_fallback);
      CHECK(out.decision == Decision::No);
    }
  }
}

TEST_CASE("reports serialize with exact fractions") {
  DeciderReport r;
  r.decision = Decision::Yes;
  r.trials = 5;
  r.accept_count = 4;
  r.retained = 5;
  r.exact_accept_prob = Rational(5, 8);
  r.margin = Rational(1, 16);
  auto j = to_json(r);
  CHECK(j["decision"] == "Yes");
  CHECK(j["exact_accept_prob"] == "5/8");
  CHECK(j["margin"] == "1/16");
  CHECK(j["retained"] == 5);
}
