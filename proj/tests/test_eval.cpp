#include <doctest.h>

#include <cmath>

#include "peg/builders.hpp"
#include "peg/errors.hpp"
#include "peg/eval.hpp"
#include "peg/solver.hpp"
#include "support/fixtures.hpp"
#include "support/random_spec.hpp"

using namespace peg;

namespace {

ExplicitGame unfold(const GameSpec& spec, int horizon) {
  TruncationRequest req;
  req.spec = spec;
  req.horizon = horizon;
  return truncate(req);
}

BehavioralStrategy pure_row(const ExplicitGame& g, int owner, const std::string& action) {
  BehavioralStrategy sigma = uniform_strategy(g, owner);
  for (auto& [path, row] : sigma.rows) {
    if (row.count(action)) {
      for (auto& [name, prob] : row) prob = name == action ? 1 : 0;
    }
  }
  return sigma;
}

}  // namespace

TEST_CASE("expected payoff basics") {
  const ExplicitGame mp = unfold(fixtures::matching_pennies(), 1);
  SUBCASE("uniform vs uniform in matching pennies is 1/2") {
    const Profile profile{uniform_strategy(mp, 0), uniform_strategy(mp, 1)};
    CHECK(expected_payoff(mp, profile) == Rational(1, 2));
  }
  SUBCASE("pure profile follows the single branch") {
    const Profile profile{pure_row(mp, 0, "heads"), pure_row(mp, 1, "heads")};
    CHECK(expected_payoff(mp, profile) == 1);
  }
  SUBCASE("domain mismatch is reported") {
    BehavioralStrategy empty;
    empty.owner = 0;
    const Profile profile{empty, uniform_strategy(mp, 1)};
    CHECK_THROWS_AS(expected_payoff(mp, profile), StrategyDomainMismatch);
  }
}

TEST_CASE("claim-2 strategy vs never-stop pays p - (1-p)/A") {
  const CounterexampleParams params{Rational(1, 2), Rational(3)};
  for (int stages : {1, 3, 5}) {
    const ExplicitGame g = counterexample_truncation(params, stages);
    const Profile profile{claim2_maximizer_strategy(params, stages),
                          counterexample_never_stop(params, stages)};
    CHECK(expected_payoff(g, profile) == Rational(1, 3));
  }
}

TEST_CASE("best response values") {
  const ExplicitGame mp = unfold(fixtures::matching_pennies(), 1);
  SUBCASE("uniform equalizes matching pennies") {
    const auto r = best_response_value(mp, uniform_strategy(mp, 0), Goal::maximize);
    CHECK(r.value == Rational(1, 2));
    // the returned responder reproduces the value exactly
    const Profile profile{uniform_strategy(mp, 0), r.responder};
    CHECK(expected_payoff(mp, profile) == r.value);
  }
  SUBCASE("never-stop minimizer caps the counterexample at p") {
    const CounterexampleParams params{Rational(1, 2), Rational(3)};
    for (int stages : {1, 2, 5}) {
      const ExplicitGame g = counterexample_truncation(params, stages);
      const auto r =
          best_response_value(g, counterexample_never_stop(params, stages), Goal::maximize);
      CHECK(r.value == params.p);
    }
  }
  SUBCASE("solver plans are certified by the backward induction") {
    const ExplicitGame g = unfold(testgen::random_spec_oracle(21), 3);
    const auto solved = solve_zero_sum(g);
    CHECK(best_response_value(g, solved.sigma1, Goal::minimize).value == solved.value);
  }
}

TEST_CASE("sandwich: br_max >= expected >= br_min") {
  const ExplicitGame g = unfold(testgen::random_spec_oracle(33), 3);
  const Profile profile{uniform_strategy(g, 0), uniform_strategy(g, 1)};
  const Rational mid = expected_payoff(g, profile);
  CHECK(best_response_value(g, profile.sigma1, Goal::maximize).value >= mid);
  CHECK(best_response_value(g, profile.sigma1, Goal::minimize).value <= mid);
}

TEST_CASE("maximizer guarantee is monotone in the horizon (Eq. 1)") {
  const GameSpec spec = testgen::random_spec_sweep(17);
  const ExplicitGame g4 = unfold(spec, 4);
  const BehavioralStrategy sigma1 = solve_zero_sum(g4).sigma1;
  Rational prev = 0;
  for (int n = 0; n <= 4; ++n) {
    const ExplicitGame g = unfold(spec, n);
    const Rational v = strategy_value(g, extend_uniform(g, sigma1));
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("simulation") {
  SUBCASE("all-zero game simulates to exactly zero") {
    const GameSpec spec = fixtures::all_zero();
    const ExplicitGame g = unfold(spec, 3);
    const Profile profile{uniform_strategy(g, 0), uniform_strategy(g, 1)};
    const auto r = simulate(spec, profile, 3, 7, 100);
    CHECK(r.mean == 0.0);
    CHECK(r.stderr_of_mean == 0.0);
  }
  SUBCASE("matching pennies mean is near 1/2 and reproducible") {
    const GameSpec spec = fixtures::matching_pennies();
    const ExplicitGame g = unfold(spec, 1);
    const Profile profile{uniform_strategy(g, 0), uniform_strategy(g, 1)};
    const auto a = simulate(spec, profile, 1, 99, 20'000);
    const auto b = simulate(spec, profile, 1, 99, 20'000);
    CHECK(a.mean == b.mean);  // bitwise determinism
    CHECK(std::abs(a.mean - 0.5) <= 4 * a.stderr_of_mean);
  }
}
