#pragma once

#include <cstdint>
#include <optional>

#include "peg/explicit_game.hpp"
#include "peg/strategy.hpp"

namespace peg {

// Exact expectation of rho_n under the distribution induced by the profile:
// a single weighted traversal of the public tree.
Rational expected_payoff(const ExplicitGame& game, const Profile& profile);

enum class Goal { maximize, minimize };

struct EvaluationResult {
  Rational value;
  BehavioralStrategy responder;  // achieving pure best response
};

// inf/sup over the responder's strategies of the expected payoff against
// `fixed`, via backward induction on the responder's private tree with the
// fixed strategy and Nature folded into node weights. Independent of the LP
// machinery.
EvaluationResult best_response_value(const ExplicitGame& game, const BehavioralStrategy& fixed,
                                     Goal goal,
                                     MissingRowPolicy policy = MissingRowPolicy::error);

// val(sigma^i): the strategy's guaranteed value (opponent best-responds
// against it).
Rational strategy_value(const ExplicitGame& game, const BehavioralStrategy& sigma,
                        MissingRowPolicy policy = MissingRowPolicy::error);

struct SimulationResult {
  double mean = 0;
  double stderr_of_mean = 0;
  long long reps = 0;
};

// Seeded Monte Carlo estimate of expected_payoff. Replication r uses a
// counter-based stream keyed by (seed, r), so results do not depend on
// evaluation order. Terminal (absorbing zero) states end a rollout early.
SimulationResult simulate(const GameSpec& spec, const Profile& profile, int horizon,
                          std::uint64_t seed, long long reps);

}  // namespace peg
