#pragma once

#include "peg/explicit_game.hpp"

namespace peg {

// Base spec with a distinguished Maximizer stop action at every live state,
// leading to an absorbing zero-payoff state.
struct StopAugmentedSpec {
  GameSpec augmented;
  std::string stop_action;
  std::string absorbing_state;
};

StopAugmentedSpec make_stop_augmented(const GameSpec& spec);

// The truncated leavable game L_n: every Maximizer history of depth < n also
// offers stop; at depth n stop is the only Maximizer action, forcing stop
// rules <= n. Solving the result yields val(L_n).
ExplicitGame build_leavable_truncation(const GameSpec& spec, int n,
                                       long node_budget = 1'000'000,
                                       bool absorb_terminal = true);

}  // namespace peg
