#pragma once

#include <string>
#include <vector>

#include "peg/game_spec.hpp"

namespace peg::fixtures {

// Single live state, both players pick heads/tails once, payoff 1 on a
// match; the game then ends. Value 1/2 at horizon 1.
inline GameSpec matching_pennies() {
  GameSpec g;
  g.states = {"end", "play"};
  g.initial_state = 1;
  g.signal_names[0] = {"."};
  g.signal_names[1] = {"."};
  g.actions[0] = {{"idle"}, {"heads", "tails"}};
  g.actions[1] = {{"idle"}, {"heads", "tails"}};
  g.transitions.resize(2);
  g.payoffs.resize(2);
  g.transitions[0] = {{{{Rational(1), 0, 0, 0}}}};
  g.payoffs[0] = {{Rational(0)}};
  g.transitions[1].assign(2, std::vector<std::vector<NatureOutcome>>(2, {{Rational(1), 0, 0, 0}}));
  g.payoffs[1] = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  g.nonnegative_declared = true;
  g.declared_bound = 2;
  return g;
}

// All payoffs zero, single self-looping state.
inline GameSpec all_zero() {
  GameSpec g;
  g.states = {"s"};
  g.initial_state = 0;
  g.signal_names[0] = {"."};
  g.signal_names[1] = {"."};
  g.actions[0] = {{"a", "b"}};
  g.actions[1] = {{"a", "b"}};
  g.transitions = {std::vector<std::vector<std::vector<NatureOutcome>>>(
      2, std::vector<std::vector<NatureOutcome>>(2, {{Rational(1), 0, 0, 0}}))};
  g.payoffs = {std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, Rational(0)))};
  g.nonnegative_declared = true;
  g.declared_bound = 1;
  return g;
}

// Capture is forced at stage 1: stage 0 closes in, stage 1 pays 1, then the
// game is over. v_0 = v_1 = 0 and v_n = 1 for n >= 2.
inline GameSpec forced_capture() {
  GameSpec g;
  g.states = {"caught", "chase", "close"};
  g.initial_state = 1;
  g.signal_names[0] = {".", "cap"};
  g.signal_names[1] = {".", "cap"};
  g.actions[0] = {{"idle"}, {"advance"}, {"grab"}};
  g.actions[1] = {{"idle"}, {"run"}, {"run"}};
  g.transitions.resize(3);
  g.payoffs.resize(3);
  g.transitions[0] = {{{{Rational(1), 0, 0, 0}}}};
  g.payoffs[0] = {{Rational(0)}};
  g.transitions[1] = {{{{Rational(1), 2, 0, 0}}}};
  g.payoffs[1] = {{Rational(0)}};
  g.transitions[2] = {{{{Rational(1), 0, 1, 1}}}};
  g.payoffs[2] = {{Rational(1)}};
  g.nonnegative_declared = true;
  g.declared_bound = 2;
  return g;
}

// Maximizer's first action dominates, paying 1 per stage forever.
inline GameSpec dominant_action() {
  GameSpec g;
  g.states = {"s"};
  g.initial_state = 0;
  g.signal_names[0] = {"."};
  g.signal_names[1] = {"."};
  g.actions[0] = {{"good", "bad"}};
  g.actions[1] = {{"x", "y"}};
  g.transitions = {std::vector<std::vector<std::vector<NatureOutcome>>>(
      2, std::vector<std::vector<NatureOutcome>>(2, {{Rational(1), 0, 0, 0}}))};
  g.payoffs = {{{Rational(1), Rational(1)}, {Rational(0), Rational(0)}}};
  g.nonnegative_declared = true;
  return g;
}

// Stage n pays 1/((n+1)(n+2)) unconditionally through stage `depth`, so
// v_n = 1 - 1/(n+1) for n <= depth + 1.
inline GameSpec harmonic_game(int depth) {
  GameSpec g;
  for (int k = 0; k <= depth; ++k) g.states.push_back("t" + std::to_string(k));
  g.states.push_back("tail");
  g.initial_state = 0;
  g.signal_names[0] = {"."};
  g.signal_names[1] = {"."};
  const int tail = depth + 1;
  for (int k = 0; k <= tail; ++k) {
    g.actions[0].push_back({"go"});
    g.actions[1].push_back({"go"});
    const int next = k < depth ? k + 1 : tail;
    g.transitions.push_back({{{{Rational(1), next, 0, 0}}}});
    const Rational pay = k <= depth ? Rational(1, static_cast<long>((k + 1)) *
                                                      static_cast<long>(k + 2))
                                    : Rational(0);
    g.payoffs.push_back({{pay}});
  }
  g.nonnegative_declared = true;
  g.declared_bound = 1;
  return g;
}

// Two-action, two-player game with perfect monitoring: each player's signal
// names the opponent's action. Matching-pennies payoffs each stage.
inline GameSpec perfect_monitoring_pennies() {
  GameSpec g;
  g.states = {"s"};
  g.initial_state = 0;
  g.signal_names[0] = {"heads", "tails"};
  g.signal_names[1] = {"heads", "tails"};
  g.actions[0] = {{"heads", "tails"}};
  g.actions[1] = {{"heads", "tails"}};
  g.transitions.resize(1);
  g.transitions[0].resize(2);
  for (int a1 = 0; a1 < 2; ++a1) {
    g.transitions[0][a1].resize(2);
    for (int a2 = 0; a2 < 2; ++a2) g.transitions[0][a1][a2] = {{Rational(1), 0, a2, a1}};
  }
  g.payoffs = {{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
  g.nonnegative_declared = true;
  return g;
}

// f == 1 at every history; the Minimizer is irrelevant. val(L_n) = n.
inline GameSpec ones_game() {
  GameSpec g = dominant_action();
  g.payoffs = {{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}};
  return g;
}

}  // namespace peg::fixtures
