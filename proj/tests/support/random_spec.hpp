#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "peg/explicit_game.hpp"
#include "peg/game_spec.hpp"

namespace peg::testgen {

struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed ^ 0x6A09E667F3BCC908ULL) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  template <typename T>
  const T& pick(const std::vector<T>& options) {
    return options[below(static_cast<int>(options.size()))];
  }
};

// Product of action counts over decision nodes (saturating at cap + 1).
inline long long pure_count(const ExplicitGame& game, int player, long long cap) {
  long long total = 1;
  for (const auto& pn : game.privs[player]) {
    if (pn.action_ids.size() < 2) continue;
    if (total > cap / static_cast<long long>(pn.action_ids.size()) + 1) return cap + 1;
    total *= static_cast<long long>(pn.action_ids.size());
  }
  return total;
}

inline long long sequence_count(const ExplicitGame& game, int player) {
  long long total = 1;
  for (const auto& pn : game.privs[player]) total += static_cast<long long>(pn.action_ids.size());
  return total;
}

// Family for oracle-scale checks: two live states with 2x2 actions, Nature
// splits, partially informative signals, public termination. Filtered so
// both players' horizon-3 pure strategy counts stay small.
inline GameSpec random_spec_oracle(std::uint64_t seed) {
  const std::vector<Rational> payoff_pool{Rational(0), Rational(0), Rational(1, 2), Rational(1),
                                          Rational(2)};
  const std::vector<Rational> split_pool{Rational(1, 2), Rational(1, 3), Rational(2, 3),
                                         Rational(3, 4)};
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(seed * 0x51ED2701u + attempt * 0x9E377901u + 17);
    GameSpec g;
    g.states = {"end", "liveA", "liveB"};
    g.initial_state = 1;
    g.signal_names[0] = {"(end)", "x", "y"};
    g.signal_names[1] = {"(end)", "x", "y"};
    g.actions[0] = {{"idle"}, {"l", "r"}, {"l", "r"}};
    g.actions[1] = {{"idle"}, {"l", "r"}, {"l", "r"}};
    g.transitions.resize(3);
    g.payoffs.resize(3);
    g.transitions[0] = {{{{Rational(1), 0, 0, 0}}}};
    g.payoffs[0] = {{Rational(0)}};
    for (int s = 1; s <= 2; ++s) {
      g.transitions[s].assign(2, std::vector<std::vector<NatureOutcome>>(2));
      g.payoffs[s].assign(2, std::vector<Rational>(2, Rational(0)));
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
          g.payoffs[s][a1][a2] = rng.pick(payoff_pool);
          auto& cell = g.transitions[s][a1][a2];
          const int pattern = rng.below(4);
          auto live_outcome = [&](const Rational& prob) {
            // pooled signals most of the time keep information sets coarse
            const int s1 = 1 + (rng.below(3) == 0 ? rng.below(2) : 0);
            const int s2 = 1 + (rng.below(3) == 0 ? rng.below(2) : 0);
            cell.push_back({prob, 1 + rng.below(2), s1, s2});
          };
          if (pattern == 0) {
            cell.push_back({Rational(1), 0, 0, 0});  // absorb
          } else if (pattern == 1) {
            live_outcome(Rational(1));
          } else if (pattern == 2) {
            const Rational q = rng.pick(split_pool);
            live_outcome(q);
            live_outcome(1 - q);
          } else {
            const Rational q = rng.pick(split_pool);
            live_outcome(q);
            cell.push_back({1 - q, 0, 0, 0});
          }
        }
    }
    g.nonnegative_declared = true;

    g = parse_game(render_game(g));  // canonical alphabets
    TruncationRequest req;
    req.spec = g;
    req.horizon = 3;
    const ExplicitGame probe = truncate(req);
    if (pure_count(probe, 0, 128) <= 128 && pure_count(probe, 1, 128) <= 128) return g;
  }
}

// Family for horizon-6 sweeps: a stopping game with a hidden state. Both
// players can end the game; the Maximizer gets a one-time noisy glimpse of
// the hidden state at stage 1. Filtered to keep the sequence-form LPs small.
inline GameSpec random_spec_sweep(std::uint64_t seed) {
  const std::vector<Rational> payoff_pool{Rational(0), Rational(1, 2), Rational(1),
                                          Rational(3, 2)};
  const std::vector<Rational> split_pool{Rational(1, 2), Rational(1, 3), Rational(1, 4)};
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(seed * 0x2545F491u + attempt * 0x9E377901u + 3);
    GameSpec g;
    g.states = {"end", "hidA", "hidB"};
    g.initial_state = 1 + rng.below(2);
    g.signal_names[0] = {"(end)", ".", "u", "v"};
    g.signal_names[1] = {"(end)", "."};
    g.actions[0] = {{"idle"}, {"go", "quit"}, {"go", "quit"}};
    g.actions[1] = {{"idle"}, {"keep", "fold"}, {"keep", "fold"}};
    g.transitions.resize(3);
    g.payoffs.resize(3);
    g.transitions[0] = {{{{Rational(1), 0, 0, 0}}}};
    g.payoffs[0] = {{Rational(0)}};
    for (int s = 1; s <= 2; ++s) {
      g.transitions[s].assign(2, std::vector<std::vector<NatureOutcome>>(2));
      g.payoffs[s].assign(2, std::vector<Rational>(2, Rational(0)));
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
          g.payoffs[s][a1][a2] = rng.pick(payoff_pool);
          auto& cell = g.transitions[s][a1][a2];
          if (a1 == 1 || a2 == 1) {
            cell.push_back({Rational(1), 0, 0, 0});  // quit/fold end the game
            continue;
          }
          // (go, keep): Nature may shuffle the hidden state; at stage 1 the
          // Maximizer's signal leaks it, afterwards signals are mute.
          const Rational q = rng.pick(split_pool);
          const int informative = rng.below(2);
          const int sig_a = informative ? 2 : 1;
          const int sig_b = informative ? 3 : 1;
          cell.push_back({q, 1, sig_a, 1});
          cell.push_back({1 - q, 2, sig_b, 1});
        }
    }
    g.nonnegative_declared = true;

    g = parse_game(render_game(g));  // canonical alphabets
    TruncationRequest req;
    req.spec = g;
    req.horizon = 6;
    const ExplicitGame probe = truncate(req);
    if (sequence_count(probe, 0) <= 260 && sequence_count(probe, 1) <= 260 &&
        probe.nodes.size() <= 60'000)
      return g;
  }
}

// Hidden-coin spec for leavable tests: Nature fixes a coin at stage 0; the
// Maximizer sees a noisy hint and collects coin-dependent payoffs while the
// Minimizer may shut the game down.
inline GameSpec random_hidden_coin(std::uint64_t seed) {
  Rng rng(seed * 0xD1342543u + 11);
  const std::vector<Rational> payoff_pool{Rational(0), Rational(1, 2), Rational(1)};
  GameSpec g;
  g.states = {"coinA", "coinB", "draw", "end"};
  g.initial_state = 2;
  g.signal_names[0] = {"(end)", ".", "hintA", "hintB"};
  g.signal_names[1] = {"(end)", "."};
  g.actions[0] = {{"go"}, {"go"}, {"go"}, {"go"}};
  g.actions[1] = {{"keep", "fold"}, {"keep", "fold"}, {"wait"}, {"idle"}};
  g.transitions.resize(4);
  g.payoffs.resize(4);

  const Rational p_coin = rng.pick(std::vector<Rational>{Rational(1, 2), Rational(1, 3)});
  const Rational noise = rng.pick(std::vector<Rational>{Rational(0), Rational(1, 4)});
  // draw: hint is correct with probability 1 - noise
  g.transitions[2] = {{{
      {p_coin * (1 - noise), 0, 2, 1},
      {p_coin * noise, 0, 3, 1},
      {(1 - p_coin) * noise, 1, 2, 1},
      {(1 - p_coin) * (1 - noise), 1, 3, 1},
  }}};
  g.payoffs[2] = {{Rational(0)}};
  for (int s = 0; s <= 1; ++s) {
    g.transitions[s] = {{{{Rational(1), s, 1, 1}}, {{Rational(1), 3, 0, 0}}}};
    g.payoffs[s] = {{rng.pick(payoff_pool), rng.pick(payoff_pool)}};
  }
  g.transitions[3] = {{{{Rational(1), 3, 1, 1}}}};
  g.payoffs[3] = {{Rational(0)}};
  g.nonnegative_declared = true;
  return parse_game(render_game(g));  // canonical alphabets

}

}  // namespace peg::testgen
