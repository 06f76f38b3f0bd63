#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "peg/explicit_game.hpp"
#include "peg/strategy.hpp"

namespace peg {

// Hidden-bit stopping game: Nature draws b (1 with probability p), only the
// Maximizer learns it. Stopping at an odd stage pays -1/+1 by b; at an even
// stage (Minimizer) pays -1/A. The game has no value: upper value p, lower
// value p - (1-p)/A.
struct CounterexampleParams {
  Rational p;
  Rational big_a;

  void require_valid() const;  // 0 < p < 1, A > 1/p
};

// Stage s of the stopping game sits at tree depth s: depth 0 is the Nature
// draw, odd depths are Maximizer stop opportunities, even depths the
// Minimizer's.
GameSpec build_counterexample(const CounterexampleParams& params);

// Truncation G_n in stage terms: n stages of play after the draw.
ExplicitGame counterexample_truncation(const CounterexampleParams& params, int stages,
                                       long node_budget = 1'000'000);

struct CounterexampleBounds {
  Rational upper;  // p
  Rational lower;  // p - (1-p)/A
  Rational gap;    // (1-p)/A
};

CounterexampleBounds counterexample_bounds(const CounterexampleParams& params);

// The Minimizer strategy "continue at all stages", with rows up to the given
// stage horizon.
BehavioralStrategy counterexample_never_stop(const CounterexampleParams& params, int stages);

// Claim 2: stop at stage 1 with probability 1 - (1-p)/(Ap) when b = 1, never
// otherwise. Its value is exactly p - (1-p)/A at every stage horizon >= 1.
BehavioralStrategy claim2_maximizer_strategy(const CounterexampleParams& params, int stages);

struct Claim1Reply {
  int stage = 0;  // odd N with the stop-probability tail below epsilon
  BehavioralStrategy strategy;
  Rational guarantee;  // exact payoff against the given Minimizer strategy
  std::vector<Rational> stop_probs;  // extracted sigma_i, i = 1..support end
};

// Claim 1's best reply against a Minimizer strategy with finite-horizon
// support: never stop when b = 0, stop at stage N when b = 1. Private
// histories missing from the Minimizer's table are read as "continue".
// working_stages caps the stage search; throws TailNotReached when no odd N
// within it has tail mass below epsilon.
Claim1Reply claim1_best_reply(const BehavioralStrategy& minimizer, const Rational& epsilon,
                              const CounterexampleParams& params, int working_stages = 64);

// ---------------------------------------------------------------------------
// Pursuit-evasion on a finite undirected graph. Simultaneous moves along
// edges (or stay); each player observes his own position and a public
// capture flag. Capture = both on the same vertex after a move.

struct PursuitGraph {
  std::vector<std::string> vertices;                 // sorted
  std::set<std::pair<std::string, std::string>> edges;  // normalized (min, max)

  bool adjacent(const std::string& u, const std::string& v) const;
  bool connected() const;
};

PursuitGraph parse_edge_list(const std::string& text);
PursuitGraph load_graph(const std::string& path);

enum class PursuitVariant {
  kind,    // Pursuer maximizes; payoff 1 once upon capture
  degree,  // Evader maximizes; payoff 1 per capture-free stage
};

struct PursuitParams {
  PursuitGraph graph;
  PursuitVariant variant = PursuitVariant::kind;
  std::string pursuer_start;
  std::string evader_start;
};

GameSpec build_pursuit(const PursuitParams& params);

}  // namespace peg
