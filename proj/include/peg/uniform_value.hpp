#pragma once

#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "peg/solver.hpp"

namespace peg {

struct SweepConfig {
  int max_horizon = 8;
  // Stop early once this many consecutive gaps v_n - v_{n-1} fall below
  // plateau_epsilon. plateau_epsilon = 0 disables early stopping.
  Rational plateau_epsilon = 0;
  int plateau_consecutive = 3;
  long node_budget = 1'000'000;
  bool leavable = false;
  bool absorb_terminal = true;
  SolverConfig solver;
};

// Horizon-indexed record of a Theorem-1 sweep. When the game is nonnegative,
// v_N is a certified lower bound on the uniform value; the limit is reported
// as an estimate only.
struct ValueReport {
  GameSpec spec;
  SweepConfig config;
  bool nonnegative = false;
  std::optional<Rational> bound;     // declared B, if any
  std::vector<Rational> values;      // v_0 .. v_N
  int final_horizon = 0;
  bool plateaued = false;
  Rational last_gap = 0;
  BehavioralStrategy maximizer;                // optimal in the final horizon
  BehavioralStrategy minimizer;
  std::vector<Rational> maximizer_guarantees;  // val_{G_n}(sigma1) for n <= N
  std::vector<Rational> minimizer_values;      // val_{G_n}(sigma2) for n <= N
};

// Solves G_0..G_N exactly and certifies the reported guarantees through
// best_response_value. Throws NonMonotoneValues if a nonnegative game
// produces a decreasing sequence (an internal bug by Theorem 1).
ValueReport sweep(const GameSpec& spec, const SweepConfig& config);

struct Extraction {
  int horizon = 0;  // N with v_N within epsilon of the limit estimate
  BehavioralStrategy sigma1;
  BehavioralStrategy sigma2;
  Rational guarantee;               // v_N
  std::vector<Rational> certified;  // val_{G_n}(sigma1) for n in [N, final]
};

// Theorem 1's epsilon-optimal extraction: the Maximizer's optimal strategy
// of G_N (extended uniformly beyond N) guarantees v_N in every longer
// truncation of a nonnegative game. Requires a plateaued report.
Extraction extract_eps_optimal(const ValueReport& report, const Rational& epsilon);

nlohmann::json report_to_json(const ValueReport& report);
std::string report_to_csv(const ValueReport& report);
nlohmann::json extraction_to_json(const Extraction& extraction);

// Rebuilds the report's truncation at an arbitrary horizon (shared by the
// extraction and the CLI).
ExplicitGame report_truncation(const ValueReport& report, int horizon);

}  // namespace peg
