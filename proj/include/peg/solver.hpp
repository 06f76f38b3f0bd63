#pragma once

#include "peg/eval.hpp"
#include "peg/sequence_form.hpp"

namespace peg {

struct SolverConfig {
  // Cap on sequence variables per player (guards the LP size).
  long max_sequences = 200'000;
};

struct SolveResult {
  Rational value;
  RealizationPlan plan1;
  RealizationPlan plan2;
  BehavioralStrategy sigma1;
  BehavioralStrategy sigma2;
  long pivots = 0;
};

// Exact value and optimal behavioral strategies of a finite ExplicitGame via
// sequence-form LP. Solves both players' programs and requires the two
// optima to agree (LP duality), which they must exactly.
SolveResult solve_zero_sum(const ExplicitGame& game, const SolverConfig& config = {});

struct OracleConfig {
  // Per-player cap on pure strategies, and a cap on matrix cells.
  long long max_pure_strategies = 10'000;
  long long max_matrix_cells = 4'000'000;
};

// Independent verification path: enumerates pure strategies (full action
// assignments over private decision nodes), builds the expected-payoff
// matrix and solves the matrix game. Returns the exact value.
Rational brute_force_oracle(const ExplicitGame& game, const OracleConfig& config = {});

}  // namespace peg
