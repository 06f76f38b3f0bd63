#pragma once

#include <string>
#include <vector>

#include "peg/rational.hpp"

namespace peg {

// max c^T z  subject to  a_i z (<= | = | >=) b_i,  z >= 0.
// Callers split free variables into nonnegative pairs.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, Rational>> coeffs;  // (variable, coefficient)
    char sense = '<';                              // '<', '=', '>'
    Rational rhs;
  };

  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;

  void add_row(std::vector<std::pair<int, Rational>> coeffs, char sense, Rational rhs);
};

struct LPSolution {
  Rational objective;
  std::vector<Rational> values;
  long pivots = 0;
};

// Exact two-phase primal simplex on a dense rational tableau. Entering
// column by steepest reduced cost, falling back to Bland's rule after a run
// of degenerate pivots, which guarantees termination. Throws LPError on
// infeasible or unbounded programs.
LPSolution solve_lp(const LinearProgram& lp);

// Plain-text dump (variables, constraints as rational strings).
std::string lp_to_text(const LinearProgram& lp, const std::vector<std::string>& var_names);

}  // namespace peg
