#include <doctest.h>

#include "peg/errors.hpp"
#include "peg/simplex.hpp"

using namespace peg;

TEST_CASE("two-variable LP") {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rational(3), Rational(2)};
  lp.add_row({{0, Rational(1)}, {1, Rational(1)}}, '<', Rational(4));
  lp.add_row({{0, Rational(1)}, {1, Rational(3)}}, '<', Rational(6));
  const auto sol = solve_lp(lp);
  CHECK(sol.objective == 12);
  CHECK(sol.values[0] == 4);
  CHECK(sol.values[1] == 0);
}

TEST_CASE("equalities and >= rows") {
  // max x + y s.t. x + y = 2, x >= 1/3
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rational(1), Rational(1)};
  lp.add_row({{0, Rational(1)}, {1, Rational(1)}}, '=', Rational(2));
  lp.add_row({{0, Rational(1)}}, '>', Rational(1, 3));
  const auto sol = solve_lp(lp);
  CHECK(sol.objective == 2);
}

TEST_CASE("infeasible and unbounded programs throw") {
  LinearProgram bad;
  bad.num_vars = 1;
  bad.objective = {Rational(1)};
  bad.add_row({{0, Rational(1)}}, '<', Rational(1));
  bad.add_row({{0, Rational(1)}}, '>', Rational(2));
  CHECK_THROWS_AS(solve_lp(bad), LPError);

  LinearProgram unbounded;
  unbounded.num_vars = 1;
  unbounded.objective = {Rational(1)};
  unbounded.add_row({{0, Rational(-1)}}, '<', Rational(0));
  CHECK_THROWS_AS(solve_lp(unbounded), LPError);
}

TEST_CASE("negative right-hand sides normalize") {
  // max -x s.t. -x <= -3  (x >= 3)
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {Rational(-1)};
  lp.add_row({{0, Rational(-1)}}, '<', Rational(-3));
  const auto sol = solve_lp(lp);
  CHECK(sol.objective == -3);
  CHECK(sol.values[0] == 3);
}

TEST_CASE("matrix game via LP: rock-paper-scissors value 0 shifted") {
  // payoffs shifted by +1 so variables stay nonnegative: value 1
  // rows: strategy simplex; constraints per opponent column
  LinearProgram lp;
  lp.num_vars = 5;  // x0..x2, v+, v-
  lp.objective = {Rational(0), Rational(0), Rational(0), Rational(1), Rational(-1)};
  const int M[3][3] = {{1, 2, 0}, {0, 1, 2}, {2, 0, 1}};
  for (int j = 0; j < 3; ++j) {
    std::vector<std::pair<int, Rational>> coeffs;
    for (int i = 0; i < 3; ++i) coeffs.emplace_back(i, Rational(M[i][j]));
    coeffs.emplace_back(3, Rational(-1));
    coeffs.emplace_back(4, Rational(1));
    lp.add_row(std::move(coeffs), '>', Rational(0));
  }
  lp.add_row({{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}}, '=', Rational(1));
  const auto sol = solve_lp(lp);
  CHECK(sol.objective == 1);
  CHECK(sol.values[0] == Rational(1, 3));
}

TEST_CASE("degenerate LP terminates (Bland fallback)") {
  // a classic cycling-prone instance (Beale); exact simplex must terminate
  LinearProgram lp;
  lp.num_vars = 4;
  lp.objective = {Rational(3, 4), Rational(-150), Rational(1, 50), Rational(-6)};
  lp.add_row({{0, Rational(1, 4)}, {1, Rational(-60)}, {2, Rational(-1, 25)}, {3, Rational(9)}},
             '<', Rational(0));
  lp.add_row({{0, Rational(1, 2)}, {1, Rational(-90)}, {2, Rational(-1, 50)}, {3, Rational(3)}},
             '<', Rational(0));
  lp.add_row({{2, Rational(1)}}, '<', Rational(1));
  const auto sol = solve_lp(lp);
  CHECK(sol.objective == Rational(1, 20));
}
