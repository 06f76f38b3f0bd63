#include "peg/solver.hpp"

#include "peg/errors.hpp"

namespace peg {

SolveResult solve_zero_sum(const ExplicitGame& game, const SolverConfig& config) {
  const SequenceIndex idx1 = build_sequence_index(game, 0);
  const SequenceIndex idx2 = build_sequence_index(game, 1);
  if (idx1.num_seqs() > config.max_sequences || idx2.num_seqs() > config.max_sequences)
    throw BudgetExceeded("sequence-form LP exceeds the size budget");

  const LPInstance lp1 = build_sequence_form(game, 0);
  const LPInstance lp2 = build_sequence_form(game, 1);
  const LPSolution sol1 = solve_lp(lp1.lp);
  const LPSolution sol2 = solve_lp(lp2.lp);
  if (sol1.objective != -sol2.objective)
    throw LPError("sequence-form duality violated: " + to_frac(sol1.objective) +
                  " vs " + to_frac(-sol2.objective));

  SolveResult result;
  result.value = sol1.objective;
  result.pivots = sol1.pivots + sol2.pivots;
  result.plan1.owner = 0;
  result.plan1.weights.assign(sol1.values.begin(), sol1.values.begin() + lp1.num_seq_vars);
  result.plan2.owner = 1;
  result.plan2.weights.assign(sol2.values.begin(), sol2.values.begin() + lp2.num_seq_vars);
  result.sigma1 = plan_to_behavioral(game, idx1, result.plan1);
  result.sigma2 = plan_to_behavioral(game, idx2, result.plan2);
  return result;
}

namespace {

// Pure strategy = one action per decision node of the private tree.
struct PureEnumerator {
  std::vector<int> nodes;   // private node ids with a real decision
  std::vector<int> counts;  // action count at each
  long long total = 1;

  PureEnumerator(const ExplicitGame& game, int player, long long cap) {
    for (size_t i = 0; i < game.privs[player].size(); ++i) {
      const auto& pn = game.privs[player][i];
      if (pn.action_ids.size() < 2) continue;
      nodes.push_back(static_cast<int>(i));
      counts.push_back(static_cast<int>(pn.action_ids.size()));
      if (total > cap / static_cast<long long>(pn.action_ids.size()) + 1) {
        total = cap + 1;  // saturate
        return;
      }
      total *= static_cast<long long>(pn.action_ids.size());
    }
  }

  // k-th pure strategy: action position at each decision node (mixed radix).
  std::vector<int> decode(long long k) const {
    std::vector<int> picks(nodes.size(), 0);
    for (size_t i = 0; i < nodes.size(); ++i) {
      picks[i] = static_cast<int>(k % counts[i]);
      k /= counts[i];
    }
    return picks;
  }
};

}  // namespace

Rational brute_force_oracle(const ExplicitGame& game, const OracleConfig& config) {
  const PureEnumerator e1(game, 0, config.max_pure_strategies);
  const PureEnumerator e2(game, 1, config.max_pure_strategies);
  if (e1.total > config.max_pure_strategies || e2.total > config.max_pure_strategies)
    throw OracleBudgetExceeded("pure strategy count exceeds the oracle budget");
  if (e1.total * e2.total > config.max_matrix_cells)
    throw OracleBudgetExceeded("pure strategy matrix exceeds the cell budget");

  // Action position chosen at every private node (singletons pinned to 0).
  std::vector<int> pick1(game.privs[0].size(), 0), pick2(game.privs[1].size(), 0);

  // chance * daily payoff on the edge into each node, precomputed once.
  std::vector<Rational> edge_value(game.nodes.size(), Rational(0));
  for (size_t u = 1; u < game.nodes.size(); ++u) {
    const PublicNode& h = game.nodes[u];
    if (h.in_payoff != 0) edge_value[u] = game.nodes[h.parent].chance *
        game.spec.transitions[game.nodes[h.parent].state][h.in_a1][h.in_a2][h.in_outcome].prob *
        h.in_payoff;
  }

  // Expected payoff of a pure profile: walk only the realized branches
  // (nature is the sole source of branching).
  auto eval_pure = [&](auto&& self, int u) -> Rational {
    const PublicNode& h = game.nodes[u];
    if (game.is_leaf(u)) return Rational(0);
    const int a1 = game.privs[0][h.priv[0]].action_ids[pick1[h.priv[0]]];
    const int a2 = game.privs[1][h.priv[1]].action_ids[pick2[h.priv[1]]];
    Rational total = 0;
    for (int c : h.children) {
      const PublicNode& child = game.nodes[c];
      if (child.in_a1 != a1 || child.in_a2 != a2) continue;
      total += edge_value[c] + self(self, c);
    }
    return total;
  };

  const long long m = e1.total, n = e2.total;
  std::vector<std::vector<Rational>> matrix(m, std::vector<Rational>(n));
  for (long long i = 0; i < m; ++i) {
    const auto picks_i = e1.decode(i);
    for (size_t t = 0; t < e1.nodes.size(); ++t) pick1[e1.nodes[t]] = picks_i[t];
    for (long long j = 0; j < n; ++j) {
      const auto picks_j = e2.decode(j);
      for (size_t t = 0; t < e2.nodes.size(); ++t) pick2[e2.nodes[t]] = picks_j[t];
      matrix[i][j] = eval_pure(eval_pure, 0);
    }
  }

  // Matrix game LP: max v subject to sum_i x_i M[i][j] >= v for all j,
  // sum x = 1, x >= 0, v free.
  LinearProgram lp;
  lp.num_vars = static_cast<int>(m) + 2;
  lp.objective.assign(lp.num_vars, Rational(0));
  const int vp = static_cast<int>(m), vm = vp + 1;
  lp.objective[vp] = 1;
  lp.objective[vm] = -1;
  for (long long j = 0; j < n; ++j) {
    std::vector<std::pair<int, Rational>> coeffs;
    for (long long i = 0; i < m; ++i)
      if (matrix[i][j] != 0) coeffs.emplace_back(static_cast<int>(i), matrix[i][j]);
    coeffs.emplace_back(vp, Rational(-1));
    coeffs.emplace_back(vm, Rational(1));
    lp.add_row(std::move(coeffs), '>', Rational(0));
  }
  {
    std::vector<std::pair<int, Rational>> coeffs;
    for (long long i = 0; i < m; ++i) coeffs.emplace_back(static_cast<int>(i), Rational(1));
    lp.add_row(std::move(coeffs), '=', Rational(1));
  }
  return solve_lp(lp).objective;
}

}  // namespace peg
