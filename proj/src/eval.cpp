#include "peg/eval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "peg/errors.hpp"

namespace peg {

namespace {

int position_of(const std::vector<int>& action_ids, int action) {
  auto it = std::find(action_ids.begin(), action_ids.end(), action);
  return it == action_ids.end() ? -1 : static_cast<int>(it - action_ids.begin());
}

}  // namespace

Rational expected_payoff(const ExplicitGame& game, const Profile& profile) {
  if (profile.sigma1.owner != kMaximizer || profile.sigma2.owner != kMinimizer)
    throw StrategyDomainMismatch("profile owners must be players 1 and 2");
  const ResolvedStrategy r1 = resolve_strategy(game, profile.sigma1);
  const ResolvedStrategy r2 = resolve_strategy(game, profile.sigma2);

  std::vector<Rational> reach(game.nodes.size(), Rational(0));
  reach[0] = 1;
  Rational total = 0;
  for (size_t u = 0; u < game.nodes.size(); ++u) {
    if (reach[u] == 0) continue;
    const PublicNode& h = game.nodes[u];
    for (int c : h.children) {
      const PublicNode& child = game.nodes[c];
      const int p1 = position_of(game.privs[0][h.priv[0]].action_ids, child.in_a1);
      const int p2 = position_of(game.privs[1][h.priv[1]].action_ids, child.in_a2);
      const Rational q1 = r1.probs[h.priv[0]][p1];
      const Rational q2 = r2.probs[h.priv[1]][p2];
      if (q1 == 0 || q2 == 0) continue;
      const Rational prob = game.spec.transitions[h.state][child.in_a1][child.in_a2]
                                [child.in_outcome].prob;
      reach[c] = reach[u] * q1 * q2 * prob;
      if (child.in_payoff != 0) total += reach[u] * q1 * q2 * child.in_payoff * prob;
    }
  }
  return total;
}

EvaluationResult best_response_value(const ExplicitGame& game, const BehavioralStrategy& fixed,
                                     Goal goal, MissingRowPolicy policy) {
  const int f = fixed.owner;
  const int r = 1 - f;
  const ResolvedStrategy rf = resolve_strategy(game, fixed, policy);

  // w[u]: chance times the fixed player's behavioral weights along the path.
  std::vector<Rational> w(game.nodes.size(), Rational(0));
  w[0] = 1;
  for (size_t u = 0; u < game.nodes.size(); ++u) {
    if (w[u] == 0) continue;
    const PublicNode& h = game.nodes[u];
    for (int c : h.children) {
      const PublicNode& child = game.nodes[c];
      const int fixed_action = f == 0 ? child.in_a1 : child.in_a2;
      const int pos = position_of(game.privs[f][h.priv[f]].action_ids, fixed_action);
      const Rational qf = rf.probs[h.priv[f]][pos];
      if (qf == 0) continue;
      const Rational prob = game.spec.transitions[h.state][child.in_a1][child.in_a2]
                                [child.in_outcome].prob;
      w[c] = w[u] * qf * prob;
    }
  }

  // Backward induction over the responder's private tree. Private ids are
  // topological, so a reverse sweep sees children before parents.
  const auto& privs = game.privs[r];
  std::vector<Rational> value(privs.size(), Rational(0));
  std::vector<int> best_action(privs.size(), -1);
  for (int i = static_cast<int>(privs.size()) - 1; i >= 0; --i) {
    const PrivateNode& pn = privs[i];
    if (pn.action_ids.empty()) continue;
    std::vector<Rational> q(pn.action_ids.size(), Rational(0));
    for (int m : pn.members) {
      if (game.is_leaf(m)) continue;
      const PublicNode& h = game.nodes[m];
      if (w[m] == 0) continue;
      const auto& fixed_ids = game.privs[f][h.priv[f]].action_ids;
      for (size_t k = 0; k < pn.action_ids.size(); ++k) {
        const int a_r = pn.action_ids[k];
        for (size_t bk = 0; bk < fixed_ids.size(); ++bk) {
          const Rational& qf = rf.probs[h.priv[f]][bk];
          if (qf == 0) continue;
          const int a1 = r == 0 ? a_r : fixed_ids[bk];
          const int a2 = r == 0 ? fixed_ids[bk] : a_r;
          const Rational& pay = game.spec.payoffs[h.state][a1][a2];
          if (pay != 0) q[k] += w[m] * qf * pay;
        }
      }
    }
    for (const auto& [key, child] : pn.children) {
      const int pos = position_of(pn.action_ids, key.first);
      if (pos >= 0) q[pos] += value[child];
    }
    int pick = 0;
    for (size_t k = 1; k < q.size(); ++k) {
      if (goal == Goal::maximize ? q[k] > q[pick] : q[k] < q[pick]) pick = static_cast<int>(k);
    }
    value[i] = q[pick];
    best_action[i] = pn.action_ids[pick];
  }

  EvaluationResult result;
  result.value = value[0];
  result.responder.owner = r;
  for (size_t i = 0; i < privs.size(); ++i) {
    if (privs[i].action_ids.empty()) continue;
    std::map<std::string, Rational> row;
    row[game.spec.actions[r][privs[i].rep_state][best_action[i]]] = 1;
    result.responder.rows[private_path(game, r, static_cast<int>(i))] = std::move(row);
  }
  return result;
}

Rational strategy_value(const ExplicitGame& game, const BehavioralStrategy& sigma,
                        MissingRowPolicy policy) {
  const Goal goal = sigma.owner == kMaximizer ? Goal::minimize : Goal::maximize;
  return best_response_value(game, sigma, goal, policy).value;
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform rational on a 2^-53 grid; exact comparisons against cumulative
// rational masses keep the draw unbiased on that grid.
Rational draw_unit(std::uint64_t& state) {
  const std::uint64_t bits = splitmix64(state) >> 11;
  return Rational(BigInt(bits), BigInt(1) << 53);
}

int sample_index(std::uint64_t& state, const std::vector<Rational>& probs) {
  const Rational u = draw_unit(state);
  Rational acc = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

SimulationResult simulate(const GameSpec& raw_spec, const Profile& profile, int horizon,
                          std::uint64_t seed, long long reps) {
  if (reps < 1) throw InvalidParams("reps must be >= 1");
  const GameSpec spec = expand_finite_model(raw_spec);
  require_valid(spec);
  std::vector<bool> terminal(spec.num_states());
  for (int s = 0; s < spec.num_states(); ++s) terminal[s] = is_terminal_state(spec, s);

  auto row_probs = [&spec](const BehavioralStrategy& sigma, const PrivPath& path, int state,
                           int player) {
    const auto& names = spec.actions[player][state];
    std::vector<Rational> probs(names.size(), Rational(0));
    auto it = sigma.rows.find(path);
    if (it == sigma.rows.end()) {
      if (names.size() == 1) {
        probs[0] = 1;
        return probs;
      }
      throw StrategyDomainMismatch("no row for a private history reached in simulation");
    }
    Rational mass = 0;
    for (const auto& [name, prob] : it->second) {
      auto pos = std::find(names.begin(), names.end(), name);
      if (pos == names.end())
        throw StrategyDomainMismatch("action '" + name + "' not available at this history");
      probs[pos - names.begin()] = prob;
      mass += prob;
    }
    if (mass != 1) throw StrategyDomainMismatch("row mass " + to_frac(mass) + " != 1");
    return probs;
  };

  double sum = 0, sum_sq = 0;
  for (long long rep = 0; rep < reps; ++rep) {
    std::uint64_t state_bits =
        (seed ^ 0x8000000000000000ULL) + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(rep + 1);
    int state = spec.initial_state;
    PrivPath path1, path2;
    Rational payoff = 0;
    for (int t = 0; t < horizon && !terminal[state]; ++t) {
      const int a1 = sample_index(state_bits, row_probs(profile.sigma1, path1, state, 0));
      const int a2 = sample_index(state_bits, row_probs(profile.sigma2, path2, state, 1));
      payoff += spec.payoffs[state][a1][a2];
      const auto& outcomes = spec.transitions[state][a1][a2];
      std::vector<Rational> probs(outcomes.size());
      for (size_t i = 0; i < outcomes.size(); ++i) probs[i] = outcomes[i].prob;
      const int oi = sample_index(state_bits, probs);
      path1.emplace_back(spec.actions[0][state][a1], spec.signal_name(0, outcomes[oi].signal1));
      path2.emplace_back(spec.actions[1][state][a2], spec.signal_name(1, outcomes[oi].signal2));
      state = outcomes[oi].next_state;
    }
    const double x = to_double(payoff);
    sum += x;
    sum_sq += x * x;
  }

  SimulationResult result;
  result.reps = reps;
  result.mean = sum / static_cast<double>(reps);
  if (reps > 1) {
    const double n = static_cast<double>(reps);
    double var = (sum_sq - n * result.mean * result.mean) / (n - 1);
    if (var < 0) var = 0;
    result.stderr_of_mean = std::sqrt(var / n);
  }
  return result;
}

}  // namespace peg
