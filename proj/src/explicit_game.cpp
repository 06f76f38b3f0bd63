#include "peg/explicit_game.hpp"

#include <algorithm>
#include <sstream>

#include "peg/errors.hpp"

namespace peg {

int PrivateNode::child(int action, int signal) const {
  const std::pair<int, int> key{action, signal};
  auto it = std::lower_bound(children.begin(), children.end(), key,
                             [](const auto& e, const auto& k) { return e.first < k; });
  if (it == children.end() || it->first != key) return -1;
  return it->second;
}

std::vector<int> ExplicitGame::available_actions(int player, int state, int depth) const {
  if (player == kMaximizer && leavable_forced_depth >= 0 && depth >= leavable_forced_depth) {
    // Post-stop absorbing states lack the stop action and keep their own list.
    const int stop = spec.action_index(0, state, leavable_stop_action);
    if (stop >= 0) return {stop};
  }
  std::vector<int> ids(spec.actions[player][state].size());
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return ids;
}

const std::string& ExplicitGame::action_name(int player, int priv_id, int action_id) const {
  const PrivateNode& pn = privs[player][priv_id];
  return spec.actions[player][pn.rep_state][action_id];
}

int ExplicitGame::num_public_at_depth(int depth) const {
  int count = 0;
  for (const auto& n : nodes) count += (n.depth == depth) ? 1 : 0;
  return count;
}

ExplicitGame truncate(const TruncationRequest& req) {
  GameSpec spec = expand_finite_model(req.spec);
  require_valid(spec);
  if (req.horizon < 0) throw InvalidSpec("horizon must be nonnegative");

  ExplicitGame g;
  g.spec = std::move(spec);
  g.horizon = req.horizon;
  g.absorb_terminal = req.absorb_terminal;
  g.leavable_forced_depth = req.leavable_forced_depth;
  g.leavable_stop_action = req.leavable_stop_action;

  std::vector<bool> terminal(g.spec.num_states());
  for (int s = 0; s < g.spec.num_states(); ++s) terminal[s] = is_terminal_state(g.spec, s);

  g.nodes.emplace_back();
  g.nodes[0].state = g.spec.initial_state;
  for (int p = 0; p < 2; ++p) {
    g.privs[p].emplace_back();
    g.privs[p][0].members.push_back(0);
  }

  // BFS expansion; child order is (a1, a2, outcome index).
  for (int u = 0; u < static_cast<int>(g.nodes.size()); ++u) {
    const int depth = g.nodes[u].depth;
    const int state = g.nodes[u].state;
    if (depth >= g.horizon) continue;
    if (g.absorb_terminal && terminal[state]) continue;

    const std::vector<int> acts1 = g.available_actions(0, state, depth);
    const std::vector<int> acts2 = g.available_actions(1, state, depth);
    for (int a1 : acts1) {
      for (int a2 : acts2) {
        const auto& outcomes = g.spec.transitions[state][a1][a2];
        const Rational& payoff = g.spec.payoffs[state][a1][a2];
        for (int oi = 0; oi < static_cast<int>(outcomes.size()); ++oi) {
          const NatureOutcome& o = outcomes[oi];
          if (o.prob == 0) continue;
          if (static_cast<long>(g.nodes.size()) >= req.node_budget)
            throw BudgetExceeded("public tree exceeds node budget of " +
                                 std::to_string(req.node_budget));
          PublicNode child;
          child.parent = u;
          child.depth = depth + 1;
          child.state = o.next_state;
          child.in_a1 = a1;
          child.in_a2 = a2;
          child.in_outcome = oi;
          child.chance = g.nodes[u].chance * o.prob;
          child.in_payoff = payoff;
          child.payoff_sum = g.nodes[u].payoff_sum + payoff;
          const int id = static_cast<int>(g.nodes.size());

          // Private children keyed by (own action, own signal).
          for (int p = 0; p < 2; ++p) {
            const int own_action = p == 0 ? a1 : a2;
            const int own_signal = p == 0 ? o.signal1 : o.signal2;
            const int parent_priv = g.nodes[u].priv[p];
            int pc = g.privs[p][parent_priv].child(own_action, own_signal);
            if (pc < 0) {
              pc = static_cast<int>(g.privs[p].size());
              PrivateNode pn;
              pn.parent = parent_priv;
              pn.depth = depth + 1;
              pn.in_action = own_action;
              pn.in_signal = own_signal;
              g.privs[p].push_back(std::move(pn));
              auto& siblings = g.privs[p][parent_priv].children;
              const std::pair<int, int> key{own_action, own_signal};
              siblings.insert(std::upper_bound(siblings.begin(), siblings.end(),
                                               std::make_pair(key, 0),
                                               [](const auto& a, const auto& b) {
                                                 return a.first < b.first;
                                               }),
                              {key, pc});
            }
            g.privs[p][pc].members.push_back(id);
            child.priv[p] = pc;
          }
          g.nodes[u].children.push_back(id);
          g.nodes.push_back(std::move(child));
        }
      }
    }
  }

  // Resolve each private node's action set from its live members; all live
  // members must agree or the player would not know his own options.
  for (int p = 0; p < 2; ++p) {
    for (auto& pn : g.privs[p]) {
      pn.rep_state = -1;
      for (int m : pn.members) {
        if (g.is_leaf(m)) continue;
        const int s = g.nodes[m].state;
        if (pn.rep_state < 0) {
          pn.rep_state = s;
        } else if (g.spec.actions[p][pn.rep_state] != g.spec.actions[p][s]) {
          throw InvalidSpec("player " + std::to_string(p + 1) +
                            " cannot distinguish states '" + g.spec.states[pn.rep_state] +
                            "' and '" + g.spec.states[s] + "' with different action sets");
        }
      }
      if (pn.rep_state >= 0) pn.action_ids = g.available_actions(p, pn.rep_state, pn.depth);
    }
  }
  return g;
}

Rational cumulative_payoff(const ExplicitGame& game, int node) {
  if (node < 0 || node >= static_cast<int>(game.nodes.size()))
    throw UnknownHistory("no such public node id " + std::to_string(node));
  return game.nodes[node].payoff_sum;
}

int find_public_node(const ExplicitGame& game, const std::vector<PublicStep>& path) {
  int u = 0;
  for (const auto& step : path) {
    const int state = game.nodes[u].state;
    const int a1 = game.spec.action_index(0, state, step.a1);
    const int a2 = game.spec.action_index(1, state, step.a2);
    if (a1 < 0 || a2 < 0)
      throw UnknownHistory("unknown action pair (" + step.a1 + ", " + step.a2 + ")");
    int next = -1;
    for (int c : game.nodes[u].children) {
      const auto& n = game.nodes[c];
      if (n.in_a1 == a1 && n.in_a2 == a2 && n.in_outcome == step.outcome) {
        next = c;
        break;
      }
    }
    if (next < 0) throw UnknownHistory("history leaves the tree at depth " +
                                       std::to_string(game.nodes[u].depth));
    u = next;
  }
  return u;
}

std::string dump_tree(const ExplicitGame& game) {
  std::ostringstream out;
  out << "# id parent depth a1 a2 outcome state payoff chance\n";
  for (size_t i = 0; i < game.nodes.size(); ++i) {
    const auto& n = game.nodes[i];
    out << i << ' ' << n.parent << ' ' << n.depth << ' ';
    if (n.parent < 0) {
      out << "- - -";
    } else {
      const int ps = game.nodes[n.parent].state;
      out << game.spec.actions[0][ps][n.in_a1] << ' ' << game.spec.actions[1][ps][n.in_a2]
          << ' ' << n.in_outcome;
    }
    out << ' ' << game.spec.states[n.state] << ' ' << to_frac(n.in_payoff) << ' '
        << to_frac(n.chance) << '\n';
  }
  return out.str();
}

}  // namespace peg
