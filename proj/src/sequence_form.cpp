#include "peg/sequence_form.hpp"

#include <nlohmann/json.hpp>

#include "peg/errors.hpp"

namespace peg {

SequenceIndex build_sequence_index(const ExplicitGame& game, int player) {
  const auto& privs = game.privs[player];
  SequenceIndex index;
  index.player = player;
  index.seqs.emplace_back(-1, -1);
  index.seq_in.assign(privs.size(), 0);
  index.seqs_out.resize(privs.size());
  for (size_t i = 0; i < privs.size(); ++i) {
    const PrivateNode& pn = privs[i];
    for (int a : pn.action_ids) {
      index.seqs_out[i].push_back(index.num_seqs());
      index.seqs.emplace_back(static_cast<int>(i), a);
    }
    for (const auto& [key, child] : pn.children) {
      // child continues the sequence (i, key.action)
      for (size_t k = 0; k < pn.action_ids.size(); ++k) {
        if (pn.action_ids[k] == key.first) {
          index.seq_in[child] = index.seqs_out[i][k];
          break;
        }
      }
    }
  }
  return index;
}

PayoffMatrix build_payoff_matrix(const ExplicitGame& game, const SequenceIndex& max_index,
                                 const SequenceIndex& min_index) {
  PayoffMatrix m;
  for (size_t u = 0; u < game.nodes.size(); ++u) {
    const PublicNode& h = game.nodes[u];
    if (h.parent < 0 || h.in_payoff == 0) continue;
    const PublicNode& parent = game.nodes[h.parent];
    // The payoff on the edge into h belongs to the action pair taken at the
    // parent, i.e. to the sequences (parent priv, in_a1) and (parent priv,
    // in_a2). Chance on the edge is included.
    const auto& pn1 = game.privs[0][parent.priv[0]];
    const auto& pn2 = game.privs[1][parent.priv[1]];
    int s1 = -1, s2 = -1;
    for (size_t k = 0; k < pn1.action_ids.size(); ++k)
      if (pn1.action_ids[k] == h.in_a1) s1 = max_index.seqs_out[parent.priv[0]][k];
    for (size_t k = 0; k < pn2.action_ids.size(); ++k)
      if (pn2.action_ids[k] == h.in_a2) s2 = min_index.seqs_out[parent.priv[1]][k];
    const Rational prob =
        game.spec.transitions[parent.state][h.in_a1][h.in_a2][h.in_outcome].prob;
    m[{s1, s2}] += parent.chance * prob * h.in_payoff;
  }
  return m;
}

std::vector<std::string> check_plan(const ExplicitGame& game, const SequenceIndex& index,
                                    const RealizationPlan& plan) {
  std::vector<std::string> issues;
  if (static_cast<int>(plan.weights.size()) != index.num_seqs()) {
    issues.push_back("weight vector size mismatch");
    return issues;
  }
  if (plan.weights[0] != 1) issues.push_back("root weight is " + to_frac(plan.weights[0]));
  for (const auto& w : plan.weights)
    if (w < 0) issues.push_back("negative sequence weight " + to_frac(w));
  const auto& privs = game.privs[index.player];
  for (size_t i = 0; i < privs.size(); ++i) {
    if (privs[i].action_ids.empty()) continue;
    Rational total = 0;
    for (int s : index.seqs_out[i]) total += plan.weights[s];
    if (total != plan.weights[index.seq_in[i]])
      issues.push_back("flow violated at private node " + std::to_string(i) + ": " +
                       to_frac(total) + " != " + to_frac(plan.weights[index.seq_in[i]]));
  }
  return issues;
}

LPInstance build_sequence_form(const ExplicitGame& game, int owner) {
  const int opp = 1 - owner;
  const SequenceIndex own = build_sequence_index(game, owner);
  const SequenceIndex other = build_sequence_index(game, opp);
  const PayoffMatrix payoff = owner == kMaximizer
                                  ? build_payoff_matrix(game, own, other)
                                  : build_payoff_matrix(game, other, own);

  // Variables: own sequence weights, then (v+ , v-) per opponent infoset
  // value (index 0 = opponent root value).
  const int n_seq = own.num_seqs();
  const auto& opp_privs = game.privs[opp];
  std::vector<int> opp_value_var(opp_privs.size() + 1, -1);
  LPInstance inst;
  inst.owner = owner;
  inst.num_seq_vars = n_seq;

  int next = n_seq;
  opp_value_var[0] = next;  // root value
  next += 2;
  for (size_t i = 0; i < opp_privs.size(); ++i) {
    if (opp_privs[i].action_ids.empty()) continue;
    opp_value_var[i + 1] = next;
    next += 2;
  }
  inst.lp.num_vars = next;
  inst.lp.objective.assign(next, Rational(0));
  // Both LPs maximize the root value variable. For the Maximizer it is the
  // opponent's best-response value, so the optimum is the game value; for
  // the Minimizer the value variables carry a flipped sign, so the optimum
  // is the negated game value.
  inst.lp.objective[opp_value_var[0]] = 1;
  inst.lp.objective[opp_value_var[0] + 1] = -1;

  // Flow constraints for the owner.
  inst.lp.add_row({{0, Rational(1)}}, '=', Rational(1));
  const auto& own_privs = game.privs[owner];
  for (size_t i = 0; i < own_privs.size(); ++i) {
    if (own_privs[i].action_ids.empty()) continue;
    std::vector<std::pair<int, Rational>> coeffs;
    for (int s : own.seqs_out[i]) coeffs.emplace_back(s, Rational(1));
    coeffs.emplace_back(own.seq_in[i], Rational(-1));
    inst.lp.add_row(std::move(coeffs), '=', Rational(0));
  }

  // One constraint per opponent sequence. For the Maximizer's LP:
  //   v_head(sigma2) - sum_child v_child - sum_x M[x, sigma2] * x <= 0,
  // i.e. the opponent cannot do better than the values we claim. For the
  // Minimizer the payoff sign flips (it maximizes -payoff).
  std::vector<std::vector<std::pair<int, Rational>>> per_opp_seq(other.num_seqs());
  for (const auto& [key, coeff] : payoff) {
    const int own_seq = owner == kMaximizer ? key.first : key.second;
    const int opp_seq = owner == kMaximizer ? key.second : key.first;
    const Rational c = owner == kMaximizer ? -coeff : coeff;
    per_opp_seq[opp_seq].emplace_back(own_seq, c);
  }
  // head infoset of every opponent sequence, and children per sequence
  std::vector<int> head(other.num_seqs(), 0);  // value-var slot index (0 = root)
  std::vector<std::vector<int>> children_of_seq(other.num_seqs());
  for (size_t i = 0; i < opp_privs.size(); ++i) {
    if (opp_privs[i].action_ids.empty()) continue;
    children_of_seq[other.seq_in[i]].push_back(static_cast<int>(i) + 1);
    for (int s : other.seqs_out[i]) head[s] = static_cast<int>(i) + 1;
  }
  for (int s = 0; s < other.num_seqs(); ++s) {
    // Sequences that never reach a decision and never touch a payoff entry
    // still get a constraint when they are the empty sequence (bounding the
    // root value) or head of some infoset.
    std::vector<std::pair<int, Rational>> coeffs = per_opp_seq[s];
    const int hv = opp_value_var[head[s]];
    coeffs.emplace_back(hv, Rational(1));
    coeffs.emplace_back(hv + 1, Rational(-1));
    for (int child : children_of_seq[s]) {
      coeffs.emplace_back(opp_value_var[child], Rational(-1));
      coeffs.emplace_back(opp_value_var[child] + 1, Rational(1));
    }
    inst.lp.add_row(std::move(coeffs), '<', Rational(0));
  }

  // Names for the debug dump.
  inst.var_names.reserve(next);
  for (int s = 0; s < n_seq; ++s) inst.var_names.push_back("x" + std::to_string(s));
  inst.var_names.resize(next);
  for (size_t slot = 0; slot < opp_value_var.size(); ++slot) {
    if (opp_value_var[slot] < 0) continue;
    inst.var_names[opp_value_var[slot]] = "v" + std::to_string(slot) + "+";
    inst.var_names[opp_value_var[slot] + 1] = "v" + std::to_string(slot) + "-";
  }
  return inst;
}

BehavioralStrategy plan_to_behavioral(const ExplicitGame& game, const SequenceIndex& index,
                                      const RealizationPlan& plan) {
  BehavioralStrategy sigma;
  sigma.owner = index.player;
  const auto& privs = game.privs[index.player];
  for (size_t i = 0; i < privs.size(); ++i) {
    const PrivateNode& pn = privs[i];
    if (pn.action_ids.empty()) continue;
    const Rational in = plan.weights[index.seq_in[i]];
    std::map<std::string, Rational> row;
    const auto& names = game.spec.actions[index.player][pn.rep_state];
    if (in > 0) {
      for (size_t k = 0; k < pn.action_ids.size(); ++k)
        row[names[pn.action_ids[k]]] = plan.weights[index.seqs_out[i][k]] / in;
    } else {
      // Unreached information set: canonical uniform row.
      for (int id : pn.action_ids)
        row[names[id]] = Rational(1, static_cast<long>(pn.action_ids.size()));
    }
    sigma.rows[private_path(game, index.player, static_cast<int>(i))] = std::move(row);
  }
  return sigma;
}

RealizationPlan behavioral_to_plan(const ExplicitGame& game, const SequenceIndex& index,
                                   const BehavioralStrategy& sigma) {
  if (sigma.owner != index.player) throw StrategyDomainMismatch("plan owner mismatch");
  const ResolvedStrategy r = resolve_strategy(game, sigma, MissingRowPolicy::uniform);
  RealizationPlan plan;
  plan.owner = index.player;
  plan.weights.assign(index.num_seqs(), Rational(0));
  plan.weights[0] = 1;
  const auto& privs = game.privs[index.player];
  for (size_t i = 0; i < privs.size(); ++i) {
    const PrivateNode& pn = privs[i];
    if (pn.action_ids.empty()) continue;
    const Rational& in = plan.weights[index.seq_in[i]];
    for (size_t k = 0; k < pn.action_ids.size(); ++k)
      plan.weights[index.seqs_out[i][k]] = in * r.probs[i][k];
  }
  return plan;
}

nlohmann::json plan_to_json(const ExplicitGame& game, const SequenceIndex& index,
                            const RealizationPlan& plan) {
  nlohmann::json entries = nlohmann::json::array();
  for (int s = 1; s < index.num_seqs(); ++s) {
    const auto [node, action] = index.seqs[s];
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& [a, sig] : private_path(game, index.player, node))
      steps.push_back(nlohmann::json::array({a, sig}));
    entries.push_back({{"history", std::move(steps)},
                       {"action", game.spec.actions[index.player]
                                      [game.privs[index.player][node].rep_state][action]},
                       {"weight", to_frac(plan.weights[s])}});
  }
  return nlohmann::json{{"player", index.player + 1}, {"weights", std::move(entries)}};
}

}  // namespace peg
