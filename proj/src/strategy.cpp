#include "peg/strategy.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "peg/errors.hpp"

namespace peg {

using nlohmann::json;

PrivPath private_path(const ExplicitGame& game, int player, int priv_id) {
  PrivPath path;
  int u = priv_id;
  while (u > 0) {
    const PrivateNode& pn = game.privs[player][u];
    const int parent = pn.parent;
    const int parent_state = game.privs[player][parent].rep_state;
    path.emplace_back(game.spec.actions[player][parent_state][pn.in_action],
                      game.spec.signal_name(player, pn.in_signal));
    u = parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ResolvedStrategy resolve_strategy(const ExplicitGame& game, const BehavioralStrategy& sigma,
                                  MissingRowPolicy policy) {
  const int p = sigma.owner;
  const auto& privs = game.privs[p];
  ResolvedStrategy out;
  out.owner = p;
  out.probs.resize(privs.size());

  // reach[i]: positive own-probability prefix (private ids are topological).
  std::vector<bool> reach(privs.size(), false);
  reach[0] = true;

  for (size_t i = 0; i < privs.size(); ++i) {
    const PrivateNode& pn = privs[i];
    if (pn.action_ids.empty()) continue;
    const auto& names = game.spec.actions[p][pn.rep_state];
    auto& row = out.probs[i];
    row.assign(pn.action_ids.size(), 0);

    auto it = sigma.rows.find(private_path(game, p, static_cast<int>(i)));
    if (it == sigma.rows.end()) {
      if (pn.action_ids.size() == 1) {
        row[0] = 1;  // no real decision; row implied
      } else if (reach[i] && policy == MissingRowPolicy::error) {
        throw StrategyDomainMismatch("no row for a reachable private history of player " +
                                     std::to_string(p + 1) + " at depth " +
                                     std::to_string(pn.depth));
      } else {
        for (auto& q : row) q = Rational(1, static_cast<long>(row.size()));
      }
    } else {
      Rational mass = 0;
      for (const auto& [name, prob] : it->second) {
        if (prob < 0) throw StrategyDomainMismatch("negative action probability");
        auto pos = std::find_if(pn.action_ids.begin(), pn.action_ids.end(),
                                [&](int id) { return names[id] == name; });
        if (pos == pn.action_ids.end())
          throw StrategyDomainMismatch("action '" + name + "' not available at this history");
        row[pos - pn.action_ids.begin()] = prob;
        mass += prob;
      }
      if (mass != 1) throw StrategyDomainMismatch("row mass " + to_frac(mass) + " != 1");
    }
    if (reach[i]) {
      for (const auto& [key, child] : pn.children) {
        auto pos = std::find(pn.action_ids.begin(), pn.action_ids.end(), key.first);
        if (pos != pn.action_ids.end() && row[pos - pn.action_ids.begin()] > 0)
          reach[child] = true;
      }
    }
  }
  return out;
}

BehavioralStrategy uniform_strategy(const ExplicitGame& game, int owner) {
  BehavioralStrategy sigma;
  sigma.owner = owner;
  const auto& privs = game.privs[owner];
  for (size_t i = 0; i < privs.size(); ++i) {
    const PrivateNode& pn = privs[i];
    if (pn.action_ids.empty()) continue;
    std::map<std::string, Rational> row;
    for (int id : pn.action_ids)
      row[game.spec.actions[owner][pn.rep_state][id]] =
          Rational(1, static_cast<long>(pn.action_ids.size()));
    sigma.rows[private_path(game, owner, static_cast<int>(i))] = std::move(row);
  }
  return sigma;
}

BehavioralStrategy extend_uniform(const ExplicitGame& game, const BehavioralStrategy& sigma) {
  BehavioralStrategy out = sigma;
  const auto& privs = game.privs[sigma.owner];
  for (size_t i = 0; i < privs.size(); ++i) {
    const PrivateNode& pn = privs[i];
    if (pn.action_ids.empty()) continue;
    PrivPath path = private_path(game, sigma.owner, static_cast<int>(i));
    if (out.rows.count(path)) continue;
    std::map<std::string, Rational> row;
    for (int id : pn.action_ids)
      row[game.spec.actions[sigma.owner][pn.rep_state][id]] =
          Rational(1, static_cast<long>(pn.action_ids.size()));
    out.rows[std::move(path)] = std::move(row);
  }
  return out;
}

json strategy_to_json(const BehavioralStrategy& sigma) {
  json rows = json::array();
  for (const auto& [path, row] : sigma.rows) {
    json steps = json::array();
    for (const auto& [a, s] : path) steps.push_back(json::array({a, s}));
    json actions;
    for (const auto& [name, prob] : row) actions[name] = to_frac(prob);
    rows.push_back({{"history", std::move(steps)}, {"actions", std::move(actions)}});
  }
  return json{{"player", sigma.owner + 1}, {"rows", std::move(rows)}};
}

BehavioralStrategy strategy_from_json(const json& doc) {
  try {
    BehavioralStrategy sigma;
    const int player = doc.at("player").get<int>();
    if (player != 1 && player != 2) throw ParseError("strategy player must be 1 or 2");
    sigma.owner = player - 1;
    for (const auto& rj : doc.at("rows")) {
      PrivPath path;
      for (const auto& step : rj.at("history"))
        path.emplace_back(step.at(0).get<std::string>(), step.at(1).get<std::string>());
      std::map<std::string, Rational> row;
      for (const auto& [name, prob] : rj.at("actions").items())
        row[name] = parse_rational(prob.get<std::string>());
      sigma.rows[std::move(path)] = std::move(row);
    }
    return sigma;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad strategy file: ") + e.what());
  }
}

}  // namespace peg
