#include "peg/builders.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "peg/errors.hpp"
#include "peg/eval.hpp"

namespace peg {

void CounterexampleParams::require_valid() const {
  if (!(p > 0 && p < 1)) throw InvalidParams("p must lie in (0,1)");
  if (!(big_a * p > 1)) throw InvalidParams("A must exceed 1/p");
}

GameSpec build_counterexample(const CounterexampleParams& params) {
  params.require_valid();
  GameSpec g;
  g.states = {"draw", "max_turn_b0", "max_turn_b1", "min_turn_b0", "min_turn_b1", "done"};
  g.initial_state = 0;
  g.signal_names[0] = {"(over)", ".", "b=0", "b=1"};
  g.signal_names[1] = {"(over)", "."};

  const int draw = 0, max_b0 = 1, max_b1 = 2, min_b0 = 3, min_b1 = 4, done = 5;
  const int sig_over1 = 0, sig_dot1 = 1, sig_b0 = 2, sig_b1 = 3;
  const int sig_over2 = 0, sig_dot2 = 1;

  g.actions[0] = {{"wait"}, {"continue", "stop"}, {"continue", "stop"},
                  {"wait"}, {"wait"},             {"wait"}};
  g.actions[1] = {{"wait"}, {"wait"}, {"wait"},
                  {"continue", "stop"}, {"continue", "stop"}, {"wait"}};

  auto shape = [&g](auto& table, auto fill) {
    table.resize(g.states.size());
    for (size_t s = 0; s < g.states.size(); ++s) {
      table[s].resize(g.actions[0][s].size());
      for (auto& row : table[s]) row.assign(g.actions[1][s].size(), fill);
    }
  };
  shape(g.transitions, std::vector<NatureOutcome>{});
  shape(g.payoffs, Rational(0));

  g.transitions[draw][0][0] = {
      {1 - params.p, max_b0, sig_b0, sig_dot2},
      {params.p, max_b1, sig_b1, sig_dot2},
  };
  // Maximizer stop opportunities (odd stages).
  for (auto [st, next, stop_pay] : {std::tuple<int, int, Rational>{max_b0, min_b0, Rational(-1)},
                                    {max_b1, min_b1, Rational(1)}}) {
    g.transitions[st][0][0] = {{Rational(1), next, sig_dot1, sig_dot2}};
    g.transitions[st][1][0] = {{Rational(1), done, sig_over1, sig_over2}};
    g.payoffs[st][1][0] = stop_pay;
  }
  // Minimizer stop opportunities (even stages).
  for (auto [st, next, stop_pay] : {std::tuple<int, int, Rational>{min_b0, max_b0, Rational(-1)},
                                    {min_b1, max_b1, params.big_a}}) {
    g.transitions[st][0][0] = {{Rational(1), next, sig_dot1, sig_dot2}};
    g.transitions[st][0][1] = {{Rational(1), done, sig_over1, sig_over2}};
    g.payoffs[st][0][1] = stop_pay;
  }
  g.transitions[done][0][0] = {{Rational(1), done, sig_dot1, sig_dot2}};

  g.nonnegative_declared = false;
  return g;
}

ExplicitGame counterexample_truncation(const CounterexampleParams& params, int stages,
                                       long node_budget) {
  if (stages < 0) throw InvalidParams("stage horizon must be nonnegative");
  TruncationRequest req;
  req.spec = build_counterexample(params);
  req.horizon = stages + 1;  // depth 0 is the Nature draw
  req.node_budget = node_budget;
  return truncate(req);
}

CounterexampleBounds counterexample_bounds(const CounterexampleParams& params) {
  params.require_valid();
  CounterexampleBounds b;
  b.upper = params.p;
  b.gap = (1 - params.p) / params.big_a;
  b.lower = params.p - b.gap;
  return b;
}

namespace {

// Emits one row per reachable private node of `owner` in the truncated
// game, with probabilities given by `pick(state name, depth, b signal)`.
template <typename Pick>
BehavioralStrategy rows_from_tree(const ExplicitGame& game, int owner, Pick pick) {
  BehavioralStrategy sigma;
  sigma.owner = owner;
  const auto& privs = game.privs[owner];
  for (size_t i = 0; i < privs.size(); ++i) {
    const PrivateNode& pn = privs[i];
    if (pn.action_ids.empty()) continue;
    const auto& names = game.spec.actions[owner][pn.rep_state];
    std::map<std::string, Rational> row;
    if (names.size() == 1) {
      row[names[0]] = 1;
    } else {
      row = pick(game.spec.states[pn.rep_state], pn.depth);
    }
    sigma.rows[private_path(game, owner, static_cast<int>(i))] = std::move(row);
  }
  return sigma;
}

}  // namespace

BehavioralStrategy counterexample_never_stop(const CounterexampleParams& params, int stages) {
  const ExplicitGame game = counterexample_truncation(params, stages);
  return rows_from_tree(game, kMinimizer, [](const std::string&, int) {
    return std::map<std::string, Rational>{{"continue", Rational(1)}, {"stop", Rational(0)}};
  });
}

BehavioralStrategy claim2_maximizer_strategy(const CounterexampleParams& params, int stages) {
  params.require_valid();
  if (stages < 1) throw InvalidParams("claim 2 needs at least one stage");
  const ExplicitGame game = counterexample_truncation(params, stages);
  const Rational stop1 = 1 - (1 - params.p) / (params.big_a * params.p);
  return rows_from_tree(game, kMaximizer,
                        [&](const std::string& state, int depth) {
                          std::map<std::string, Rational> row;
                          if (state == "max_turn_b1" && depth == 1) {
                            row["stop"] = stop1;
                            row["continue"] = 1 - stop1;
                          } else {
                            row["continue"] = 1;
                            row["stop"] = 0;
                          }
                          return row;
                        });
}

Claim1Reply claim1_best_reply(const BehavioralStrategy& minimizer, const Rational& epsilon,
                              const CounterexampleParams& params, int working_stages) {
  params.require_valid();
  if (minimizer.owner != kMinimizer) throw StrategyDomainMismatch("expected a Minimizer strategy");
  if (epsilon <= 0) throw InvalidParams("epsilon must be positive");

  // Unconditional stopping probabilities along the Minimizer's live path.
  // His k-th decision sits at stage 2k with private history
  // (wait, .), (continue, .), (wait, .), ... of length 2k - 1. Histories
  // missing from the table read as "continue".
  std::vector<Rational> sigma_i(working_stages + 1, Rational(0));
  Rational survive = 1;
  int support_end = 0;
  PrivPath path{{"wait", "."}};
  for (int stage = 2; stage <= working_stages; stage += 2) {
    auto it = minimizer.rows.find(path);
    Rational stop_prob = 0;
    if (it != minimizer.rows.end()) {
      for (const auto& [name, prob] : it->second) {
        if (name == "stop") {
          stop_prob = prob;
        } else if (name != "continue") {
          throw StrategyDomainMismatch("unexpected action '" + name + "' in Minimizer row");
        }
      }
    }
    if (stop_prob > 0) {
      sigma_i[stage] = survive * stop_prob;
      survive *= 1 - stop_prob;
      support_end = stage;
    }
    path.emplace_back("continue", ".");
    path.emplace_back("wait", ".");
  }

  // Smallest odd N whose tail is below epsilon; the tail beyond the table's
  // support is exactly zero.
  Rational tail = 0;  // sum of sigma_i above the candidate stage
  int chosen = -1;
  for (int n = 1; n <= working_stages; n += 2) {
    Rational tail_after = 0;
    for (int i = n + 1; i <= support_end; ++i) tail_after += sigma_i[i];
    if (tail_after < epsilon) {
      chosen = n;
      tail = tail_after;
      break;
    }
  }
  if (chosen < 0)
    throw TailNotReached("no odd stage within the working horizon has tail mass below epsilon");

  Claim1Reply reply;
  reply.stage = chosen;
  reply.stop_probs.assign(sigma_i.begin() + 1, sigma_i.begin() + support_end + 1);

  const int depth = std::max(chosen, support_end) + 1;
  const ExplicitGame game = counterexample_truncation(params, depth);
  reply.strategy = rows_from_tree(game, kMaximizer,
                                  [&](const std::string& state, int d) {
                                    std::map<std::string, Rational> row;
                                    const bool stop_now = state == "max_turn_b1" && d == chosen;
                                    row["stop"] = stop_now ? 1 : 0;
                                    row["continue"] = stop_now ? 0 : 1;
                                    return row;
                                  });

  // Exact payoff against the completed Minimizer table. Beyond the support
  // and the reply stage nothing ever pays again, so the truncation is exact.
  BehavioralStrategy completed = minimizer;
  completed.rows.clear();
  const auto filled = rows_from_tree(game, kMinimizer, [&](const std::string&, int d) {
    std::map<std::string, Rational> row{{"continue", Rational(1)}, {"stop", Rational(0)}};
    (void)d;
    return row;
  });
  completed.rows = filled.rows;
  for (const auto& [p, row] : minimizer.rows) completed.rows[p] = row;
  reply.guarantee = expected_payoff(game, Profile{reply.strategy, completed});

  if (reply.guarantee < params.p - epsilon)
    throw Error("internal: claim 1 payoff fell below p - epsilon");
  return reply;
}

// ---------------------------------------------------------------------------
// Pursuit games

bool PursuitGraph::adjacent(const std::string& u, const std::string& v) const {
  return edges.count({std::min(u, v), std::max(u, v)}) > 0;
}

bool PursuitGraph::connected() const {
  if (vertices.empty()) return false;
  std::set<std::string> seen{vertices[0]};
  std::vector<std::string> stack{vertices[0]};
  while (!stack.empty()) {
    const std::string u = stack.back();
    stack.pop_back();
    for (const auto& v : vertices)
      if (!seen.count(v) && adjacent(u, v)) {
        seen.insert(v);
        stack.push_back(v);
      }
  }
  return seen.size() == vertices.size();
}

PursuitGraph parse_edge_list(const std::string& text) {
  PursuitGraph g;
  std::set<std::string> verts;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string u, v;
    if (!(row >> u)) continue;
    if (!(row >> v)) {
      verts.insert(u);  // isolated vertex
      continue;
    }
    if (u == v) throw InvalidGraph("self-loop at vertex '" + u + "'");
    verts.insert(u);
    verts.insert(v);
    g.edges.insert({std::min(u, v), std::max(u, v)});
  }
  g.vertices.assign(verts.begin(), verts.end());
  if (g.vertices.empty()) throw InvalidGraph("empty graph");
  return g;
}

PursuitGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidGraph("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

GameSpec build_pursuit(const PursuitParams& params) {
  const PursuitGraph& graph = params.graph;
  if (!graph.connected()) throw InvalidGraph("graph must be connected");
  auto known = [&](const std::string& v) {
    return std::find(graph.vertices.begin(), graph.vertices.end(), v) != graph.vertices.end();
  };
  if (!known(params.pursuer_start) || !known(params.evader_start))
    throw InvalidGraph("start positions must be graph vertices");
  if (graph.vertices.size() > 1 && params.pursuer_start == params.evader_start)
    throw InvalidGraph("start positions must be distinct");

  // Player 1 maximizes: the Pursuer in the kind variant, the Evader in the
  // degree variant (payoff 1 per capture-free stage = time to capture).
  const bool pursuer_first = params.variant == PursuitVariant::kind;

  auto moves = [&graph](const std::string& v) {
    std::vector<std::string> out{"stay"};
    for (const auto& w : graph.vertices)
      if (graph.adjacent(v, w)) out.push_back("go:" + w);
    return out;
  };
  auto destination = [](const std::string& at, const std::string& action) {
    return action == "stay" ? at : action.substr(3);
  };

  GameSpec g;
  std::vector<std::pair<std::string, std::string>> positions;  // (pursuer, evader) per state
  for (const auto& pv : graph.vertices)
    for (const auto& ev : graph.vertices) {
      g.states.push_back("p:" + pv + " e:" + ev);
      positions.emplace_back(pv, ev);
    }
  g.states.push_back("caught");
  const int caught = g.num_states() - 1;
  positions.emplace_back("", "");
  g.initial_state = static_cast<int>(
      std::find(positions.begin(), positions.end(),
                std::make_pair(params.pursuer_start, params.evader_start)) -
      positions.begin());
  g.signal_names[0] = {"cap", "ok"};
  g.signal_names[1] = {"cap", "ok"};
  const int sig_cap = 0, sig_ok = 1;

  auto position = [&](int state, bool of_pursuer) {
    return of_pursuer ? positions[state].first : positions[state].second;
  };
  auto state_of = [&](const std::string& pv, const std::string& ev) {
    return static_cast<int>(std::find(positions.begin(), positions.end(),
                                      std::make_pair(pv, ev)) -
                            positions.begin());
  };

  for (int s = 0; s < g.num_states(); ++s) {
    if (s == caught) {
      g.actions[0].push_back({"stay"});
      g.actions[1].push_back({"stay"});
      continue;
    }
    const std::string pv = position(s, true), ev = position(s, false);
    g.actions[0].push_back(moves(pursuer_first ? pv : ev));
    g.actions[1].push_back(moves(pursuer_first ? ev : pv));
  }

  g.transitions.resize(g.num_states());
  g.payoffs.resize(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) {
    const size_t n1 = g.actions[0][s].size(), n2 = g.actions[1][s].size();
    g.transitions[s].resize(n1);
    g.payoffs[s].resize(n1);
    for (size_t a1 = 0; a1 < n1; ++a1) {
      g.transitions[s][a1].resize(n2);
      g.payoffs[s][a1].assign(n2, Rational(0));
      for (size_t a2 = 0; a2 < n2; ++a2) {
        if (s == caught) {
          g.transitions[s][a1][a2] = {{Rational(1), caught, sig_ok, sig_ok}};
          continue;
        }
        const std::string pv = position(s, true), ev = position(s, false);
        const std::string m1 = destination(pursuer_first ? pv : ev, g.actions[0][s][a1]);
        const std::string m2 = destination(pursuer_first ? ev : pv, g.actions[1][s][a2]);
        const std::string new_p = pursuer_first ? m1 : m2;
        const std::string new_e = pursuer_first ? m2 : m1;
        const bool capture = new_p == new_e;
        if (capture) {
          g.transitions[s][a1][a2] = {{Rational(1), caught, sig_cap, sig_cap}};
          // kind: capture pays the Pursuer once; degree: the capturing stage
          // pays the Evader nothing.
          g.payoffs[s][a1][a2] = params.variant == PursuitVariant::kind ? 1 : 0;
        } else {
          const int next = state_of(new_p, new_e);
          g.transitions[s][a1][a2] = {{Rational(1), next, sig_ok, sig_ok}};
          g.payoffs[s][a1][a2] = params.variant == PursuitVariant::degree ? 1 : 0;
        }
      }
    }
  }
  g.nonnegative_declared = true;
  if (params.variant == PursuitVariant::kind) g.declared_bound = 2;
  return g;
}

}  // namespace peg
