#include "peg/leavable.hpp"

#include <algorithm>

#include "peg/errors.hpp"

namespace peg {

namespace {

std::string fresh_name(std::string base, const std::vector<std::string>& taken) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
  return base;
}

}  // namespace

StopAugmentedSpec make_stop_augmented(const GameSpec& raw) {
  const GameSpec spec = expand_finite_model(raw);
  require_valid(spec);

  StopAugmentedSpec out;
  std::vector<std::string> action_names;
  for (const auto& per_state : spec.actions[0])
    action_names.insert(action_names.end(), per_state.begin(), per_state.end());
  out.stop_action = fresh_name("stop", action_names);
  out.absorbing_state = fresh_name("stopped", spec.states);

  GameSpec g = spec;
  const int stopped = g.num_states();
  g.states.push_back(out.absorbing_state);

  // Termination is publicly observed.
  auto ensure_signal = [&g](int player, const std::string& name) {
    auto& list = g.signal_names[player];
    auto it = std::lower_bound(list.begin(), list.end(), name);
    if (it == list.end() || *it != name) list.insert(it, name);
  };
  const std::string end_signal = "(stopped)";
  ensure_signal(0, end_signal);
  ensure_signal(1, end_signal);
  // Alphabets shifted: re-resolve embedded signal ids against the new lists.
  for (auto& per_state : g.transitions)
    for (auto& per_a1 : per_state)
      for (auto& per_a2 : per_a1)
        for (auto& o : per_a2) {
          o.signal1 = g.signal_index(0, spec.signal_name(0, o.signal1));
          o.signal2 = g.signal_index(1, spec.signal_name(1, o.signal2));
        }

  const int end1 = g.signal_index(0, end_signal);
  const int end2 = g.signal_index(1, end_signal);

  // stop rows for every pre-existing state; the absorbing state itself.
  for (int s = 0; s < stopped; ++s) {
    g.actions[0][s].push_back(out.stop_action);
    const size_t n2 = g.actions[1][s].size();
    g.transitions[s].emplace_back(n2, std::vector<NatureOutcome>{
        NatureOutcome{Rational(1), stopped, end1, end2}});
    g.payoffs[s].emplace_back(n2, Rational(0));
  }
  g.actions[0].push_back({"(idle)"});
  g.actions[1].push_back({"(idle)"});
  g.transitions.push_back({{{NatureOutcome{Rational(1), stopped, end1, end2}}}});
  g.payoffs.push_back({{Rational(0)}});

  out.augmented = std::move(g);
  return out;
}

ExplicitGame build_leavable_truncation(const GameSpec& spec, int n, long node_budget,
                                       bool absorb_terminal) {
  if (n < 0) throw InvalidSpec("leavable horizon must be nonnegative");
  StopAugmentedSpec aug = make_stop_augmented(spec);

  TruncationRequest req;
  req.spec = std::move(aug.augmented);
  req.horizon = n + 1;  // depth n holds the forced stop stage
  req.node_budget = node_budget;
  req.absorb_terminal = absorb_terminal;
  req.leavable_forced_depth = n;
  req.leavable_stop_action = aug.stop_action;
  return truncate(req);
}

}  // namespace peg
