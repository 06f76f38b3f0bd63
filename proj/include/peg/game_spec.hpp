#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "peg/rational.hpp"
#include "peg/signal_model.hpp"

namespace peg {

inline constexpr int kMaximizer = 0;
inline constexpr int kMinimizer = 1;

// One entry of Nature's move after a (state, a1, a2) stage: transition plus
// the signal pair. Signals may be correlated with each other and with the
// transition since they live on the same outcome. signal indices are -1 when
// the spec carries a SignalModel instead of embedded signals.
struct NatureOutcome {
  Rational prob;
  int next_state = -1;
  int signal1 = -1;
  int signal2 = -1;

  bool operator==(const NatureOutcome&) const = default;
};

// Compact generator of a cumulative game with incomplete information.
// Two strategic players (Maximizer = player 1, Minimizer = player 2) move
// simultaneously; Nature then draws (next state, signals). Daily payoffs are
// exact rationals attached to (state, a1, a2).
struct GameSpec {
  std::vector<std::string> states;
  int initial_state = 0;
  // actions[player][state] -> action names (canonical order = file order)
  std::array<std::vector<std::vector<std::string>>, 2> actions;
  // transitions[state][a1][a2] -> outcomes; payoffs[state][a1][a2]
  std::vector<std::vector<std::vector<std::vector<NatureOutcome>>>> transitions;
  std::vector<std::vector<std::vector<Rational>>> payoffs;
  // Per-player signal alphabets (sorted, deduplicated at parse time).
  std::array<std::vector<std::string>, 2> signal_names;
  bool nonnegative_declared = false;
  std::optional<Rational> declared_bound;
  std::optional<SignalModel> signal_model;

  bool operator==(const GameSpec&) const = default;

  int num_states() const { return static_cast<int>(states.size()); }
  int state_index(const std::string& name) const;   // -1 if unknown
  int action_index(int player, int state, const std::string& name) const;
  int signal_index(int player, const std::string& name) const;
  const std::string& signal_name(int player, int sig) const;

  bool has_signal_model() const { return signal_model.has_value(); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

// Diagnoses violations of the GameSpec invariants; empty report iff valid.
ValidationReport validate_spec(const GameSpec& spec);

// Throws InvalidSpec listing the violations.
void require_valid(const GameSpec& spec);

struct Classification {
  bool nonnegative = false;
  Rational per_stage_bound;  // max |payoff| over the table
};

Classification classify(const GameSpec& spec);

// State whose payoffs are all zero and whose transitions all self-loop.
bool is_terminal_state(const GameSpec& spec, int state);

// JSON game file format (see README for the reference).
GameSpec parse_game(const nlohmann::json& doc);
GameSpec load_game(const std::string& path);
nlohmann::json render_game(const GameSpec& spec);

// Folds an all-finite-atomic SignalModel into embedded per-outcome signals
// (player-independent product distributions). Identity when there is no
// model; throws UnsupportedSignalModel on countable/density models.
GameSpec expand_finite_model(const GameSpec& spec);

}  // namespace peg
