#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "peg/explicit_game.hpp"
#include "peg/rational.hpp"

namespace peg {

// One step of a private history: (own action name, own signal name).
using PrivStep = std::pair<std::string, std::string>;
using PrivPath = std::vector<PrivStep>;

// Behavioral strategy sigma^i: private history -> distribution over the
// actions available there. Rows are keyed by path so the same table can be
// evaluated against any truncation of the same spec.
struct BehavioralStrategy {
  int owner = 0;  // kMaximizer or kMinimizer
  std::map<PrivPath, std::map<std::string, Rational>> rows;

  bool operator==(const BehavioralStrategy&) const = default;
};

struct Profile {
  BehavioralStrategy sigma1;  // Maximizer
  BehavioralStrategy sigma2;  // Minimizer
};

// Private history of a private node, as names.
PrivPath private_path(const ExplicitGame& game, int player, int priv_id);

// Strategy table resolved onto a specific game's private tree:
// probs[priv_id][k] is the probability of action_ids[k].
struct ResolvedStrategy {
  int owner = 0;
  std::vector<std::vector<Rational>> probs;
};

enum class MissingRowPolicy {
  error,    // reachable decision node without a row -> StrategyDomainMismatch
  uniform,  // fill uniform rows everywhere a row is missing
};

// Resolves rows onto the game's private nodes. Unreachable decision nodes
// (zero own-probability prefix) default to uniform under either policy.
ResolvedStrategy resolve_strategy(const ExplicitGame& game, const BehavioralStrategy& sigma,
                                  MissingRowPolicy policy = MissingRowPolicy::error);

// Uniform play at every decision node of the game.
BehavioralStrategy uniform_strategy(const ExplicitGame& game, int owner);

// Copy of `sigma` with explicit uniform rows at every decision node of
// `game` that sigma does not cover (the post-horizon extension).
BehavioralStrategy extend_uniform(const ExplicitGame& game, const BehavioralStrategy& sigma);

nlohmann::json strategy_to_json(const BehavioralStrategy& sigma);
BehavioralStrategy strategy_from_json(const nlohmann::json& doc);

}  // namespace peg
