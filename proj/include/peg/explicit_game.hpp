#pragma once

#include <array>
#include <string>
#include <vector>

#include "peg/game_spec.hpp"
#include "peg/rational.hpp"

namespace peg {

// Node of the unfolded public tree G_n. A public history is the sequence of
// (a1, a2, nature outcome) triples along the path from the root.
struct PublicNode {
  int parent = -1;
  int depth = 0;
  int state = -1;
  // Edge into this node; -1 at the root.
  int in_a1 = -1;
  int in_a2 = -1;
  int in_outcome = -1;
  Rational chance = 1;      // product of nature probabilities along the path
  Rational in_payoff = 0;   // daily payoff f paid at the parent's stage
  Rational payoff_sum = 0;  // cumulative payoff along the path into this node
  std::array<int, 2> priv{0, 0};  // private node of each player here
  std::vector<int> children;      // lexicographic in (a1, a2, outcome)
};

// Node of a player's private-history tree: the quotient of the public tree
// under that player's (own action, own signal) observation map.
struct PrivateNode {
  int parent = -1;
  int depth = 0;
  int in_action = -1;
  int in_signal = -1;
  int rep_state = -1;        // representative member state; -1 if all members are leaves
  std::vector<int> action_ids;  // available actions (indices into the rep state's list)
  std::vector<int> members;     // public node ids, in creation order
  // ((action, signal) -> child private node), sorted by key
  std::vector<std::pair<std::pair<int, int>, int>> children;

  int num_actions() const { return static_cast<int>(action_ids.size()); }
  int child(int action, int signal) const;
};

// Fully unfolded truncation G_n (or a leavable L_n).
struct ExplicitGame {
  GameSpec spec;
  int horizon = 0;
  bool absorb_terminal = true;
  int leavable_forced_depth = -1;        // depth at which the Maximizer must stop; -1 for G_n
  std::string leavable_stop_action;      // present in every live state of a leavable game

  std::vector<PublicNode> nodes;  // nodes[0] = root, ids in BFS order
  std::array<std::vector<PrivateNode>, 2> privs;

  bool is_leaf(int node) const { return nodes[node].children.empty(); }
  // Actions available at a state for a player, honoring a forced stop depth.
  std::vector<int> available_actions(int player, int state, int depth) const;
  const std::string& action_name(int player, int priv_id, int action_id) const;
  int num_public_at_depth(int depth) const;
};

struct TruncationRequest {
  GameSpec spec;
  int horizon = 0;
  long node_budget = 1'000'000;
  // Terminal (zero-payoff, self-looping) states become leaves. Turning this
  // off reproduces the raw product unfolding.
  bool absorb_terminal = true;
  // Internal to the leavable module.
  int leavable_forced_depth = -1;
  std::string leavable_stop_action;
};

// Builds G_n: the public tree to depth `horizon` with both players' private
// trees. Zero-probability branches are pruned. Throws BudgetExceeded when
// the tree would outgrow the node budget, InvalidSpec on invalid input.
ExplicitGame truncate(const TruncationRequest& req);

// rho_k(h): cumulative payoff along the path into `node`.
Rational cumulative_payoff(const ExplicitGame& game, int node);

// One step of a public history as written in tree dumps and the CLI.
struct PublicStep {
  std::string a1;
  std::string a2;
  int outcome = 0;
};

// Resolves a public history to its node id; throws UnknownHistory.
int find_public_node(const ExplicitGame& game, const std::vector<PublicStep>& path);

// Debug dump: one node per line (id, parent, depth, labels, payoff, prob).
std::string dump_tree(const ExplicitGame& game);

}  // namespace peg
