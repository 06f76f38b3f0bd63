#pragma once

#include <map>
#include <string>
#include <vector>

#include "peg/explicit_game.hpp"
#include "peg/simplex.hpp"
#include "peg/strategy.hpp"

namespace peg {

// Sequence indexing for one player: sequence 0 is the empty sequence; every
// other sequence is a (private node, action) pair.
struct SequenceIndex {
  int player = 0;
  // seqs[k] = (private node id, action id); seqs[0] = (-1, -1).
  std::vector<std::pair<int, int>> seqs;
  // private node id -> id of the sequence leading into it (root -> 0)
  std::vector<int> seq_in;
  // private node id -> its outgoing sequence ids, aligned with action_ids
  std::vector<std::vector<int>> seqs_out;

  int num_seqs() const { return static_cast<int>(seqs.size()); }
};

SequenceIndex build_sequence_index(const ExplicitGame& game, int player);

// Sparse bilinear payoff form: expected payoff = sum over entries of
// coeff * x[seq1] * y[seq2]. Entries accumulate chance-weighted daily
// payoffs over all public nodes.
using PayoffMatrix = std::map<std::pair<int, int>, Rational>;

PayoffMatrix build_payoff_matrix(const ExplicitGame& game, const SequenceIndex& max_index,
                                 const SequenceIndex& min_index);

// Sequence-form weights with flow conservation; owner's optimal plan of a
// solved game. weights are aligned with the owner's SequenceIndex.
struct RealizationPlan {
  int owner = 0;
  std::vector<Rational> weights;
};

// Flow-conservation violations (empty = valid plan).
std::vector<std::string> check_plan(const ExplicitGame& game, const SequenceIndex& index,
                                    const RealizationPlan& plan);

// The sequence-form LP for `owner`: optimum equals the game value over
// behavioral strategies. Variables: the owner's sequence weights first, then
// split (+/-) opponent infoset values.
struct LPInstance {
  int owner = 0;
  LinearProgram lp;
  int num_seq_vars = 0;                // owner sequences
  std::vector<std::string> var_names;  // for the debug dump
};

LPInstance build_sequence_form(const ExplicitGame& game, int owner);

// Kuhn conversions between plans and behavioral strategies.
BehavioralStrategy plan_to_behavioral(const ExplicitGame& game, const SequenceIndex& index,
                                      const RealizationPlan& plan);
RealizationPlan behavioral_to_plan(const ExplicitGame& game, const SequenceIndex& index,
                                   const BehavioralStrategy& sigma);

// JSON view of a plan: weights keyed by (private history, action).
nlohmann::json plan_to_json(const ExplicitGame& game, const SequenceIndex& index,
                            const RealizationPlan& plan);

}  // namespace peg
