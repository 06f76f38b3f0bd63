#pragma once

#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "peg/game_spec.hpp"

namespace peg {

// History class of a stage: the (state, a1, a2, outcome) cell whose signal
// distribution governs histories ending with it.
struct ClassKey {
  int state = -1;
  int a1 = -1;
  int a2 = -1;
  int outcome = -1;

  auto operator<=>(const ClassKey&) const = default;
};

// Reachable history classes at one stage (stage k covers histories of
// length k, k >= 1), with the number of histories falling in each class.
struct StageClasses {
  int stage = 0;
  BigInt total_histories;  // |H_k|
  std::map<ClassKey, BigInt> counts;
};

std::vector<StageClasses> enumerate_stage_classes(const GameSpec& spec, int stages);

// Mean distribution p_k^i = sum_{h in H_k} p_h^i / |H_k| over the realized
// stage-k history classes. Throws IncompatibleBaseMeasures when atomic and
// density classes mix at the stage.
SignalDistribution mean_signal_distribution(const GameSpec& spec, int stage, int player);

struct ClassTV {
  ClassKey key;
  std::array<Rational, 2> tv;  // exact per-player TV(p_h, p''_h) (atomic: bound)
};

struct StageCertificate {
  int stage = 0;
  Rational grid;                 // epsilon_k = epsilon_tv / 2^k
  std::vector<ClassTV> classes;  // exact per-class distances
  Rational consumed;             // max over classes of tv1 + tv2, <= grid
  std::array<int, 2> alphabet_sizes{0, 0};
};

struct DiscretizationCertificate {
  Rational epsilon;       // requested payoff-error bound
  Rational payoff_scale;  // osc(rho) bound used to convert TV into payoff error
  Rational epsilon_tv;    // epsilon / payoff_scale
  bool passthrough = false;
  int stages = 0;
  std::vector<StageCertificate> per_stage;
  Rational total_tv;            // sum of per-stage consumption, <= epsilon_tv
  Rational payoff_error_bound;  // payoff_scale * total_tv, < epsilon

  bool sound() const;
};

struct DiscretizeConfig {
  int alphabet_budget = 4096;  // realized letters per stage per player
};

struct DiscretizationResult {
  GameSpec game;
  DiscretizationCertificate certificate;
};

// The Lemma's construction: per stage k, round each class's density w.r.t.
// the stage mean down to the grid epsilon_tv / 2^k; players observe the
// vector of rounded values. Countable atomic models truncate to a pooled
// tail letter within the stage budget instead. The output generator is
// stage-unrolled through `stages`; beyond it signals pool into one letter,
// so the certificate covers solve horizons up to `stages`. Specs whose
// signals are already finite pass through unchanged with zero consumption.
DiscretizationResult approximate_signals(const GameSpec& spec, const Rational& epsilon,
                                         int stages, const DiscretizeConfig& config = {});

// Exact finite refinement: replaces step densities by the index of the
// piece of the common refinement the sample fell in (a sufficient statistic,
// so values are preserved exactly at every horizon). Finite atomic models
// expand in place; countable models are not exactly refinable.
GameSpec refine_exact(const GameSpec& spec);

nlohmann::json certificate_to_json(const DiscretizationCertificate& cert,
                                   const GameSpec& spec);

}  // namespace peg
