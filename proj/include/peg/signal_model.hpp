#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "peg/rational.hpp"

namespace peg {

// A constant piece of a step density on [0,1], w.r.t. Lebesgue measure.
struct StepPiece {
  Rational from;
  Rational to;
  Rational height;

  bool operator==(const StepPiece&) const = default;
};

// One player's signal distribution for a history class. Three supported
// representations: finite atom lists, enumerated countable lists with a
// declared summable tail bound, and step densities on [0,1].
struct SignalDistribution {
  enum class Kind { finite_atoms, countable_atoms, step_density };

  Kind kind = Kind::finite_atoms;
  std::vector<std::pair<std::string, Rational>> atoms;  // atom kinds
  Rational tail_bound = 0;                              // countable only
  std::vector<StepPiece> pieces;                        // step_density only

  bool operator==(const SignalDistribution&) const = default;

  bool atomic() const { return kind != Kind::step_density; }
  // Total enumerated mass (atoms) or integral of the density.
  Rational enumerated_mass() const;
};

// History class: signals after a stage played as (state, a1, a2) landing on
// nature outcome `outcome`. outcome = -1 means the class covers every
// outcome of that cell.
struct SignalClass {
  int state = -1;
  int a1 = -1;
  int a2 = -1;
  int outcome = -1;
  std::array<SignalDistribution, 2> dist;

  bool operator==(const SignalClass&) const = default;
};

struct SignalModel {
  std::vector<SignalClass> classes;

  bool operator==(const SignalModel&) const = default;

  // Most specific class for (state, a1, a2, outcome); nullptr if none.
  const SignalClass* find(int state, int a1, int a2, int outcome) const;

  bool all_finite_atomic() const;
};

}  // namespace peg
