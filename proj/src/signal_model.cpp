#include "peg/signal_model.hpp"

namespace peg {

Rational SignalDistribution::enumerated_mass() const {
  Rational total = 0;
  if (kind == Kind::step_density) {
    for (const auto& p : pieces) total += p.height * (p.to - p.from);
  } else {
    for (const auto& [_, prob] : atoms) total += prob;
  }
  return total;
}

const SignalClass* SignalModel::find(int state, int a1, int a2, int outcome) const {
  const SignalClass* fallback = nullptr;
  for (const auto& c : classes) {
    if (c.state != state || c.a1 != a1 || c.a2 != a2) continue;
    if (c.outcome == outcome) return &c;
    if (c.outcome == -1) fallback = &c;
  }
  return fallback;
}

bool SignalModel::all_finite_atomic() const {
  for (const auto& c : classes) {
    for (const auto& d : c.dist) {
      if (d.kind != SignalDistribution::Kind::finite_atoms) return false;
    }
  }
  return true;
}

}  // namespace peg
