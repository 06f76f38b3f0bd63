#include "peg/discretize.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "peg/errors.hpp"

namespace peg {

using nlohmann::json;

namespace {

const SignalClass& class_for(const GameSpec& spec, const ClassKey& key) {
  const SignalClass* c = spec.signal_model->find(key.state, key.a1, key.a2, key.outcome);
  if (!c) throw InvalidSpec("signal model does not cover a reachable cell");
  return *c;
}

bool stage_is_atomic(const GameSpec& spec, const StageClasses& stage) {
  bool any_atomic = false, any_density = false;
  for (const auto& [key, _] : stage.counts) {
    for (int p = 0; p < 2; ++p) {
      if (class_for(spec, key).dist[p].atomic()) {
        any_atomic = true;
      } else {
        any_density = true;
      }
    }
  }
  if (any_atomic && any_density)
    throw IncompatibleBaseMeasures("stage " + std::to_string(stage.stage) +
                                   " mixes atomic and density signal models");
  return any_atomic;
}

// Sorted piece boundaries covering [0,1] for a set of step densities.
std::vector<Rational> common_breakpoints(const std::vector<const SignalDistribution*>& dists) {
  std::set<Rational> points{Rational(0), Rational(1)};
  for (const auto* d : dists)
    for (const auto& piece : d->pieces) {
      points.insert(piece.from);
      points.insert(piece.to);
    }
  return {points.begin(), points.end()};
}

Rational height_at(const SignalDistribution& d, const Rational& lo, const Rational& hi) {
  for (const auto& piece : d.pieces)
    if (piece.from <= lo && hi <= piece.to) return piece.height;
  return 0;
}

}  // namespace

std::vector<StageClasses> enumerate_stage_classes(const GameSpec& spec, int stages) {
  require_valid(spec);
  std::vector<StageClasses> out;
  // arrivals[s]: number of length-d histories currently at state s.
  std::map<int, BigInt> arrivals{{spec.initial_state, BigInt(1)}};
  for (int k = 1; k <= stages; ++k) {
    StageClasses stage;
    stage.stage = k;
    stage.total_histories = 0;
    std::map<int, BigInt> next;
    for (const auto& [s, count] : arrivals) {
      for (int a1 = 0; a1 < static_cast<int>(spec.actions[0][s].size()); ++a1)
        for (int a2 = 0; a2 < static_cast<int>(spec.actions[1][s].size()); ++a2) {
          const auto& outcomes = spec.transitions[s][a1][a2];
          for (int oi = 0; oi < static_cast<int>(outcomes.size()); ++oi) {
            if (outcomes[oi].prob == 0) continue;
            stage.counts[{s, a1, a2, oi}] += count;
            stage.total_histories += count;
            next[outcomes[oi].next_state] += count;
          }
        }
    }
    arrivals = std::move(next);
    out.push_back(std::move(stage));
  }
  return out;
}

SignalDistribution mean_signal_distribution(const GameSpec& spec, int stage, int player) {
  if (!spec.has_signal_model())
    throw UnsupportedSignalModel("mean distribution needs a signal model");
  if (stage < 1) throw InvalidParams("stages are 1-based");
  const auto stages = enumerate_stage_classes(spec, stage);
  const StageClasses& sc = stages.back();
  if (sc.counts.empty()) throw InvalidParams("no realized histories at stage " +
                                             std::to_string(stage));
  const bool atomic = stage_is_atomic(spec, sc);
  const Rational total(sc.total_histories);

  SignalDistribution mean;
  if (atomic) {
    std::map<std::string, Rational> mass;
    Rational tail = 0;
    bool countable = false;
    for (const auto& [key, count] : sc.counts) {
      const auto& d = class_for(spec, key).dist[player];
      const Rational weight = Rational(count) / total;
      for (const auto& [atom, prob] : d.atoms) mass[atom] += weight * prob;
      if (d.kind == SignalDistribution::Kind::countable_atoms) {
        countable = true;
        tail += weight * d.tail_bound;
      }
    }
    mean.kind = countable ? SignalDistribution::Kind::countable_atoms
                          : SignalDistribution::Kind::finite_atoms;
    mean.tail_bound = tail;
    for (const auto& [atom, prob] : mass) mean.atoms.emplace_back(atom, prob);
  } else {
    std::vector<const SignalDistribution*> dists;
    for (const auto& [key, _] : sc.counts) dists.push_back(&class_for(spec, key).dist[player]);
    const auto points = common_breakpoints(dists);
    mean.kind = SignalDistribution::Kind::step_density;
    for (size_t i = 0; i + 1 < points.size(); ++i) {
      Rational height = 0;
      size_t di = 0;
      for (const auto& [key, count] : sc.counts) {
        height += Rational(count) / total * height_at(*dists[di], points[i], points[i + 1]);
        ++di;
      }
      if (points[i + 1] > points[i])
        mean.pieces.push_back({points[i], points[i + 1], height});
    }
  }
  return mean;
}

bool DiscretizationCertificate::sound() const {
  if (passthrough) return total_tv == 0;
  Rational sum = 0;
  for (const auto& s : per_stage) {
    Rational worst = 0;
    for (const auto& c : s.classes) {
      if (c.tv[0] + c.tv[1] > worst) worst = c.tv[0] + c.tv[1];
    }
    if (worst != s.consumed || s.consumed > s.grid) return false;
    sum += s.consumed;
  }
  return sum == total_tv && total_tv <= epsilon_tv &&
         payoff_error_bound == payoff_scale * total_tv && payoff_error_bound <= epsilon;
}

namespace {

// Per-player discretization of one stage: finite letter set plus each
// class's letter distribution and its exact TV from the original.
struct StageLetters {
  std::vector<std::string> letters;
  // per class: (letter index -> probability), and the TV distance
  std::map<ClassKey, std::vector<std::pair<int, Rational>>> emission;
  std::map<ClassKey, Rational> tv;
};

StageLetters discretize_atomic_stage(const GameSpec& spec, const StageClasses& sc, int player,
                                     const Rational& half_grid, int stage,
                                     const DiscretizeConfig& config) {
  StageLetters out;
  std::map<std::string, int> letter_ids;
  auto letter = [&](const std::string& name) {
    auto [it, fresh] = letter_ids.emplace(name, static_cast<int>(out.letters.size()));
    if (fresh) out.letters.push_back(name);
    return it->second;
  };
  const std::string tail_name = "(tail@" + std::to_string(stage) + ")";

  for (const auto& [key, _] : sc.counts) {
    const auto& d = class_for(spec, key).dist[player];
    auto& emit = out.emission[key];
    if (d.kind == SignalDistribution::Kind::finite_atoms) {
      for (const auto& [atom, prob] : d.atoms)
        if (prob > 0) emit.emplace_back(letter(atom), prob);
      out.tv[key] = 0;
      continue;
    }
    // Countable: keep the shortest prefix whose leftover mass fits the
    // per-player stage budget; everything else pools into one tail letter.
    Rational kept = 0;
    size_t cut = 0;
    while (cut < d.atoms.size() && 1 - kept > half_grid) kept += d.atoms[cut++].second;
    if (1 - kept > half_grid)
      throw AlphabetBudgetExceeded(
          "stage " + std::to_string(stage) +
          ": enumerated atoms cannot reach the stage budget; raise epsilon or extend the "
          "enumeration");
    for (size_t i = 0; i < cut; ++i)
      if (d.atoms[i].second > 0) emit.emplace_back(letter(d.atoms[i].first), d.atoms[i].second);
    const Rational leftover = 1 - kept;
    if (leftover > 0) emit.emplace_back(letter(tail_name), leftover);
    out.tv[key] = leftover;  // coupling bound: distributions agree off the pooled set
  }
  if (static_cast<int>(out.letters.size()) > config.alphabet_budget)
    throw AlphabetBudgetExceeded("stage " + std::to_string(stage) +
                                 " alphabet exceeds the budget");
  return out;
}

StageLetters discretize_density_stage(const GameSpec& spec, const StageClasses& sc, int player,
                                      const Rational& grid, int stage,
                                      const DiscretizeConfig& config) {
  StageLetters out;
  const Rational total(sc.total_histories);

  std::vector<ClassKey> keys;
  std::vector<const SignalDistribution*> dists;
  for (const auto& [key, _] : sc.counts) {
    keys.push_back(key);
    dists.push_back(&class_for(spec, key).dist[player]);
  }
  const auto points = common_breakpoints(dists);

  // Mean density and per-class densities w.r.t. the mean, per piece.
  struct Piece {
    Rational len;
    Rational mean_height;             // dp_k / dLebesgue
    std::vector<Rational> density;    // f_h = g_h / mean, per class
    std::vector<Rational> rounded;    // floor(f_h / grid) * grid
    int letter = -1;
  };
  std::vector<Piece> pieces;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    Piece piece;
    piece.len = points[i + 1] - points[i];
    if (piece.len == 0) continue;
    piece.mean_height = 0;
    std::vector<Rational> heights(keys.size());
    for (size_t c = 0; c < keys.size(); ++c) {
      heights[c] = height_at(*dists[c], points[i], points[i + 1]);
      piece.mean_height += Rational(sc.counts.at(keys[c])) / total * heights[c];
    }
    if (piece.mean_height == 0) continue;  // no class puts mass here
    piece.density.resize(keys.size());
    piece.rounded.resize(keys.size());
    for (size_t c = 0; c < keys.size(); ++c) {
      piece.density[c] = heights[c] / piece.mean_height;
      piece.rounded[c] = floor_to_multiple(piece.density[c], grid);
    }
    pieces.push_back(std::move(piece));
  }

  // A letter is one realized vector of rounded densities.
  std::map<std::vector<Rational>, int> letter_ids;
  for (auto& piece : pieces) {
    auto [it, fresh] = letter_ids.emplace(piece.rounded, static_cast<int>(out.letters.size()));
    if (fresh)
      out.letters.push_back("w" + std::to_string(stage) + "." +
                            std::to_string(out.letters.size()));
    piece.letter = it->second;
  }
  if (static_cast<int>(out.letters.size()) > config.alphabet_budget)
    throw AlphabetBudgetExceeded("stage " + std::to_string(stage) +
                                 " alphabet exceeds the budget");

  // Per-class emission probabilities and exact TV against the re-projected
  // density f'' (f averaged over each letter's region w.r.t. the mean).
  const int n_letters = static_cast<int>(out.letters.size());
  std::vector<Rational> region_mean_mass(n_letters, Rational(0));
  for (const auto& piece : pieces) region_mean_mass[piece.letter] += piece.mean_height * piece.len;

  for (size_t c = 0; c < keys.size(); ++c) {
    std::vector<Rational> mass(n_letters, Rational(0));
    for (const auto& piece : pieces)
      mass[piece.letter] += piece.density[c] * piece.mean_height * piece.len;
    auto& emit = out.emission[keys[c]];
    for (int l = 0; l < n_letters; ++l)
      if (mass[l] > 0) emit.emplace_back(l, mass[l]);

    Rational l1 = 0;
    for (const auto& piece : pieces) {
      const Rational f2 = mass[piece.letter] / region_mean_mass[piece.letter];
      const Rational diff = piece.density[c] >= f2 ? piece.density[c] - f2 : f2 - piece.density[c];
      l1 += diff * piece.mean_height * piece.len;
    }
    out.tv[keys[c]] = l1 / 2;
  }
  return out;
}

std::string stage_state_name(const std::string& base, int layer) {
  return base + "@" + std::to_string(layer);
}

}  // namespace

DiscretizationResult approximate_signals(const GameSpec& spec, const Rational& epsilon,
                                         int stages, const DiscretizeConfig& config) {
  require_valid(spec);
  if (epsilon <= 0) throw InvalidParams("epsilon must be positive");
  if (stages < 1) throw InvalidParams("at least one stage required");

  DiscretizationResult result;
  result.certificate.epsilon = epsilon;
  result.certificate.stages = stages;

  if (!spec.has_signal_model() || spec.signal_model->all_finite_atomic()) {
    result.game = spec;
    result.certificate.passthrough = true;
    result.certificate.payoff_scale = 1;
    result.certificate.epsilon_tv = epsilon;
    result.certificate.total_tv = 0;
    result.certificate.payoff_error_bound = 0;
    return result;
  }

  if (!spec.declared_bound)
    throw InvalidSpec("discretization needs a declared payoff bound for the Lemma's "
                      "normalization; set flags.bound");
  const Classification cls = classify(spec);
  // osc(rho) <= B for nonnegative games, 2B in general.
  result.certificate.payoff_scale = cls.nonnegative ? *spec.declared_bound
                                                    : 2 * *spec.declared_bound;
  result.certificate.epsilon_tv = epsilon / result.certificate.payoff_scale;

  const auto stage_classes = enumerate_stage_classes(spec, stages);

  // Stage letter tables, then the stage-unrolled generator.
  std::vector<std::array<StageLetters, 2>> letters(stages);
  Rational grid = result.certificate.epsilon_tv;
  result.certificate.total_tv = 0;
  for (int k = 1; k <= stages; ++k) {
    grid /= 2;  // epsilon_k = epsilon_tv / 2^k
    const StageClasses& sc = stage_classes[k - 1];
    const bool atomic = stage_is_atomic(spec, sc);
    StageCertificate stage_cert;
    stage_cert.stage = k;
    stage_cert.grid = grid;
    for (int p = 0; p < 2; ++p) {
      letters[k - 1][p] = atomic
                              ? discretize_atomic_stage(spec, sc, p, grid / 2, k, config)
                              : discretize_density_stage(spec, sc, p, grid, k, config);
      stage_cert.alphabet_sizes[p] = static_cast<int>(letters[k - 1][p].letters.size());
    }
    stage_cert.consumed = 0;
    for (const auto& [key, _] : sc.counts) {
      ClassTV ctv;
      ctv.key = key;
      for (int p = 0; p < 2; ++p) ctv.tv[p] = letters[k - 1][p].tv.at(key);
      if (ctv.tv[0] + ctv.tv[1] > stage_cert.consumed)
        stage_cert.consumed = ctv.tv[0] + ctv.tv[1];
      stage_cert.classes.push_back(std::move(ctv));
    }
    if (stage_cert.consumed > grid)
      throw Error("internal: stage consumption exceeds the Lemma's grid bound");
    result.certificate.total_tv += stage_cert.consumed;
    result.certificate.per_stage.push_back(std::move(stage_cert));
  }
  result.certificate.payoff_error_bound =
      result.certificate.payoff_scale * result.certificate.total_tv;

  // Assemble the stage-unrolled finite-signal generator. Layer d plays
  // stage d+1; layer `stages` repeats with pooled signals.
  GameSpec out;
  const std::string deep = "(deep)";
  for (int d = 0; d <= stages; ++d)
    for (const auto& s : spec.states) out.states.push_back(stage_state_name(s, d));
  out.initial_state = spec.initial_state;  // layer 0 block comes first
  out.nonnegative_declared = spec.nonnegative_declared;
  out.declared_bound = spec.declared_bound;

  std::array<std::set<std::string>, 2> alphabet{std::set<std::string>{deep},
                                                std::set<std::string>{deep}};
  for (int k = 0; k < stages; ++k)
    for (int p = 0; p < 2; ++p)
      alphabet[p].insert(letters[k][p].letters.begin(), letters[k][p].letters.end());
  for (int p = 0; p < 2; ++p) out.signal_names[p].assign(alphabet[p].begin(), alphabet[p].end());

  const int ns = spec.num_states();
  for (int d = 0; d <= stages; ++d) {
    for (int s = 0; s < ns; ++s) {
      out.actions[0].push_back(spec.actions[0][s]);
      out.actions[1].push_back(spec.actions[1][s]);
      const int n1 = static_cast<int>(spec.actions[0][s].size());
      const int n2 = static_cast<int>(spec.actions[1][s].size());
      out.transitions.emplace_back(n1, std::vector<std::vector<NatureOutcome>>(n2));
      out.payoffs.emplace_back(n1, std::vector<Rational>(n2, Rational(0)));
      for (int a1 = 0; a1 < n1; ++a1)
        for (int a2 = 0; a2 < n2; ++a2) {
          out.payoffs.back()[a1][a2] = spec.payoffs[s][a1][a2];
          auto& cell = out.transitions.back()[a1][a2];
          const auto& outcomes = spec.transitions[s][a1][a2];
          const int next_layer = std::min(d + 1, stages);
          for (int oi = 0; oi < static_cast<int>(outcomes.size()); ++oi) {
            if (outcomes[oi].prob == 0) continue;
            const int next = next_layer * ns + outcomes[oi].next_state;
            if (d >= stages) {
              cell.push_back({outcomes[oi].prob, next, out.signal_index(0, deep),
                              out.signal_index(1, deep)});
              continue;
            }
            const ClassKey key{s, a1, a2, oi};
            const auto& em1 = letters[d][0].emission.at(key);
            const auto& em2 = letters[d][1].emission.at(key);
            for (const auto& [l1, q1] : em1)
              for (const auto& [l2, q2] : em2) {
                NatureOutcome o;
                o.prob = outcomes[oi].prob * q1 * q2;
                o.next_state = next;
                o.signal1 = out.signal_index(0, letters[d][0].letters[l1]);
                o.signal2 = out.signal_index(1, letters[d][1].letters[l2]);
                if (o.prob > 0) cell.push_back(std::move(o));
              }
          }
        }
    }
  }
  result.game = std::move(out);
  require_valid(result.game);
  return result;
}

GameSpec refine_exact(const GameSpec& spec) {
  require_valid(spec);
  if (!spec.has_signal_model()) return spec;
  if (spec.signal_model->all_finite_atomic()) return expand_finite_model(spec);

  for (const auto& c : spec.signal_model->classes)
    for (const auto& d : c.dist)
      if (d.kind == SignalDistribution::Kind::countable_atoms)
        throw UnsupportedSignalModel("countable models have no exact finite refinement");

  // Global common refinement per player; the piece index is a sufficient
  // statistic because every class density is constant within a piece.
  GameSpec out = spec;
  out.signal_model.reset();
  std::array<std::vector<Rational>, 2> points;
  for (int p = 0; p < 2; ++p) {
    std::vector<const SignalDistribution*> dists;
    for (const auto& c : spec.signal_model->classes) dists.push_back(&c.dist[p]);
    points[p] = common_breakpoints(dists);
    out.signal_names[p].clear();
    for (size_t i = 0; i + 1 < points[p].size(); ++i) {
      // zero-padded so lexicographic alphabet order matches piece order
      std::string idx = std::to_string(i);
      out.signal_names[p].push_back("piece" + std::string(4 - idx.size(), '0') + idx);
    }
  }

  for (int s = 0; s < spec.num_states(); ++s)
    for (size_t a1 = 0; a1 < spec.actions[0][s].size(); ++a1)
      for (size_t a2 = 0; a2 < spec.actions[1][s].size(); ++a2) {
        const auto& outcomes = spec.transitions[s][a1][a2];
        std::vector<NatureOutcome> expanded;
        for (size_t oi = 0; oi < outcomes.size(); ++oi) {
          if (outcomes[oi].prob == 0) continue;
          const SignalClass& cls = class_for(
              spec, {s, static_cast<int>(a1), static_cast<int>(a2), static_cast<int>(oi)});
          for (size_t i = 0; i + 1 < points[0].size(); ++i) {
            const Rational q1 =
                height_at(cls.dist[0], points[0][i], points[0][i + 1]) *
                (points[0][i + 1] - points[0][i]);
            if (q1 == 0) continue;
            for (size_t j = 0; j + 1 < points[1].size(); ++j) {
              const Rational q2 =
                  height_at(cls.dist[1], points[1][j], points[1][j + 1]) *
                  (points[1][j + 1] - points[1][j]);
              if (q2 == 0) continue;
              NatureOutcome o;
              o.prob = outcomes[oi].prob * q1 * q2;
              o.next_state = outcomes[oi].next_state;
              o.signal1 = static_cast<int>(i);
              o.signal2 = static_cast<int>(j);
              expanded.push_back(std::move(o));
            }
          }
        }
        out.transitions[s][a1][a2] = std::move(expanded);
      }
  require_valid(out);
  return out;
}

json certificate_to_json(const DiscretizationCertificate& cert, const GameSpec& spec) {
  json doc;
  doc["schema"] = "peg.discretization/1";
  doc["epsilon"] = to_frac(cert.epsilon);
  doc["passthrough"] = cert.passthrough;
  doc["payoff_scale"] = to_frac(cert.payoff_scale);
  doc["epsilon_tv"] = to_frac(cert.epsilon_tv);
  doc["stages"] = cert.stages;
  doc["total_tv"] = to_frac(cert.total_tv);
  doc["payoff_error_bound"] = to_frac(cert.payoff_error_bound);
  json per_stage = json::array();
  for (const auto& s : cert.per_stage) {
    json sj;
    sj["stage"] = s.stage;
    sj["grid"] = to_frac(s.grid);
    sj["consumed"] = to_frac(s.consumed);
    sj["alphabet_sizes"] = {s.alphabet_sizes[0], s.alphabet_sizes[1]};
    json classes = json::array();
    for (const auto& c : s.classes) {
      classes.push_back({{"state", spec.states[c.key.state]},
                         {"a1", spec.actions[0][c.key.state][c.key.a1]},
                         {"a2", spec.actions[1][c.key.state][c.key.a2]},
                         {"outcome", c.key.outcome},
                         {"tv1", to_frac(c.tv[0])},
                         {"tv2", to_frac(c.tv[1])}});
    }
    sj["classes"] = std::move(classes);
    per_stage.push_back(std::move(sj));
  }
  doc["per_stage"] = std::move(per_stage);
  return doc;
}

}  // namespace peg
