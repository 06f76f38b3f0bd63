#include "peg/uniform_value.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "peg/errors.hpp"
#include "peg/leavable.hpp"

namespace peg {

using nlohmann::json;

ExplicitGame report_truncation(const ValueReport& report, int horizon) {
  if (report.config.leavable)
    return build_leavable_truncation(report.spec, horizon, report.config.node_budget,
                                     report.config.absorb_terminal);
  TruncationRequest req;
  req.spec = report.spec;
  req.horizon = horizon;
  req.node_budget = report.config.node_budget;
  req.absorb_terminal = report.config.absorb_terminal;
  return truncate(req);
}

ValueReport sweep(const GameSpec& spec, const SweepConfig& config) {
  require_valid(spec);
  ValueReport report;
  report.spec = spec;
  report.config = config;
  const Classification cls = classify(spec);
  report.nonnegative = cls.nonnegative;
  report.bound = spec.declared_bound;

  std::optional<SolveResult> last;
  int consecutive_small = 0;
  for (int n = 0; n <= config.max_horizon; ++n) {
    const ExplicitGame game = report_truncation(report, n);
    SolveResult solved = solve_zero_sum(game, config.solver);
    if (!report.values.empty() && report.nonnegative &&
        solved.value < report.values.back()) {
      throw NonMonotoneValues("v_" + std::to_string(n) + " = " + to_frac(solved.value) +
                              " < v_" + std::to_string(n - 1) + " = " +
                              to_frac(report.values.back()));
    }
    if (report.bound && solved.value >= *report.bound) {
      throw InvalidSpec("v_" + std::to_string(n) + " = " + to_frac(solved.value) +
                        " reaches the declared bound " + to_frac(*report.bound));
    }
    if (!report.values.empty()) {
      report.last_gap = solved.value - report.values.back();
      if (config.plateau_epsilon > 0 && report.last_gap < config.plateau_epsilon) {
        ++consecutive_small;
      } else {
        consecutive_small = 0;
      }
    }
    report.values.push_back(solved.value);
    report.final_horizon = n;
    last = std::move(solved);
    if (consecutive_small >= config.plateau_consecutive) {
      report.plateaued = true;
      break;
    }
  }

  report.maximizer = last->sigma1;
  report.minimizer = last->sigma2;

  // Certify the final strategies across all solved horizons; Eq. (1) says
  // the Maximizer guarantees are nondecreasing, and every val_{G_n}(sigma2)
  // is at most v_N (the computable shadow of the K_n nesting).
  for (int n = 0; n <= report.final_horizon; ++n) {
    const ExplicitGame game = report_truncation(report, n);
    report.maximizer_guarantees.push_back(
        strategy_value(game, extend_uniform(game, report.maximizer)));
    report.minimizer_values.push_back(
        strategy_value(game, extend_uniform(game, report.minimizer)));
  }
  return report;
}

Extraction extract_eps_optimal(const ValueReport& report, const Rational& epsilon) {
  if (epsilon <= 0) throw InvalidParams("epsilon must be positive");
  if (!report.nonnegative)
    throw InvalidSpec("epsilon-optimal extraction is only certified for nonnegative games");
  if (report.values.empty()) throw InvalidParams("empty report");
  const Rational estimate = report.values.back();
  if (report.config.plateau_epsilon > 0 && !report.plateaued)
    throw PlateauNotReached("no plateau within the horizon budget; raise max_horizon");

  int chosen = -1;
  for (int n = 0; n < static_cast<int>(report.values.size()); ++n) {
    if (report.values[n] >= estimate - epsilon) {
      chosen = n;
      break;
    }
  }
  Extraction out;
  out.horizon = chosen;
  out.guarantee = report.values[chosen];

  // sigma1 optimal in G_N; uniform beyond N. In a nonnegative game its
  // guarantee can only grow with the horizon (Eq. (1)).
  const ExplicitGame chosen_game = report_truncation(report, chosen);
  SolveResult solved = solve_zero_sum(chosen_game, report.config.solver);
  out.sigma1 = std::move(solved.sigma1);
  out.sigma2 = report.minimizer;
  for (int n = chosen; n <= report.final_horizon; ++n) {
    const ExplicitGame game = report_truncation(report, n);
    const Rational g = strategy_value(game, extend_uniform(game, out.sigma1));
    if (g < out.guarantee)
      throw NonMonotoneValues("extracted strategy guarantee dropped below v_N");
    out.certified.push_back(g);
  }
  return out;
}

json report_to_json(const ValueReport& report) {
  json doc;
  doc["schema"] = "peg.report/1";
  doc["kind"] = report.config.leavable ? "leavable-sweep" : "sweep";
  doc["nonnegative"] = report.nonnegative;
  if (report.bound) doc["bound"] = to_frac(*report.bound);
  json values = json::array();
  for (const auto& v : report.values) values.push_back(to_frac(v));
  doc["values"] = std::move(values);
  doc["final_horizon"] = report.final_horizon;
  doc["plateaued"] = report.plateaued;
  doc["last_gap"] = to_frac(report.last_gap);
  doc["maximizer"] = strategy_to_json(report.maximizer);
  doc["minimizer"] = strategy_to_json(report.minimizer);
  json g1 = json::array(), g2 = json::array();
  for (const auto& v : report.maximizer_guarantees) g1.push_back(to_frac(v));
  for (const auto& v : report.minimizer_values) g2.push_back(to_frac(v));
  doc["maximizer_guarantees"] = std::move(g1);
  doc["minimizer_values"] = std::move(g2);
  if (report.nonnegative) {
    doc["certified_lower_bound"] = to_frac(report.values.back());
    doc["limit_estimate"] = to_frac(report.values.back());
  }
  return doc;
}

std::string report_to_csv(const ValueReport& report) {
  std::ostringstream out;
  out << "n,v_n,v_n_decimal\n";
  for (size_t n = 0; n < report.values.size(); ++n)
    out << n << ',' << to_frac(report.values[n]) << ',' << to_double(report.values[n]) << '\n';
  return out.str();
}

json extraction_to_json(const Extraction& extraction) {
  json doc;
  doc["schema"] = "peg.extraction/1";
  doc["horizon"] = extraction.horizon;
  doc["guarantee"] = to_frac(extraction.guarantee);
  doc["sigma1"] = strategy_to_json(extraction.sigma1);
  doc["sigma2"] = strategy_to_json(extraction.sigma2);
  json certified = json::array();
  for (const auto& v : extraction.certified) certified.push_back(to_frac(v));
  doc["certified_guarantees"] = std::move(certified);
  return doc;
}

}  // namespace peg
