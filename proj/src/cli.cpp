#include "peg/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "peg/builders.hpp"
#include "peg/discretize.hpp"
#include "peg/errors.hpp"
#include "peg/leavable.hpp"
#include "peg/uniform_value.hpp"

namespace peg {

using nlohmann::json;

namespace {

long env_long(const char* name, long fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  try {
    return std::stol(v);
  } catch (const std::exception&) {
    return fallback;
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("bad JSON in '" + path + "': " + e.what());
  }
  return doc;
}

Profile load_profile(const std::string& path) {
  const json doc = load_json(path);
  Profile profile;
  try {
    profile.sigma1 = strategy_from_json(doc.at("sigma1"));
    profile.sigma2 = strategy_from_json(doc.at("sigma2"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad profile file: ") + e.what());
  }
  if (profile.sigma1.owner != kMaximizer || profile.sigma2.owner != kMinimizer)
    throw ParseError("profile must hold player 1 under sigma1 and player 2 under sigma2");
  return profile;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

struct CommonOptions {
  std::string rational_epsilon;
  long node_budget = 1'000'000;
  long long oracle_budget = 10'000;
  int alphabet_budget = 4096;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact solver for cumulative pursuit-evasion games with incomplete information"};
  app.require_subcommand(1);

  CommonOptions common;
  common.node_budget = env_long("PEG_NODE_BUDGET", 1'000'000);
  common.oracle_budget = env_long("PEG_ORACLE_BUDGET", 10'000);
  common.alphabet_budget = static_cast<int>(env_long("PEG_ALPHABET_BUDGET", 4096));

  // validate
  std::string game_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a game file against the invariants");
  validate_cmd->add_option("--game", game_path, "game JSON file")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve the truncation G_n exactly");
  std::string solve_game;
  int solve_horizon = 0;
  bool solve_leavable = false, solve_oracle = false;
  std::string dump_tree_path, dump_lp_path;
  solve_cmd->add_option("--game", solve_game, "game JSON file")->required();
  solve_cmd->add_option("--horizon", solve_horizon, "truncation horizon n")->required();
  solve_cmd->add_flag("--leavable", solve_leavable, "solve the leavable truncation L_n");
  solve_cmd->add_flag("--oracle", solve_oracle, "also run the brute-force oracle");
  solve_cmd->add_option("--node-budget", common.node_budget, "public tree node budget");
  solve_cmd->add_option("--dump-tree", dump_tree_path, "write the public tree dump here");
  solve_cmd->add_option("--dump-lp", dump_lp_path, "write the Maximizer LP dump here");

  // sweep / leavable-sweep
  std::string sweep_game, sweep_extract_eps, sweep_plateau_eps;
  int sweep_max_horizon = 8, sweep_consecutive = 3;
  bool sweep_csv = false, sweep_leavable = false;
  auto add_sweep_options = [&](CLI::App* cmd, bool leavable_fixed) {
    cmd->add_option("--game", sweep_game, "game JSON file")->required();
    cmd->add_option("--max-horizon", sweep_max_horizon, "largest horizon to solve")->required();
    cmd->add_option("--plateau-eps", sweep_plateau_eps, "plateau gap threshold (rational)");
    cmd->add_option("--consecutive", sweep_consecutive, "plateau gaps required in a row");
    cmd->add_option("--extract-eps", sweep_extract_eps,
                    "also extract epsilon-optimal strategies (rational)");
    cmd->add_flag("--csv", sweep_csv, "emit (n, v_n) CSV instead of JSON");
    cmd->add_option("--node-budget", common.node_budget, "public tree node budget");
    if (!leavable_fixed) cmd->add_flag("--leavable", sweep_leavable, "sweep L_n instead of G_n");
  };
  auto* sweep_cmd = app.add_subcommand("sweep", "solve G_0..G_N and report the value sequence");
  add_sweep_options(sweep_cmd, false);
  auto* lsweep_cmd =
      app.add_subcommand("leavable-sweep", "solve L_0..L_N and report the value sequence");
  add_sweep_options(lsweep_cmd, true);

  // eval
  std::string eval_game, eval_profile;
  int eval_horizon = 0;
  auto* eval_cmd = app.add_subcommand("eval", "exact expected payoff of a profile on G_n");
  eval_cmd->add_option("--game", eval_game, "game JSON file")->required();
  eval_cmd->add_option("--horizon", eval_horizon, "truncation horizon n")->required();
  eval_cmd->add_option("--profile", eval_profile, "profile JSON file")->required();

  // best-response
  std::string br_game, br_fixed, br_goal = "min";
  int br_horizon = 0;
  auto* br_cmd = app.add_subcommand("best-response",
                                    "exact best response against a fixed strategy on G_n");
  br_cmd->add_option("--game", br_game, "game JSON file")->required();
  br_cmd->add_option("--horizon", br_horizon, "truncation horizon n")->required();
  br_cmd->add_option("--fixed", br_fixed, "fixed strategy JSON file")->required();
  br_cmd->add_option("--goal", br_goal, "responder goal: max or min")
      ->check(CLI::IsMember({"max", "min"}));

  // simulate
  std::string sim_game, sim_profile;
  int sim_horizon = 0;
  std::uint64_t sim_seed = 1;
  long long sim_reps = 1000;
  auto* sim_cmd = app.add_subcommand("simulate", "seeded Monte Carlo check of a profile");
  sim_cmd->add_option("--game", sim_game, "game JSON file")->required();
  sim_cmd->add_option("--horizon", sim_horizon, "stage horizon")->required();
  sim_cmd->add_option("--profile", sim_profile, "profile JSON file")->required();
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("--reps", sim_reps, "replication count");

  // approx-signals
  std::string approx_game, approx_eps, approx_out;
  int approx_stages = 8;
  bool approx_refined = false;
  auto* approx_cmd = app.add_subcommand(
      "approx-signals", "discretize infinite signal models with a total-variation certificate");
  approx_cmd->add_option("--game", approx_game, "game JSON file")->required();
  approx_cmd->add_option("--epsilon", approx_eps, "payoff error budget (rational)")->required();
  approx_cmd->add_option("--stages", approx_stages, "stages to discretize");
  approx_cmd->add_option("--out", approx_out, "write the finite-signal game here");
  approx_cmd->add_flag("--refined", approx_refined,
                       "emit the exact refinement instead (no rounding, densities only)");
  approx_cmd->add_option("--alphabet-budget", common.alphabet_budget, "letters per stage");

  // counterexample
  std::string ce_p, ce_a;
  int ce_horizon = 4, ce_max_horizon = -1;
  bool ce_sweep = false, ce_emit_game = false;
  auto* ce_cmd =
      app.add_subcommand("counterexample", "hidden-bit stopping game with no value");
  ce_cmd->add_option("--p", ce_p, "probability of b = 1 (rational)")->required();
  ce_cmd->add_option("--A", ce_a, "Minimizer stop payoff on b = 1 (rational)")->required();
  ce_cmd->add_option("--horizon", ce_horizon, "stage horizon for the claim certificates");
  ce_cmd->add_flag("--sweep", ce_sweep, "also solve the truncations");
  ce_cmd->add_option("--max-horizon", ce_max_horizon, "sweep stage horizon (default --horizon)");
  ce_cmd->add_flag("--emit-game", ce_emit_game, "include the generator in the output");

  // pursuit
  std::string pursuit_graph, pursuit_variant = "kind", pursuit_p, pursuit_e, pursuit_out;
  int pursuit_horizon = -1;
  auto* pursuit_cmd = app.add_subcommand("pursuit", "pursuit-evasion game on a graph");
  pursuit_cmd->add_option("--graph", pursuit_graph, "edge list file")->required();
  pursuit_cmd->add_option("--variant", pursuit_variant, "kind or degree")
      ->check(CLI::IsMember({"kind", "degree"}));
  pursuit_cmd->add_option("--pursuer", pursuit_p, "pursuer start vertex")->required();
  pursuit_cmd->add_option("--evader", pursuit_e, "evader start vertex")->required();
  pursuit_cmd->add_option("--horizon", pursuit_horizon, "solve G_n when given");
  pursuit_cmd->add_option("--out", pursuit_out, "write the generator here");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(validate_cmd)) {
      const GameSpec spec = load_game(game_path);
      const ValidationReport report = validate_spec(spec);
      json doc;
      doc["schema"] = "peg.validation/1";
      doc["valid"] = report.valid();
      doc["violations"] = report.violations;
      out << doc.dump(2) << "\n";
      return report.valid() ? 0 : 2;
    }

    if (app.got_subcommand(solve_cmd)) {
      const GameSpec spec = load_game(solve_game);
      const ExplicitGame game =
          solve_leavable
              ? build_leavable_truncation(spec, solve_horizon, common.node_budget)
              : truncate({spec, solve_horizon, common.node_budget, true, -1, {}});
      if (!dump_tree_path.empty()) write_file(dump_tree_path, dump_tree(game));
      if (!dump_lp_path.empty()) {
        const LPInstance inst = build_sequence_form(game, kMaximizer);
        write_file(dump_lp_path, lp_to_text(inst.lp, inst.var_names));
      }
      const SolveResult solved = solve_zero_sum(game);
      json doc;
      doc["schema"] = "peg.solve/1";
      doc["horizon"] = solve_horizon;
      doc["leavable"] = solve_leavable;
      doc["value"] = to_frac(solved.value);
      doc["maximizer"] = strategy_to_json(solved.sigma1);
      doc["minimizer"] = strategy_to_json(solved.sigma2);
      if (solve_oracle) {
        OracleConfig oc;
        oc.max_pure_strategies = common.oracle_budget;
        doc["oracle"] = to_frac(brute_force_oracle(game, oc));
      }
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(sweep_cmd) || app.got_subcommand(lsweep_cmd)) {
      const GameSpec spec = load_game(sweep_game);
      SweepConfig config;
      config.max_horizon = sweep_max_horizon;
      config.node_budget = common.node_budget;
      config.leavable = sweep_leavable || app.got_subcommand(lsweep_cmd);
      config.plateau_consecutive = sweep_consecutive;
      if (!sweep_plateau_eps.empty()) config.plateau_epsilon = parse_rational(sweep_plateau_eps);
      const ValueReport report = sweep(spec, config);
      if (sweep_csv) {
        out << report_to_csv(report);
        return 0;
      }
      json doc = report_to_json(report);
      if (!sweep_extract_eps.empty()) {
        doc["extraction"] =
            extraction_to_json(extract_eps_optimal(report, parse_rational(sweep_extract_eps)));
      }
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(eval_cmd)) {
      const GameSpec spec = load_game(eval_game);
      const ExplicitGame game = truncate({spec, eval_horizon, common.node_budget, true, -1, {}});
      const Rational value = expected_payoff(game, load_profile(eval_profile));
      json doc;
      doc["schema"] = "peg.eval/1";
      doc["horizon"] = eval_horizon;
      doc["value"] = to_frac(value);
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(br_cmd)) {
      const GameSpec spec = load_game(br_game);
      const ExplicitGame game = truncate({spec, br_horizon, common.node_budget, true, -1, {}});
      const BehavioralStrategy fixed = strategy_from_json(load_json(br_fixed));
      const EvaluationResult result = best_response_value(
          game, fixed, br_goal == "max" ? Goal::maximize : Goal::minimize);
      json doc;
      doc["schema"] = "peg.best_response/1";
      doc["horizon"] = br_horizon;
      doc["goal"] = br_goal;
      doc["value"] = to_frac(result.value);
      doc["responder"] = strategy_to_json(result.responder);
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(sim_cmd)) {
      const GameSpec spec = load_game(sim_game);
      const SimulationResult result =
          simulate(spec, load_profile(sim_profile), sim_horizon, sim_seed, sim_reps);
      json doc;
      doc["schema"] = "peg.simulate/1";
      doc["mean"] = result.mean;
      doc["stderr"] = result.stderr_of_mean;
      doc["reps"] = result.reps;
      doc["seed"] = sim_seed;
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(approx_cmd)) {
      const GameSpec spec = load_game(approx_game);
      json doc;
      doc["schema"] = "peg.approx_signals/1";
      if (approx_refined) {
        const GameSpec refined = refine_exact(spec);
        if (!approx_out.empty()) {
          write_file(approx_out, render_game(refined).dump(2) + "\n");
        } else {
          doc["game"] = render_game(refined);
        }
        doc["refined"] = true;
      } else {
        DiscretizeConfig config;
        config.alphabet_budget = common.alphabet_budget;
        const DiscretizationResult result =
            approximate_signals(spec, parse_rational(approx_eps), approx_stages, config);
        doc["certificate"] = certificate_to_json(result.certificate, spec);
        if (!approx_out.empty()) {
          write_file(approx_out, render_game(result.game).dump(2) + "\n");
        } else {
          doc["game"] = render_game(result.game);
        }
      }
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(ce_cmd)) {
      CounterexampleParams params{parse_rational(ce_p), parse_rational(ce_a)};
      const CounterexampleBounds bounds = counterexample_bounds(params);
      json doc;
      doc["schema"] = "peg.counterexample/1";
      doc["p"] = to_frac(params.p);
      doc["A"] = to_frac(params.big_a);
      doc["bounds"] = {{"upper", to_frac(bounds.upper)},
                       {"lower", to_frac(bounds.lower)},
                       {"gap", to_frac(bounds.gap)}};
      const int stages = std::max(1, ce_horizon);
      const ExplicitGame game = counterexample_truncation(params, stages, common.node_budget);
      // Certified from eval calls, not the closed forms.
      const BehavioralStrategy never = counterexample_never_stop(params, stages);
      const BehavioralStrategy claim2 = claim2_maximizer_strategy(params, stages);
      doc["certificates"] = {
          {"horizon", stages},
          {"upper", to_frac(best_response_value(game, never, Goal::maximize).value)},
          {"lower", to_frac(strategy_value(game, claim2))},
      };
      if (ce_emit_game) doc["game"] = render_game(build_counterexample(params));
      if (ce_sweep) {
        const int max_stages = ce_max_horizon >= 0 ? ce_max_horizon : stages;
        json values = json::array();
        for (int n = 0; n <= max_stages; ++n) {
          const SolveResult solved =
              solve_zero_sum(counterexample_truncation(params, n, common.node_budget));
          values.push_back(to_frac(solved.value));
        }
        doc["truncation_values"] = std::move(values);
      }
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(pursuit_cmd)) {
      PursuitParams params;
      params.graph = load_graph(pursuit_graph);
      params.variant = pursuit_variant == "kind" ? PursuitVariant::kind : PursuitVariant::degree;
      params.pursuer_start = pursuit_p;
      params.evader_start = pursuit_e;
      const GameSpec spec = build_pursuit(params);
      json doc;
      doc["schema"] = "peg.pursuit/1";
      doc["variant"] = pursuit_variant;
      if (!pursuit_out.empty()) {
        write_file(pursuit_out, render_game(spec).dump(2) + "\n");
      } else if (pursuit_horizon < 0) {
        doc["game"] = render_game(spec);
      }
      if (pursuit_horizon >= 0) {
        const SolveResult solved =
            solve_zero_sum(truncate({spec, pursuit_horizon, common.node_budget, true, -1, {}}));
        doc["horizon"] = pursuit_horizon;
        doc["value"] = to_frac(solved.value);
      }
      out << doc.dump(2) << "\n";
      return 0;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace peg
