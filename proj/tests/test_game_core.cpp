#include <doctest.h>

#include <nlohmann/json.hpp>

#include "peg/builders.hpp"
#include "peg/errors.hpp"
#include "peg/game_spec.hpp"
#include "support/fixtures.hpp"
#include "support/random_spec.hpp"

using namespace peg;

TEST_CASE("degenerate all-zero singleton spec is valid") {
  GameSpec g;
  g.states = {"s"};
  g.initial_state = 0;
  g.signal_names[0] = {"."};
  g.signal_names[1] = {"."};
  g.actions[0] = {{"a"}};
  g.actions[1] = {{"a"}};
  g.transitions = {{{{{Rational(1), 0, 0, 0}}}}};
  g.payoffs = {{{Rational(0)}}};
  const auto report = validate_spec(g);
  CHECK(report.valid());
}

TEST_CASE("distribution mass != 1 is reported") {
  GameSpec g = fixtures::matching_pennies();
  g.transitions[1][0][0] = {{Rational(9, 10), 0, 0, 0}};
  const auto report = validate_spec(g);
  REQUIRE_FALSE(report.valid());
  bool found = false;
  for (const auto& v : report.violations)
    if (v.find("distribution mass") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("counterexample declared nonnegative reports the -1 payoff") {
  GameSpec g = build_counterexample({Rational(1, 2), Rational(3)});
  g.nonnegative_declared = true;
  const auto report = validate_spec(g);
  REQUIRE_FALSE(report.valid());
  bool found = false;
  for (const auto& v : report.violations)
    if (v.find("payoff -1/1 found") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("classify") {
  SUBCASE("all-zero game") {
    const auto c = classify(fixtures::all_zero());
    CHECK(c.nonnegative);
    CHECK(c.per_stage_bound == 0);
  }
  SUBCASE("capture game paying 1 once") {
    const auto c = classify(fixtures::forced_capture());
    CHECK(c.nonnegative);
    CHECK(c.per_stage_bound == 1);
  }
  SUBCASE("counterexample p=1/2 A=3") {
    const auto c = classify(build_counterexample({Rational(1, 2), Rational(3)}));
    CHECK_FALSE(c.nonnegative);
    CHECK(c.per_stage_bound == 3);
  }
  SUBCASE("classify is pure") {
    const GameSpec g = fixtures::forced_capture();
    const auto a = classify(g);
    const auto b = classify(g);
    CHECK(a.nonnegative == b.nonnegative);
    CHECK(a.per_stage_bound == b.per_stage_bound);
  }
}

TEST_CASE("serialization round-trip is field-exact") {
  const std::vector<GameSpec> specs = {
      fixtures::matching_pennies(),
      fixtures::forced_capture(),
      fixtures::harmonic_game(4),
      build_counterexample({Rational(1, 2), Rational(3)}),
      testgen::random_spec_oracle(7),
      testgen::random_spec_sweep(3),
      testgen::random_hidden_coin(5),
  };
  for (const auto& spec : specs) {
    const GameSpec back = parse_game(render_game(spec));
    CHECK(back == spec);
  }
}

TEST_CASE("round-trip through text preserves the document") {
  const GameSpec spec = testgen::random_spec_oracle(11);
  const auto doc = render_game(spec);
  const auto text = doc.dump(2);
  const GameSpec back = parse_game(nlohmann::json::parse(text));
  CHECK(back == spec);
  CHECK(render_game(back).dump(2) == text);
}

TEST_CASE("terminal state detection") {
  const GameSpec g = fixtures::forced_capture();
  CHECK(is_terminal_state(g, 0));       // caught
  CHECK_FALSE(is_terminal_state(g, 1));  // chase (moves on)
  CHECK_FALSE(is_terminal_state(g, 2));  // close (pays)
}

TEST_CASE("parse rational rejects junk") {
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(to_frac(parse_rational("4/6")) == "2/3");
  CHECK(to_frac(Rational(0)) == "0/1");
}
