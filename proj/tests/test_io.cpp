#include <sstream>

#include "doctest.h"
#include "regcap/scenario_io.hpp"

using namespace regcap;

TEST_CASE("scenario round-trips bit-exactly") {
  ScenarioParams par{0.37, 0.21000000000000002, 0.1, 0.05};
  Scenario sc{Market(make_V(par.q, par.p, 1.0),
                     two_tier_cost(par.q_lo, par.fixed), 1.0),
              ScenarioLabel::UnderTwoTier, par};
  std::string text = serialize_scenario(sc);
  std::istringstream in(text);
  ScenarioFile parsed = parse_scenario(in);
  REQUIRE(parsed.market.has_value());
  REQUIRE(parsed.label.has_value());
  CHECK(*parsed.label == ScenarioLabel::UnderTwoTier);
  CHECK(parsed.params.q == par.q);
  CHECK(parsed.params.p == par.p);
  CHECK(parsed.params.q_lo == par.q_lo);
  CHECK(parsed.params.fixed == par.fixed);
  const auto& segs = parsed.market->demand.segments();
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].hi == par.q);
  CHECK(segs[1].a == par.q * par.p);
  // Re-serializing gives the identical document.
  Scenario again{*parsed.market, *parsed.label, parsed.params};
  CHECK(serialize_scenario(again) == text);
}

TEST_CASE("policy blocks parse and serialize") {
  Policy pols[] = {Policy::laissez_faire(), Policy::price_cap(0.3),
                   Policy::lump_sum(0.5, 0.2),
                   Policy::optimal_cap_subsidy(2.0 / 3.0, 1.0 / 3.0)};
  for (const Policy& pol : pols) {
    std::istringstream in(serialize_policy(pol));
    ScenarioFile parsed = parse_scenario(in);
    REQUIRE(parsed.policy.has_value());
    CHECK(parsed.policy->kind == pol.kind);
    CHECK(parsed.policy->k == pol.k);
    CHECK(parsed.policy->s == pol.s);
    CHECK(parsed.policy->q_tilde == pol.q_tilde);
  }
  std::istringstream in(
      "[policy]\nkind = hard_cap\ninner = cap_subsidy\nk = 0.5\ns = 0.1\n");
  ScenarioFile parsed = parse_scenario(in);
  REQUIRE(parsed.policy.has_value());
  CHECK(parsed.policy->kind == PolicyKind::HardCap);
  CHECK(parsed.policy->inner->kind == PolicyKind::OptimalCapSubsidy);
  CHECK(parsed.policy->inner->s == 0.1);
}

TEST_CASE("market with fixed cost shorthand") {
  std::istringstream in(
      "[market]\n"
      "v_bar = 1\n"
      "cost.fixed = 0.4\n"
      "\n"
      "[[market.demand.segment]]\n"
      "lo = 0\nhi = 1\nkind = constant\nc = 1\n");
  ScenarioFile parsed = parse_scenario(in);
  REQUIRE(parsed.market.has_value());
  CHECK(parsed.market->cost(0.0) == 0.0);
  CHECK(parsed.market->cost(0.5) == doctest::Approx(0.4));
}

TEST_CASE("parse errors carry line numbers and context") {
  // Malformed segment: lo >= hi names the offending block.
  std::istringstream bad_seg(
      "[[market.demand.segment]]\n"
      "lo = 0.7\nhi = 0.3\nkind = constant\nc = 1\n");
  CHECK_THROWS_WITH_AS(parse_scenario(bad_seg),
                       doctest::Contains("market.demand.segment"), ParseError);
  try {
    std::istringstream again(
        "[[market.demand.segment]]\n"
        "lo = 0.7\nhi = 0.3\nkind = constant\nc = 1\n");
    parse_scenario(again);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }

  std::istringstream no_section("x = 1\n");
  CHECK_THROWS_WITH_AS(parse_scenario(no_section),
                       doctest::Contains("outside any"), ParseError);

  std::istringstream bad_number("[scenario]\nlabel = under_free\nq = abc\n");
  CHECK_THROWS_WITH_AS(parse_scenario(bad_number),
                       doctest::Contains("not a number"), ParseError);

  std::istringstream missing_key("[policy]\nkind = price_cap\n");
  CHECK_THROWS_WITH_AS(parse_scenario(missing_key),
                       doctest::Contains("missing key 'k'"), ParseError);

  std::istringstream bad_section("[nonsense]\nx = 1\n");
  CHECK_THROWS_AS(parse_scenario(bad_section), ParseError);

  std::istringstream no_eq("[policy]\nkind laissez_faire\n");
  CHECK_THROWS_WITH_AS(parse_scenario(no_eq),
                       doctest::Contains("key = value"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  std::istringstream in(
      "# a scenario\n"
      "\n"
      "[policy]\n"
      "# inline note\n"
      "kind = laissez_faire\n");
  ScenarioFile parsed = parse_scenario(in);
  REQUIRE(parsed.policy.has_value());
  CHECK(parsed.policy->kind == PolicyKind::LaissezFaire);
}
