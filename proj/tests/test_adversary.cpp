#include <cmath>

#include "doctest.h"
#include "regcap/adversary.hpp"

using namespace regcap;

TEST_CASE("overproduction scenarios pin regret at rho - qp") {
  // Fixed cost equal to the policy revenue makes production worthless while
  // the subsidy still flows, so regret equals the net transfer exactly.
  Policy pol = Policy::lump_sum(0.5, 0.2);
  double q = 0.5, p = 0.4;
  double rho = *revenue(pol, q, p);
  REQUIRE(rho >= q * p);
  Market m(make_W(q, p, 1.0), fixed_cost(rho), 1.0);
  for (double alpha : {0.0, 0.6, 1.0}) {
    CHECK(policy_regret(pol, m, alpha) ==
          doctest::Approx(rho - q * p).epsilon(1e-9));
  }
}

TEST_CASE("proof library structure") {
  AlphaConstants c = constants(0.5, 1.0);
  Policy pol = Policy::optimal_cap_subsidy(c.k_alpha, c.s_alpha);
  auto lib = proof_library(pol, c, 11);
  REQUIRE(!lib.empty());
  bool saw_over = false, saw_two_tier = false, saw_free = false,
       saw_flat = false;
  for (const Scenario& sc : lib) {
    switch (sc.label) {
      case ScenarioLabel::Overproduction: {
        saw_over = true;
        double rev = *revenue(pol, sc.params.q, sc.params.p);
        CHECK(rev >= sc.params.q * sc.params.p - 1e-12);
        CHECK(sc.params.fixed == doctest::Approx(rev));
        break;
      }
      case ScenarioLabel::UnderTwoTier:
        saw_two_tier = true;
        CHECK(sc.params.q_lo <= sc.params.q + 1e-12);
        break;
      case ScenarioLabel::UnderFree:
        saw_free = true;
        break;
      case ScenarioLabel::FlatFixed:
        saw_flat = true;
        break;
      case ScenarioLabel::Random:
        FAIL("library should not contain random scenarios");
    }
  }
  CHECK(saw_over);
  CHECK(saw_two_tier);
  CHECK(saw_free);
  CHECK(saw_flat);
  CHECK_THROWS_AS(proof_library(pol, c, 5), std::invalid_argument);
}

TEST_CASE("tight price caps concede large regret either way") {
  AlphaConstants c = constants(0.0, 1.0);
  // Low cap: an exit-inducing fixed cost wipes out a 0.7 surplus.
  CertificationReport low =
      certify_lower_bound(Policy::price_cap(0.3), c, 41);
  CHECK(low.lower_bound >= 0.7 - 1e-6);
  // High cap: full extraction of a flat market transfers 0.7 to the firm.
  CertificationReport high =
      certify_lower_bound(Policy::price_cap(0.7), c, 41);
  CHECK(high.lower_bound >= 0.7 - 1e-6);
  CHECK(low.lower_witness.has_value());
}

TEST_CASE("optimal policy certifies r_alpha from below and above") {
  for (double alpha : {0.0, 0.75}) {
    AlphaConstants c = constants(alpha, 1.0);
    Policy pol = optimal_policy(c, c.s_alpha);
    CertificationReport lo = certify_lower_bound(pol, c, 41);
    CHECK(lo.lower_bound >= c.r_alpha - 1e-3);
    CHECK(lo.lower_bound <= c.r_alpha + 1e-6);
    CertificationReport hi = sweep_upper_bound(pol, c, 41, 200, 12345);
    CHECK(hi.upper_sweep <= c.r_alpha + 1e-6);
    CHECK(hi.verdict == "sweep within r_alpha");
  }
}

TEST_CASE("laissez faire at alpha 1 stays within v_bar/e") {
  AlphaConstants c = constants(1.0, 1.0);
  CertificationReport rep =
      sweep_upper_bound(Policy::laissez_faire(), c, 41, 150, 99);
  CHECK(rep.upper_sweep <= 1.0 / std::exp(1.0) + 1e-6);
}

TEST_CASE("sweeps are deterministic in the seed") {
  AlphaConstants c = constants(0.25, 1.0);
  Policy pol = optimal_policy(c, c.s_alpha);
  CertificationReport a = sweep_upper_bound(pol, c, 21, 50, 777);
  CertificationReport b = sweep_upper_bound(pol, c, 21, 50, 777);
  CHECK(a.upper_sweep == b.upper_sweep);
  REQUIRE(a.upper_witness.has_value());
  REQUIRE(b.upper_witness.has_value());
  CHECK(to_string(a.upper_witness->label) == to_string(b.upper_witness->label));
  CHECK(a.upper_witness->params.q == b.upper_witness->params.q);
}

TEST_CASE("random markets are always valid") {
  std::mt19937_64 rng(2718);
  for (int t = 0; t < 200; ++t) {
    Market m = random_market(rng, 1.0);
    CHECK(m.demand(0.0) <= 1.0 + 1e-12);
    CHECK(m.cost(0.0) == 0.0);
    CHECK(m.cost(1.0) >= 0.0);
    double prev = m.demand(1e-9);
    for (int i = 1; i <= 20; ++i) {
      double d = m.demand(i / 20.0);
      CHECK(d <= prev + 1e-12);
      prev = d;
    }
  }
}
