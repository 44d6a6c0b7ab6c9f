#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "regcap/analysis.hpp"
#include "regcap/policy.hpp"

using namespace regcap;

TEST_CASE("revenue rules") {
  Policy lf = Policy::laissez_faire();
  CHECK(*revenue(lf, 0.3, 0.5) == doctest::Approx(0.15));

  Policy cap = Policy::price_cap(0.4);
  // pricing above the cap pays a tax of q(p - k)
  CHECK(*revenue(cap, 0.5, 0.9) == doctest::Approx(0.5 * 0.4));
  CHECK(*revenue(cap, 0.5, 0.3) == doctest::Approx(0.15));

  Policy ocs = Policy::optimal_cap_subsidy(0.5, 0.0);
  CHECK(*revenue(ocs, 1.0, 0.8) == doctest::Approx(0.5));

  Policy ls = Policy::lump_sum(0.5, 0.2);
  CHECK(*revenue(ls, 0.4, 0.5) == doctest::Approx(0.2));
  CHECK(*revenue(ls, 0.5, 0.5) == doctest::Approx(0.45));

  Policy hc = Policy::hard_cap(Policy::optimal_cap_subsidy(0.5, 0.1), 0.5);
  CHECK_FALSE(revenue(hc, 0.5, 0.6).has_value());
  CHECK(*revenue(hc, 0.5, 0.4) == doctest::Approx(std::min(0.25, 0.2 + 0.1)));

  CHECK_THROWS_AS(revenue(lf, 1.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(revenue(lf, 0.5, -0.1), std::domain_error);
}

TEST_CASE("participation constraint rho(0,0) >= 0") {
  for (const Policy& pol :
       {Policy::laissez_faire(), Policy::price_cap(0.3),
        Policy::lump_sum(0.5, 0.2), Policy::optimal_cap_subsidy(0.5, 0.1),
        Policy::hard_cap(Policy::price_cap(0.3), 0.3)}) {
    CHECK(*revenue(pol, 0.0, 0.0) >= 0.0);
  }
}

TEST_CASE("rho_bar closed forms vs grid oracle") {
  const double v = 1.0;
  Policy lf = Policy::laissez_faire();
  CHECK(rho_bar(lf, 0.6, v) == doctest::Approx(0.6));

  Policy ocs = Policy::optimal_cap_subsidy(0.5, 0.1);
  CHECK(rho_bar(ocs, 0.6, v) == doctest::Approx(0.3));

  Policy ls = Policy::lump_sum(0.5, 0.2);
  CHECK(rho_bar(ls, 0.4, v) == doctest::Approx(0.4));
  CHECK(rho_bar(ls, 0.5, v) == doctest::Approx(0.7));

  for (const Policy& pol :
       {lf, ocs, ls, Policy::price_cap(0.45),
        Policy::hard_cap(Policy::optimal_cap_subsidy(0.5, 0.1), 0.5)}) {
    for (double q : {0.25, 0.5, 1.0}) {
      double closed = rho_bar(pol, q, v);
      double grid = oracle::rho_bar_grid(pol, q, v);
      CHECK(closed >= grid - 1e-9);
      CHECK(closed <= grid + 1e-3);  // grid misses kinks by its pitch
      CHECK(std::abs(closed - grid) <= 2e-3);
    }
  }
}

TEST_CASE("rho_hat closed forms vs grid oracle") {
  const double v = 1.0;
  Policy lf = Policy::laissez_faire();
  CHECK(rho_hat(lf, 0.5, 0.6, v) == doctest::Approx(0.3));

  Policy cap = Policy::price_cap(0.4);
  CHECK(rho_hat(cap, 0.5, 0.6, v) == doctest::Approx(0.3));
  CHECK(rho_hat(cap, 0.9, 0.8, v) == doctest::Approx(0.4));

  Policy ocs = Policy::optimal_cap_subsidy(0.5, 0.1);
  CHECK(rho_hat(ocs, 0.5, 0.6, v) ==
        doctest::Approx(std::min(0.5, 0.3 + 0.1)));

  for (const Policy& pol : {lf, cap, ocs, Policy::lump_sum(0.5, 0.2)}) {
    for (double q : {0.25, 0.5, 0.9}) {
      for (double p : {0.1, 0.5, 1.0}) {
        double closed = rho_hat(pol, q, p, v);
        double grid = oracle::rho_hat_grid(pol, q, p, v);
        CHECK(closed >= grid - 1e-9);
        CHECK(std::abs(closed - grid) <= 2e-3);
      }
    }
  }
}

TEST_CASE("rho_bar and rho_hat monotonicity") {
  Policy ocs = Policy::optimal_cap_subsidy(0.5, 0.1);
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    double q = i / 100.0;
    double rb = rho_bar(ocs, q, 1.0);
    CHECK(rb >= prev - 1e-12);
    prev = rb;
  }
  prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    double qp = i / 100.0;  // rho_hat depends on the product qp
    double rh = rho_hat(ocs, 1.0, qp, 1.0);
    CHECK(rh >= prev - 1e-12);
    prev = rh;
  }
}

TEST_CASE("table policies stay upper-semicontinuous at jumps") {
  // A jump at q = 0.5 encoded in adjacent cells; on the grid line the value
  // takes the max of the neighbouring interpolants.
  RevenueTable t;
  t.qs = {0.0, 0.5, 1.0};
  t.ps = {0.0, 1.0};
  t.values = {0.0, 0.0, 0.5, 0.5, 0.1, 0.1};
  Policy pol = Policy::from_table(std::move(t));
  CHECK(*revenue(pol, 0.5, 0.5) == doctest::Approx(0.5));
  CHECK(*revenue(pol, 0.25, 0.5) == doctest::Approx(0.25));
  double rb = rho_bar(pol, 1.0, 1.0);
  CHECK(rb == doctest::Approx(0.5));
}

TEST_CASE("optimal_policy validates the subsidy range") {
  AlphaConstants c0 = constants(0.0, 1.0);
  Policy p0 = optimal_policy(c0, 0.0);
  CHECK(p0.kind == PolicyKind::OptimalCapSubsidy);
  CHECK(p0.k == doctest::Approx(0.5));
  CHECK(p0.s == doctest::Approx(0.0));

  AlphaConstants ch = constants(0.5, 1.0);
  Policy ph = optimal_policy(ch, 1.0 / 3.0);
  CHECK(ph.k == doctest::Approx(2.0 / 3.0));
  CHECK(ph.s == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_WITH_AS(optimal_policy(c0, 0.6),
                       doctest::Contains("above the maximal r_alpha"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(optimal_policy(ch, 0.1),
                       doctest::Contains("below the minimal s_alpha"),
                       std::invalid_argument);
}

TEST_CASE("cap-subsidy structural bounds hold by construction") {
  Policy ocs = Policy::optimal_cap_subsidy(0.5, 0.2);
  for (int i = 0; i <= 50; ++i) {
    double q = i / 50.0;
    for (int j = 0; j <= 50; ++j) {
      double p = j / 50.0;
      double r = *revenue(ocs, q, p);
      CHECK(r <= q * 0.5 + 1e-12);
      CHECK(r - q * p <= 0.2 + 1e-12);
    }
  }
  CHECK(*revenue(ocs, 1.0, 0.0) == doctest::Approx(0.2));
}
