import math

import _regcap as rc


def test_constants_closed_form():
    c = rc.constants(0.0)
    assert c.k_alpha == 0.5
    assert c.r_alpha == 0.5
    assert c.s_alpha == 0.0
    c = rc.constants(1.0)
    assert abs(c.r_alpha - 0.205881) < 1e-5
    assert abs(c.q_alpha - 0.539003) < 1e-5


def test_numeric_maximin_matches():
    c = rc.constants(0.75)
    r = rc.r_alpha_numeric(0.75, grid=801)
    assert abs(r.value - c.r_alpha) < 1e-6


def test_firm_best_response_and_outcome():
    market = rc.step_market(1.0, 1.0)
    lf = rc.Policy.laissez_faire()
    responses = rc.best_responses(lf, market)
    assert responses == [(1.0, 1.0)]
    out = rc.evaluate(lf, market, 0.0, 1.0, 1.0)
    assert abs(out.fp - 1.0) < 1e-12
    assert abs(out.rgrt - 1.0) < 1e-12


def test_exit_tie_regret():
    market = rc.step_market(1.0, 1.0, fixed=0.5)
    pol = rc.optimal_policy(rc.constants(0.0), 0.0)
    assert abs(rc.policy_regret(pol, market, 0.0) - 0.5) < 1e-9


def test_certification_bounds():
    c = rc.constants(0.0)
    pol = rc.optimal_policy(c, c.s_alpha)
    lo = rc.certify_lower_bound(pol, 0.0, resolution=41)
    assert lo.lower_bound >= c.r_alpha - 1e-3
    hi = rc.sweep_upper_bound(pol, 0.0, resolution=41, random_count=50, seed=7)
    assert hi.upper_sweep <= c.r_alpha + 1e-6


def test_laissez_faire_ceiling():
    rep = rc.sweep_upper_bound(
        rc.Policy.laissez_faire(), 1.0, resolution=41, random_count=50, seed=3
    )
    assert rep.upper_sweep <= 1.0 / math.e + 1e-6


def test_parse_scenario_text():
    parsed = rc.parse_scenario("[policy]\nkind = price_cap\nk = 0.3\n")
    assert parsed["policy"].describe().startswith("price_cap")
    assert not parsed["has_market"]
