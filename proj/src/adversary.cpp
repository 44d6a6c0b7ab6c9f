#include "regcap/adversary.hpp"

#include <algorithm>
#include <cmath>

namespace regcap {

namespace {

// Scenario regret caches the social optimum work inside policy_regret.
struct Scored {
  Scenario scenario;
  double regret;
};

Market scenario_market(ScenarioLabel label, const ScenarioParams& par,
                       double v_bar, double k_alpha) {
  switch (label) {
    case ScenarioLabel::Overproduction:
      return Market(make_W(par.q, par.p, v_bar), fixed_cost(par.fixed), v_bar);
    case ScenarioLabel::UnderTwoTier:
      return Market(make_V(par.q, par.p, v_bar),
                    two_tier_cost(par.q_lo,
                                  std::max(par.q - par.q_lo, 0.0) * k_alpha),
                    v_bar);
    case ScenarioLabel::UnderFree:
      return Market(make_V(par.q, par.p, v_bar), zero_cost(), v_bar);
    case ScenarioLabel::FlatFixed:
      return Market(make_W(std::max(par.q, 1e-9), v_bar, v_bar),
                    fixed_cost(par.fixed), v_bar);
    case ScenarioLabel::Random:
      break;
  }
  throw std::logic_error("random scenarios are generated, not parameterized");
}

double clampd(double x, double lo, double hi) {
  return std::min(std::max(x, lo), hi);
}

// Nelder-Mead maximization over box-constrained parameters.
std::pair<double, std::vector<double>> nelder_mead_max(
    std::vector<double> start, const std::vector<double>& lo,
    const std::vector<double>& hi, int iterations,
    const std::function<double(const std::vector<double>&)>& f) {
  const size_t n = start.size();
  auto clamp_point = [&](std::vector<double>& x) {
    for (size_t i = 0; i < n; ++i) x[i] = clampd(x[i], lo[i], hi[i]);
  };
  std::vector<std::pair<double, std::vector<double>>> simplex;
  clamp_point(start);
  simplex.emplace_back(f(start), start);
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> x = start;
    double step = 0.05 * (hi[i] - lo[i]);
    x[i] += (x[i] + step <= hi[i]) ? step : -step;
    clamp_point(x);
    simplex.emplace_back(f(x), x);
  }
  auto by_value = [](const auto& a, const auto& b) { return a.first > b.first; };
  for (int it = 0; it < iterations; ++it) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    std::vector<double> centroid(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) centroid[j] += simplex[i].second[j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);
    auto& worst = simplex.back();
    std::vector<double> refl(n);
    for (size_t j = 0; j < n; ++j)
      refl[j] = centroid[j] + (centroid[j] - worst.second[j]);
    clamp_point(refl);
    double f_refl = f(refl);
    if (f_refl > simplex.front().first) {
      std::vector<double> exp_pt(n);
      for (size_t j = 0; j < n; ++j)
        exp_pt[j] = centroid[j] + 2.0 * (centroid[j] - worst.second[j]);
      clamp_point(exp_pt);
      double f_exp = f(exp_pt);
      worst = f_exp > f_refl ? std::make_pair(f_exp, exp_pt)
                             : std::make_pair(f_refl, refl);
    } else if (f_refl > simplex[simplex.size() - 2].first) {
      worst = {f_refl, refl};
    } else {
      std::vector<double> contr(n);
      for (size_t j = 0; j < n; ++j)
        contr[j] = centroid[j] + 0.5 * (worst.second[j] - centroid[j]);
      clamp_point(contr);
      double f_contr = f(contr);
      if (f_contr > worst.first) {
        worst = {f_contr, contr};
      } else {
        // Shrink toward the best vertex.
        for (size_t i = 1; i < simplex.size(); ++i) {
          for (size_t j = 0; j < n; ++j)
            simplex[i].second[j] = simplex[0].second[j] +
                                   0.5 * (simplex[i].second[j] -
                                          simplex[0].second[j]);
          clamp_point(simplex[i].second);
          simplex[i].first = f(simplex[i].second);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex.front().first, simplex.front().second};
}

double scenario_regret(const Policy& pol, const Scenario& sc, double alpha,
                       const FirmConfig& cfg) {
  return policy_regret(pol, sc.market, alpha, cfg);
}

std::vector<Scored> score_library(const Policy& pol,
                                  const AlphaConstants& consts,
                                  int resolution,
                                  const AdversaryConfig& cfg) {
  std::vector<Scored> scored;
  std::vector<Scenario> lib = proof_library(pol, consts, resolution);
  scored.reserve(lib.size());
  for (Scenario& sc : lib) {
    double r = scenario_regret(pol, sc, consts.alpha, cfg.firm);
    scored.push_back(Scored{std::move(sc), r});
  }
  return scored;
}

// Local polish of the generating parameters around the best witnesses.
void polish(const Policy& pol, const AlphaConstants& consts,
            std::vector<Scored>& scored, const AdversaryConfig& cfg) {
  std::partial_sort(scored.begin(),
                    scored.begin() +
                        std::min<size_t>(cfg.polish_witnesses, scored.size()),
                    scored.end(),
                    [](const Scored& a, const Scored& b) {
                      return a.regret > b.regret;
                    });
  size_t top = std::min<size_t>(cfg.polish_witnesses, scored.size());
  const double v = consts.v_bar;
  const double k = consts.k_alpha;
  for (size_t w = 0; w < top; ++w) {
    const Scenario& sc = scored[w].scenario;
    ScenarioLabel label = sc.label;
    if (label == ScenarioLabel::Random) continue;
    std::vector<double> x, lo, hi;
    switch (label) {
      case ScenarioLabel::Overproduction:
      case ScenarioLabel::UnderFree:
        x = {sc.params.q, sc.params.p};
        lo = {1e-6, 0.0};
        hi = {1.0, label == ScenarioLabel::Overproduction ? v : k};
        break;
      case ScenarioLabel::UnderTwoTier:
        x = {sc.params.q, sc.params.p, sc.params.q_lo};
        lo = {1e-6, 0.0, 0.0};
        hi = {1.0, k, 1.0};
        break;
      case ScenarioLabel::FlatFixed:
        x = {sc.params.q, sc.params.fixed};
        lo = {1e-6, 0.0};
        hi = {1.0, v};
        break;
      case ScenarioLabel::Random:
        continue;
    }
    auto eval = [&](const std::vector<double>& par) -> double {
      ScenarioParams p;
      p.q = par[0];
      switch (label) {
        case ScenarioLabel::Overproduction: {
          p.p = par[1];
          auto rev = revenue(pol, p.q, p.p);
          if (!rev || *rev < p.q * p.p) return -1.0;
          p.fixed = *rev;
          break;
        }
        case ScenarioLabel::UnderFree:
          p.p = par[1];
          break;
        case ScenarioLabel::UnderTwoTier:
          p.p = par[1];
          p.q_lo = std::min(par[2], p.q);
          break;
        case ScenarioLabel::FlatFixed:
          p.q = 1.0;
          p.p = v;
          p.fixed = par[1];
          p.q = par[0];
          break;
        case ScenarioLabel::Random:
          break;
      }
      Scenario cand{scenario_market(label, p, v, k), label, p};
      return scenario_regret(pol, cand, consts.alpha, cfg.firm);
    };
    auto [val, arg] = nelder_mead_max(x, lo, hi, cfg.polish_iterations, eval);
    if (val > scored[w].regret) {
      ScenarioParams p = sc.params;
      p.q = arg[0];
      if (label == ScenarioLabel::UnderTwoTier) {
        p.p = arg[1];
        p.q_lo = std::min(arg[2], p.q);
      } else if (label == ScenarioLabel::FlatFixed) {
        p.fixed = arg[1];
        p.p = v;
      } else {
        p.p = arg[1];
        if (label == ScenarioLabel::Overproduction) {
          auto rev = revenue(pol, p.q, p.p);
          if (rev) p.fixed = *rev;
        }
      }
      scored[w] = Scored{{scenario_market(label, p, v, k), label, p}, val};
    }
  }
}

}  // namespace

std::string to_string(ScenarioLabel label) {
  switch (label) {
    case ScenarioLabel::Overproduction:
      return "overproduction";
    case ScenarioLabel::UnderTwoTier:
      return "under_two_tier";
    case ScenarioLabel::UnderFree:
      return "under_free";
    case ScenarioLabel::FlatFixed:
      return "flat_fixed";
    case ScenarioLabel::Random:
      return "random";
  }
  return "unknown";
}

std::vector<Scenario> proof_library(const Policy& pol,
                                    const AlphaConstants& consts,
                                    int resolution) {
  if (resolution < 11)
    throw std::invalid_argument("resolution must be at least 11");
  const double v = consts.v_bar;
  const double k = consts.k_alpha;
  std::vector<Scenario> lib;

  auto q_at = [&](int i) {
    return static_cast<double>(i) / resolution;  // i in [1, resolution]
  };
  auto p_at = [&](int j) {
    return k * static_cast<double>(j) / resolution;
  };

  for (int i = 1; i <= resolution; ++i) {
    double q = q_at(i);
    for (int j = 0; j <= resolution; ++j) {
      double p = p_at(j);
      // (a) Overproduction: fixed cost equal to the policy revenue.
      auto rev = revenue(pol, q, p);
      if (rev && *rev >= q * p) {
        ScenarioParams par{q, p, 0.0, *rev};
        lib.push_back(Scenario{
            scenario_market(ScenarioLabel::Overproduction, par, v, k),
            ScenarioLabel::Overproduction, par});
      }
      // (b) Underproduction with a two-tier cost; the q_lo = 0 slice is the
      // fixed-cost construction behind the universal lower bound.
      for (double frac : {0.0, 0.5}) {
        ScenarioParams par{q, p, frac * q, (q - frac * q) * k};
        lib.push_back(Scenario{
            scenario_market(ScenarioLabel::UnderTwoTier, par, v, k),
            ScenarioLabel::UnderTwoTier, par});
      }
      // (c) Underproduction with zero cost.
      {
        ScenarioParams par{q, p, 0.0, 0.0};
        lib.push_back(
            Scenario{scenario_market(ScenarioLabel::UnderFree, par, v, k),
                     ScenarioLabel::UnderFree, par});
      }
    }
  }
  // (d) Step demand at v_bar with fixed costs: a grid of cost levels plus
  // the exact revenue ceiling rho_bar(q), which makes exit a tied response.
  for (int j = 0; j <= resolution; ++j) {
    double f = v * static_cast<double>(j) / resolution;
    ScenarioParams par{1.0, v, 0.0, f};
    lib.push_back(Scenario{
        scenario_market(ScenarioLabel::FlatFixed, par, v, k),
        ScenarioLabel::FlatFixed, par});
  }
  for (int i = 1; i <= resolution; ++i) {
    double q = q_at(i);
    ScenarioParams par{q, v, 0.0, rho_bar(pol, q, v)};
    lib.push_back(Scenario{
        scenario_market(ScenarioLabel::FlatFixed, par, v, k),
        ScenarioLabel::FlatFixed, par});
  }
  return lib;
}

CertificationReport certify_lower_bound(const Policy& pol,
                                        const AlphaConstants& consts,
                                        int resolution,
                                        const AdversaryConfig& cfg) {
  std::vector<Scored> scored = score_library(pol, consts, resolution, cfg);
  polish(pol, consts, scored, cfg);
  CertificationReport rep;
  rep.policy = pol.describe();
  rep.alpha = consts.alpha;
  for (const Scored& s : scored) {
    if (s.regret > rep.lower_bound) {
      rep.lower_bound = s.regret;
      rep.lower_witness = s.scenario;
    }
  }
  rep.upper_sweep = rep.lower_bound;
  rep.upper_witness = rep.lower_witness;
  rep.verdict = rep.lower_bound >= consts.r_alpha - 1e-4 * consts.v_bar
                    ? "lower bound reaches r_alpha"
                    : "lower bound below r_alpha";
  return rep;
}

Market random_market(std::mt19937_64& rng, double v_bar) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> steps_dist(1, 8);
  int n = steps_dist(rng);
  std::vector<double> cuts{0.0, 1.0};
  for (int i = 0; i < n - 1; ++i) cuts.push_back(unif(rng));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> heights;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    heights.push_back(v_bar * unif(rng));
  std::sort(heights.rbegin(), heights.rend());
  std::vector<Segment> segs;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    segs.push_back(constant_segment(cuts[i], cuts[i + 1], heights[i]));
  PiecewiseFn demand(FnRole::Demand, std::move(segs));

  int family = std::uniform_int_distribution<int>(0, 2)(rng);
  PiecewiseFn cost = zero_cost();
  if (family == 0) {
    cost = fixed_cost(v_bar * unif(rng));
  } else if (family == 1) {
    cost = two_tier_cost(unif(rng), v_bar * unif(rng));
  } else {
    cost = affine_cost(0.5 * v_bar * unif(rng), v_bar * unif(rng));
  }
  return Market(std::move(demand), std::move(cost), v_bar);
}

CertificationReport sweep_upper_bound(const Policy& pol,
                                      const AlphaConstants& consts,
                                      int resolution, int random_count,
                                      std::uint64_t seed,
                                      const AdversaryConfig& cfg) {
  std::vector<Scored> scored = score_library(pol, consts, resolution, cfg);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count; ++i) {
    Scenario sc{random_market(rng, consts.v_bar), ScenarioLabel::Random, {}};
    double r = scenario_regret(pol, sc, consts.alpha, cfg.firm);
    scored.push_back(Scored{std::move(sc), r});
  }
  CertificationReport rep;
  rep.policy = pol.describe();
  rep.alpha = consts.alpha;
  for (const Scored& s : scored) {
    if (s.regret > rep.upper_sweep) {
      rep.upper_sweep = s.regret;
      rep.upper_witness = s.scenario;
    }
  }
  rep.lower_bound = rep.upper_sweep;
  rep.lower_witness = rep.upper_witness;
  rep.verdict = rep.upper_sweep <= consts.r_alpha + 1e-6 * consts.v_bar
                    ? "sweep within r_alpha"
                    : "sweep exceeds r_alpha";
  return rep;
}

}  // namespace regcap
