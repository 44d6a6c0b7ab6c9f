#include "regcap/firm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>

namespace regcap {

namespace {

// Price caps that bound the firm's retained per-unit revenue, collected
// through HardCap nesting.
void collect_caps(const Policy& pol, std::vector<double>& caps) {
  switch (pol.kind) {
    case PolicyKind::PriceCap:
    case PolicyKind::OptimalCapSubsidy:
      caps.push_back(pol.k);
      break;
    case PolicyKind::HardCap:
      caps.push_back(pol.k);
      collect_caps(*pol.inner, caps);
      break;
    default:
      break;
  }
}

void collect_subsidy_caps(const Policy& pol,
                          std::vector<std::pair<double, double>>& ks) {
  if (pol.kind == PolicyKind::OptimalCapSubsidy) ks.emplace_back(pol.k, pol.s);
  if (pol.kind == PolicyKind::HardCap) collect_subsidy_caps(*pol.inner, ks);
}

void collect_lump_thresholds(const Policy& pol, std::vector<double>& out) {
  if (pol.kind == PolicyKind::LumpSum) out.push_back(pol.q_tilde);
  if (pol.kind == PolicyKind::HardCap) collect_lump_thresholds(*pol.inner, out);
}

// Quantities where the policy's revenue rule changes shape along p = V(q).
void policy_kink_quantities(const Policy& pol, const PiecewiseFn& demand,
                            std::vector<double>& out) {
  std::vector<double> caps;
  collect_caps(pol, caps);
  std::vector<std::pair<double, double>> subs;
  collect_subsidy_caps(pol, subs);
  collect_lump_thresholds(pol, out);

  for (const Segment& seg : demand.segments()) {
    // V(q) = k crossings.
    for (double k : caps) {
      switch (seg.kind) {
        case SegmentKind::Constant:
          break;
        case SegmentKind::Hyperbolic:
          if (k > 0.0) out.push_back(seg.a / k);
          break;
        case SegmentKind::Linear:
          if (seg.b != 0.0) out.push_back((k - seg.a) / seg.b);
          break;
      }
    }
    // q k = q V(q) + s: the subsidy-exhaustion point along p = V(q).
    for (auto [k, s] : subs) {
      switch (seg.kind) {
        case SegmentKind::Constant:
          if (k > seg.a) out.push_back(s / (k - seg.a));
          break;
        case SegmentKind::Hyperbolic:
          if (k > 0.0) out.push_back((seg.a + s) / k);
          break;
        case SegmentKind::Linear: {
          // b q^2 + (a - k) q + s = 0
          double A = seg.b, B = seg.a - k, C = s;
          if (A == 0.0) {
            if (B != 0.0) out.push_back(-C / B);
          } else {
            double disc = B * B - 4 * A * C;
            if (disc >= 0.0) {
              double r = std::sqrt(disc);
              out.push_back((-B + r) / (2 * A));
              out.push_back((-B - r) / (2 * A));
            }
          }
          break;
        }
      }
    }
  }
  // Subsidy fully absorbed at p = 0: q k = s.
  for (auto [k, s] : subs)
    if (k > 0.0) out.push_back(s / k);
}

// Price candidates at a fixed quantity: the demand value and every policy
// kink price below it. Revenue is monotone in p for the built-in rules, so
// these candidates reach the maximum; Table policies get a dense scan.
void price_candidates(const Policy& pol, double q, double vq, double v_bar,
                      const FirmConfig& cfg, std::vector<double>& out) {
  out.push_back(vq);
  out.push_back(0.0);
  std::vector<double> caps;
  collect_caps(pol, caps);
  for (double k : caps)
    if (k < vq) out.push_back(k);
  std::vector<std::pair<double, double>> subs;
  collect_subsidy_caps(pol, subs);
  for (auto [k, s] : subs)
    if (q > 0.0) {
      double kink = k - s / q;
      if (kink > 0.0 && kink < vq) out.push_back(kink);
    }
  if (pol.kind == PolicyKind::Table) {
    for (double p : pol.table->ps)
      if (p <= vq) out.push_back(p);
    for (int i = 0; i < cfg.table_p_grid; ++i)
      out.push_back(vq * static_cast<double>(i) / (cfg.table_p_grid - 1));
  }
  (void)v_bar;
}

struct Candidate {
  double q, p, profit, welfare;  // welfare = total value - cost
};

}  // namespace

std::vector<std::pair<double, double>> best_responses(const Policy& pol,
                                                      const Market& m,
                                                      TieBreak tie,
                                                      const FirmConfig& cfg) {
  const double v_bar = m.v_bar;
  const double tie_tol = cfg.tie_tol_scale * v_bar;

  auto profit_at = [&](double q, double p) -> double {
    auto rev = revenue(pol, q, p);
    if (!rev) return -1e300;
    return *rev - m.cost(q);
  };

  // Quantity candidates: breakpoints, policy kinks, uniform grid.
  std::vector<double> qs;
  for (double b : m.demand.breakpoints()) qs.push_back(b);
  for (double b : m.cost.breakpoints()) qs.push_back(b);
  policy_kink_quantities(pol, m.demand, qs);
  for (int i = 0; i < cfg.q_grid; ++i)
    qs.push_back(static_cast<double>(i) / (cfg.q_grid - 1));
  std::sort(qs.begin(), qs.end());
  qs.erase(std::remove_if(qs.begin(), qs.end(),
                          [](double q) { return q < 0.0 || q > 1.0; }),
           qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

  // Every feasible candidate evaluation is kept so the tie filter below does
  // not have to recompute profits.
  struct Eval {
    double q, p, profit;
  };
  std::vector<Eval> evals;
  evals.reserve(qs.size() * 4 + 16);
  double max_profit = profit_at(0.0, 0.0);
  evals.push_back({0.0, 0.0, max_profit});
  std::vector<double> ps;
  auto scan_prices_at = [&](double q) {
    double vq = m.demand(q);
    ps.clear();
    price_candidates(pol, q, vq, v_bar, cfg, ps);
    for (double p : ps) {
      if (p < 0.0 || p > vq) continue;
      double pr = profit_at(q, p);
      if (pr < -1e290) continue;
      evals.push_back({q, p, pr});
      if (pr > max_profit) max_profit = pr;
    }
  };
  for (double q : qs) scan_prices_at(q);

  std::vector<double> extra_qs;
  if (cfg.refine) {
    // Golden-section polish of profit-in-q along each structural price rule.
    std::vector<std::function<double(double)>> rules;
    rules.push_back([&](double q) { return m.demand(q); });
    std::vector<double> caps;
    collect_caps(pol, caps);
    for (double k : caps)
      rules.push_back(
          [&, k](double q) { return std::min(k, m.demand(q)); });
    std::vector<std::pair<double, double>> subs;
    collect_subsidy_caps(pol, subs);
    for (auto [k, s] : subs)
      rules.push_back([&, k = k, s = s](double q) {
        if (q <= 0.0) return 0.0;
        return std::clamp(k - s / q, 0.0, m.demand(q));
      });
    for (const auto& rule : rules) {
      auto [val, arg] = detail::maximize_scalar(
          qs, 0.0, 1.0, 3, [&](double q) { return profit_at(q, rule(q)); });
      if (val > max_profit) max_profit = val;
      extra_qs.push_back(arg);
    }
  }
  for (double q : extra_qs) scan_prices_at(q);

  // Retain every candidate within the tie tolerance of the maximum.
  // Responses with equal quantity and equal profit are outcome-equivalent
  // (same revenue, surplus and distortion), so one representative is kept:
  // the first considered, which prices at the demand value.
  std::map<std::pair<std::int64_t, std::int64_t>, Candidate> retained;
  for (const Eval& e : evals) {
    if (e.profit < max_profit - tie_tol) continue;
    std::pair<std::int64_t, std::int64_t> key{
        std::llround(e.q * 1e9), std::llround(e.profit * 1e9)};
    if (retained.count(key)) continue;
    double welfare = total_value(m, e.q) - m.cost(e.q);
    retained[key] = Candidate{e.q, e.p, e.profit, welfare};
  }

  std::vector<Candidate> ties;
  ties.reserve(retained.size());
  for (auto& [key, c] : retained) ties.push_back(c);

  // Distortion ordering; within the tie tolerance all profits agree, so this
  // matches the regret ordering for every alpha.
  auto lex = [](const Candidate& a, const Candidate& b) {
    return a.q != b.q ? a.q < b.q : a.p < b.p;
  };
  switch (tie) {
    case TieBreak::AgainstRegulator:
      std::sort(ties.begin(), ties.end(),
                [&](const Candidate& a, const Candidate& b) {
                  if (a.welfare != b.welfare) return a.welfare < b.welfare;
                  return lex(a, b);
                });
      break;
    case TieBreak::ForRegulator:
      std::sort(ties.begin(), ties.end(),
                [&](const Candidate& a, const Candidate& b) {
                  if (a.welfare != b.welfare) return a.welfare > b.welfare;
                  return lex(a, b);
                });
      break;
    case TieBreak::All:
      std::sort(ties.begin(), ties.end(), lex);
      break;
  }

  std::vector<std::pair<double, double>> result;
  result.reserve(ties.size());
  for (const Candidate& c : ties) result.emplace_back(c.q, c.p);
  return result;
}

Outcome outcome(const Policy& pol, const Market& m, double alpha, double q,
                double p, const SocialOpt& opt) {
  double vq = m.demand(q);
  if (p > vq + 1e-9 * m.v_bar)
    throw std::invalid_argument("choice is infeasible: p exceeds V(q)");
  auto rev = revenue(pol, q, p);
  if (!rev) throw std::invalid_argument("choice is rejected by the policy");
  double tv = total_value(m, q);
  double cost = m.cost(q);
  Outcome o;
  o.q = q;
  o.p = p;
  o.cs = tv - *rev;
  o.fp = *rev - cost;
  o.opt = opt.value;
  o.dstr = std::max(opt.value - (tv - cost), 0.0);
  o.rgrt = o.dstr + (1.0 - alpha) * o.fp;
  return o;
}

Outcome outcome(const Policy& pol, const Market& m, double alpha, double q,
                double p) {
  return outcome(pol, m, alpha, q, p, social_opt(m));
}

}  // namespace regcap
