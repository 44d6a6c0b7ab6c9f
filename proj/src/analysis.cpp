#include "regcap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regcap {

namespace {

double q_log_q(double q) { return q > 0.0 ? q * std::log(q) : 0.0; }

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section maximization of a unimodal function on [a, b].
std::pair<double, double> golden_max(double a, double b,
                                     const std::function<double(double)>& f) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 90 && (b - a) > 1e-14; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  double xm = 0.5 * (a + b);
  return {f(xm), xm};
}

}  // namespace

AlphaConstants constants(double alpha, double v_bar) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::domain_error("alpha must lie in [0,1]");
  if (!(v_bar > 0.0)) throw std::domain_error("v_bar must be positive");
  AlphaConstants c;
  c.alpha = alpha;
  c.v_bar = v_bar;
  c.k_alpha = v_bar / (2.0 - alpha);
  if (alpha <= 0.5) {
    c.r_alpha = v_bar * (1.0 - alpha) / (2.0 - alpha);
    c.q_alpha = 1.0;
    c.s_alpha = v_bar * alpha / (2.0 - alpha);
  } else {
    double root = std::sqrt(alpha * (alpha + 4.0));
    double q = std::exp(1.0 - (alpha + root) / 2.0);
    c.q_alpha = q;
    c.r_alpha = v_bar * (2.0 + alpha - root) * q / (2.0 * (2.0 - alpha));
    c.s_alpha = c.r_alpha;
  }
  return c;
}

MaximinResult r_alpha_numeric(double alpha, double v_bar, int grid) {
  if (grid < 101) throw std::invalid_argument("grid must be at least 101");
  const double k = v_bar / (2.0 - alpha);

  auto objective = [&](double q, double p) {
    return std::min((1.0 - alpha) * q * k - p * q_log_q(q), q * (k - p));
  };
  // Inner maximization over p: min of an increasing and a decreasing branch,
  // hence unimodal.
  auto inner = [&](double q) -> std::pair<double, double> {
    double best = objective(q, 0.0), best_p = 0.0;
    for (int j = 1; j < grid; ++j) {
      double p = k * static_cast<double>(j) / (grid - 1);
      double v = objective(q, p);
      if (v > best) {
        best = v;
        best_p = p;
      }
    }
    double step = k / (grid - 1);
    auto [rv, rp] = golden_max(std::max(0.0, best_p - step),
                               std::min(k, best_p + step),
                               [&](double p) { return objective(q, p); });
    if (rv > best) {
      best = rv;
      best_p = rp;
    }
    return {best, best_p};
  };

  double best = -1.0, best_q = 0.0, best_p = 0.0;
  for (int i = 0; i < grid; ++i) {
    double q = static_cast<double>(i) / (grid - 1);
    auto [v, p] = inner(q);
    if (v > best) {
      best = v;
      best_q = q;
      best_p = p;
    }
  }
  double step = 1.0 / (grid - 1);
  auto [rv, rq] = golden_max(
      std::max(0.0, best_q - step), std::min(1.0, best_q + step),
      [&](double q) { return inner(q).first; });
  if (rv > best) {
    best = rv;
    best_q = rq;
    best_p = inner(rq).second;
  }
  return MaximinResult{best, best_q, best_p};
}

double policy_regret(const Policy& pol, const Market& m, double alpha,
                     const FirmConfig& cfg) {
  auto responses = best_responses(pol, m, TieBreak::AgainstRegulator, cfg);
  SocialOpt opt = social_opt(m, cfg.opt_grid);
  double worst = 0.0;
  for (auto [q, p] : responses) {
    Outcome o = outcome(pol, m, alpha, q, p, opt);
    worst = std::max(worst, o.rgrt);
  }
  return worst;
}

double phi(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("phi needs q in [0,1]");
  constexpr double kInvE = 0.36787944117144233;
  if (q < kInvE) return kInvE;
  return -q * std::log(q);
}

Lemma1Result lemma1_check(const Market& m, double q_bar, double p_bar) {
  double sup = m.demand.sup_after(q_bar);
  if (p_bar < sup - 1e-12 * m.v_bar)
    throw std::invalid_argument(
        "p_bar = " + std::to_string(p_bar) +
        " is below sup of demand beyond q_bar = " + std::to_string(sup));

  std::vector<double> candidates;
  for (double b : m.demand.breakpoints())
    if (b >= q_bar) candidates.push_back(b);
  for (double b : m.cost.breakpoints())
    if (b >= q_bar) candidates.push_back(b);
  // V(q) = p_bar crossings, where the capped marketplace revenue kinks.
  for (const Segment& seg : m.demand.segments()) {
    switch (seg.kind) {
      case SegmentKind::Constant:
        break;
      case SegmentKind::Hyperbolic:
        if (p_bar > 0.0) candidates.push_back(seg.a / p_bar);
        break;
      case SegmentKind::Linear:
        if (seg.b != 0.0) candidates.push_back((p_bar - seg.a) / seg.b);
        break;
    }
  }

  double tv_bar = m.demand.integral(q_bar);
  double c_bar = m.cost(q_bar);
  auto [lhs, lhs_q] = detail::maximize_scalar(
      candidates, q_bar, 1.0, 2001, [&](double q) {
        return m.demand.integral(q) - tv_bar - (m.cost(q) - c_bar);
      });
  auto [fp_extra, fp_q] = detail::maximize_scalar(
      candidates, q_bar, 1.0, 2001, [&](double q) {
        return q * std::min(p_bar, m.demand(q)) - q_bar * p_bar -
               (m.cost(q) - c_bar);
      });
  (void)lhs_q;
  (void)fp_q;
  double rhs = fp_extra + phi(q_bar) * p_bar;
  return Lemma1Result{lhs, rhs, lhs <= rhs + 1e-8 * m.v_bar};
}

AuditReport theorem3_audit(const Policy& pol, const AlphaConstants& consts,
                           int grid) {
  const double v = consts.v_bar;
  const double tol = 1e-9 * v;
  AuditReport rep{true, false, true, {}};
  for (int i = 0; i < grid; ++i) {
    double q = static_cast<double>(i) / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      double p = v * static_cast<double>(j) / (grid - 1);
      auto rev = revenue(pol, q, p);
      if (!rev) continue;
      if (q <= consts.q_alpha + tol && *rev > q * consts.k_alpha + tol) {
        if (rep.price_cap_ok)
          rep.violations.push_back(
              AuditViolation{1, q, p, *rev - q * consts.k_alpha});
        rep.price_cap_ok = false;
      }
      if (*rev >= q * p + consts.s_alpha - tol) rep.subsidy_ok = true;
      if (*rev > q * p + consts.r_alpha + tol) {
        if (rep.subsidy_cap_ok)
          rep.violations.push_back(
              AuditViolation{3, q, p, *rev - q * p - consts.r_alpha});
        rep.subsidy_cap_ok = false;
      }
    }
  }
  if (!rep.subsidy_ok)
    rep.violations.push_back(AuditViolation{2, 0.0, 0.0, consts.s_alpha});
  return rep;
}

}  // namespace regcap
