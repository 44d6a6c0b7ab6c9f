// Independent brute-force oracles used by the unit and acceptance suites.
// These deliberately avoid the candidate/closed-form machinery in the
// library: plain dense grids and quadrature only.
#ifndef REGCAP_TESTS_ORACLES_HPP
#define REGCAP_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>

#include "regcap/firm.hpp"
#include "regcap/market.hpp"
#include "regcap/policy.hpp"

namespace regcap::oracle {

// Midpoint-rule quadrature of the inverse demand over [0, q]. Midpoints
// avoid the breakpoints, where the left-limit convention would skew an
// endpoint-based rule.
inline double total_value_quadrature(const Market& m, double q,
                                     int panels = 200000) {
  if (q <= 0.0) return 0.0;
  double h = q / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) sum += h * m.demand((i + 0.5) * h);
  return sum;
}

// Dense-grid social optimum; the grid is augmented with the segment
// endpoints so a step optimum is not missed by grid misalignment.
inline std::pair<double, double> opt_grid(const Market& m, int n = 4001) {
  std::vector<double> qs;
  qs.reserve(n + 8);
  for (int i = 0; i < n; ++i) qs.push_back(static_cast<double>(i) / (n - 1));
  for (double b : m.demand.breakpoints()) qs.push_back(b);
  for (double b : m.cost.breakpoints()) qs.push_back(b);
  double best = 0.0, best_q = 0.0;
  for (double q : qs) {
    double s = m.demand.integral(q) - m.cost(q);
    if (s > best) {
      best = s;
      best_q = q;
    }
  }
  return {best, best_q};
}

// Dense-grid maximum of revenue over q' <= q, p' <= p_max.
inline double rho_bar_grid(const Policy& pol, double q, double p_max,
                           int n = 1001) {
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double qq = q * static_cast<double>(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      double pp = p_max * static_cast<double>(j) / (n - 1);
      auto r = revenue(pol, qq, pp);
      if (r) best = std::max(best, *r);
    }
  }
  return best;
}

// Dense-grid maximum of revenue over q' >= q, q'p' <= qp, p' <= p_max.
inline double rho_hat_grid(const Policy& pol, double q, double p,
                           double p_max, int n = 1001) {
  double best = -1e300;
  double product = q * p;
  for (int i = 0; i < n; ++i) {
    double qq = q + (1.0 - q) * static_cast<double>(i) / (n - 1);
    if (qq <= 0.0) continue;
    double hi = std::min(p_max, product / qq);
    for (int j = 0; j < n; ++j) {
      double pp = hi * static_cast<double>(j) / (n - 1);
      auto r = revenue(pol, qq, pp);
      if (r) best = std::max(best, *r);
    }
  }
  return best;
}

// Dense feasible-grid maximum of firm profit.
inline double best_profit_grid(const Policy& pol, const Market& m,
                               int n = 4001) {
  double best = 0.0;  // (0,0) is always feasible with profit rho(0,0)
  auto r00 = revenue(pol, 0.0, 0.0);
  if (r00) best = *r00;
  for (int i = 0; i < n; ++i) {
    double q = static_cast<double>(i) / (n - 1);
    double vq = m.demand(q);
    double cq = m.cost(q);
    for (int j = 0; j < n; ++j) {
      double p = vq * static_cast<double>(j) / (n - 1);
      auto r = revenue(pol, q, p);
      if (r) best = std::max(best, *r - cq);
    }
  }
  return best;
}

}  // namespace regcap::oracle

#endif
