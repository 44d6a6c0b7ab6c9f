#ifndef REGCAP_ANALYSIS_HPP
#define REGCAP_ANALYSIS_HPP

#include <string>
#include <utility>
#include <vector>

#include "regcap/constants.hpp"
#include "regcap/firm.hpp"
#include "regcap/market.hpp"
#include "regcap/policy.hpp"

namespace regcap {

struct MaximinResult {
  double value;
  double q;
  double p;
};

// Numeric counterpart of the closed-form minimax regret value: solves
//   max over q in [0,1], p in [0,k]  of  min((1-a) q k - q p log q, q(k-p))
// by grid scan with golden-section refinement on each axis. q log q is 0 at
// q = 0.
MaximinResult r_alpha_numeric(double alpha, double v_bar, int grid);

// Worst regret over the firm's best responses, ties broken against the
// regulator.
double policy_regret(const Policy& pol, const Market& m, double alpha,
                     const FirmConfig& cfg = {});

// Least decreasing majorant of -q log q: 1/e below 1/e, -q log q above.
double phi(double q);

struct Lemma1Result {
  double lhs;    // max additional surplus beyond q_bar
  double rhs;    // max additional profit plus phi(q_bar) * p_bar
  bool holds;
};

// Checks the underproduction bound lhs <= fp_extra + phi(q_bar) p_bar.
// Requires p_bar >= sup of demand beyond q_bar.
Lemma1Result lemma1_check(const Market& m, double q_bar, double p_bar);

struct AuditViolation {
  int property;  // 1 = price cap, 2 = subsidy, 3 = subsidy cap
  double q, p;
  double amount;
};

struct AuditReport {
  bool price_cap_ok;
  bool subsidy_ok;
  bool subsidy_cap_ok;
  std::vector<AuditViolation> violations;
  bool all_ok() const { return price_cap_ok && subsidy_ok && subsidy_cap_ok; }
};

// Grid audit of the three structural properties every optimal policy has:
// (1) revenue <= q k_alpha for q <= q_alpha, (2) some (q,p) receives a
// subsidy of at least s_alpha, (3) no (q,p) receives more than r_alpha.
AuditReport theorem3_audit(const Policy& pol, const AlphaConstants& consts,
                           int grid = 2001);

}  // namespace regcap

#endif  // REGCAP_ANALYSIS_HPP
