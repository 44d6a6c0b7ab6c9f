#ifndef REGCAP_POLICY_HPP
#define REGCAP_POLICY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regcap/constants.hpp"

namespace regcap {

// Revenue table on a rectangular (q, p) grid, bilinearly interpolated.
// A point on a grid line takes the max over the adjacent cells, which keeps
// the interpolant upper-semicontinuous when the table encodes a jump.
struct RevenueTable {
  std::vector<double> qs;            // strictly increasing, spans [0,1]
  std::vector<double> ps;            // strictly increasing, spans [0, v_bar]
  std::vector<double> values;       // row-major, qs.size() x ps.size()

  double at(size_t i, size_t j) const { return values[i * ps.size() + j]; }
};

enum class PolicyKind {
  LaissezFaire,
  PriceCap,
  LumpSum,
  OptimalCapSubsidy,
  HardCap,
  Table,
};

// A regulatory revenue rule rho(q, p). Immutable; copy freely.
struct Policy {
  PolicyKind kind = PolicyKind::LaissezFaire;
  double k = 0.0;        // cap level (PriceCap, OptimalCapSubsidy, HardCap)
  double s = 0.0;        // subsidy (LumpSum, OptimalCapSubsidy)
  double q_tilde = 0.0;  // LumpSum threshold
  std::shared_ptr<const Policy> inner;        // HardCap
  std::shared_ptr<const RevenueTable> table;  // Table

  static Policy laissez_faire();
  static Policy price_cap(double k);
  static Policy lump_sum(double q_tilde, double s);
  static Policy optimal_cap_subsidy(double k, double s);
  static Policy hard_cap(Policy inner, double k);
  static Policy from_table(RevenueTable table);

  std::string describe() const;
};

// Revenue the firm receives for selling q units at price p; nullopt means
// the pair is rejected outright (the hard price cap's -infinity).
std::optional<double> revenue(const Policy& pol, double q, double p);

// Max revenue from selling q units or less at any price in [0, v_bar].
double rho_bar(const Policy& pol, double q, double v_bar);

// Max revenue from selling at least q units with marketplace revenue at most
// q*p.
double rho_hat(const Policy& pol, double q, double p, double v_bar);

// The optimal family min(q k_alpha, q p + s); s must lie in
// [s_alpha, r_alpha].
Policy optimal_policy(const AlphaConstants& consts, double s);

}  // namespace regcap

#endif  // REGCAP_POLICY_HPP
