#include "regcap/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regcap {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_domain(double q, double p) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error("quantity outside [0,1]");
  if (!(p >= 0.0)) throw std::domain_error("price must be nonnegative");
}

// Bilinear value inside one cell; (q, p) must lie within the cell bounds.
double cell_value(const RevenueTable& t, size_t i, size_t j, double q,
                  double p) {
  double q0 = t.qs[i], q1 = t.qs[i + 1];
  double p0 = t.ps[j], p1 = t.ps[j + 1];
  double u = (q - q0) / (q1 - q0);
  double v = (p - p0) / (p1 - p0);
  return (1 - u) * (1 - v) * t.at(i, j) + u * (1 - v) * t.at(i + 1, j) +
         (1 - u) * v * t.at(i, j + 1) + u * v * t.at(i + 1, j + 1);
}

// Indices of cells whose closure contains x on the given axis.
std::pair<size_t, size_t> cell_range(const std::vector<double>& axis,
                                     double x) {
  auto it = std::upper_bound(axis.begin(), axis.end(), x);
  size_t hi = std::min<size_t>(it - axis.begin(), axis.size() - 1) - 1;
  size_t lo = hi;
  // On a grid line both neighbours contain x.
  auto at = std::lower_bound(axis.begin(), axis.end(), x);
  if (at != axis.end() && *at == x && at != axis.begin() &&
      at + 1 != axis.end())
    lo = (at - axis.begin()) - 1;
  return {lo, hi};
}

double table_value(const RevenueTable& t, double q, double p) {
  double qc = std::clamp(q, t.qs.front(), t.qs.back());
  double pc = std::clamp(p, t.ps.front(), t.ps.back());
  auto [qi0, qi1] = cell_range(t.qs, qc);
  auto [pj0, pj1] = cell_range(t.ps, pc);
  double best = -1e300;
  for (size_t i = qi0; i <= qi1; ++i)
    for (size_t j = pj0; j <= pj1; ++j)
      best = std::max(best, cell_value(t, i, j, qc, pc));
  return best;
}

}  // namespace

Policy Policy::laissez_faire() {
  Policy p;
  p.kind = PolicyKind::LaissezFaire;
  return p;
}

Policy Policy::price_cap(double k) {
  require(k >= 0.0, "price cap must be nonnegative");
  Policy p;
  p.kind = PolicyKind::PriceCap;
  p.k = k;
  return p;
}

Policy Policy::lump_sum(double q_tilde, double s) {
  require(q_tilde >= 0.0 && q_tilde <= 1.0, "threshold must lie in [0,1]");
  require(s >= 0.0, "lump-sum subsidy must be nonnegative");
  Policy p;
  p.kind = PolicyKind::LumpSum;
  p.q_tilde = q_tilde;
  p.s = s;
  return p;
}

Policy Policy::optimal_cap_subsidy(double k, double s) {
  require(k >= 0.0, "cap must be nonnegative");
  require(s >= 0.0, "subsidy cap must be nonnegative");
  Policy p;
  p.kind = PolicyKind::OptimalCapSubsidy;
  p.k = k;
  p.s = s;
  return p;
}

Policy Policy::hard_cap(Policy inner_pol, double k) {
  require(k >= 0.0, "price cap must be nonnegative");
  Policy p;
  p.kind = PolicyKind::HardCap;
  p.k = k;
  p.inner = std::make_shared<Policy>(std::move(inner_pol));
  return p;
}

Policy Policy::from_table(RevenueTable t) {
  require(t.qs.size() >= 2 && t.ps.size() >= 2, "table needs a 2x2 grid");
  require(t.values.size() == t.qs.size() * t.ps.size(),
          "table value count mismatch");
  require(std::is_sorted(t.qs.begin(), t.qs.end()) &&
              std::is_sorted(t.ps.begin(), t.ps.end()),
          "table axes must be increasing");
  require(t.values[0] >= 0.0, "participation: rho(0,0) must be >= 0");
  Policy p;
  p.kind = PolicyKind::Table;
  p.table = std::make_shared<RevenueTable>(std::move(t));
  return p;
}

std::string Policy::describe() const {
  switch (kind) {
    case PolicyKind::LaissezFaire:
      return "laissez_faire";
    case PolicyKind::PriceCap:
      return "price_cap(k=" + std::to_string(k) + ")";
    case PolicyKind::LumpSum:
      return "lump_sum(q_tilde=" + std::to_string(q_tilde) +
             ", s=" + std::to_string(s) + ")";
    case PolicyKind::OptimalCapSubsidy:
      return "cap_subsidy(k=" + std::to_string(k) +
             ", s=" + std::to_string(s) + ")";
    case PolicyKind::HardCap:
      return "hard_cap(" + inner->describe() + ", k=" + std::to_string(k) +
             ")";
    case PolicyKind::Table:
      return "table";
  }
  return "unknown";
}

std::optional<double> revenue(const Policy& pol, double q, double p) {
  require_domain(q, p);
  switch (pol.kind) {
    case PolicyKind::LaissezFaire:
      return q * p;
    case PolicyKind::PriceCap:
      return std::min(q * p, q * pol.k);
    case PolicyKind::LumpSum:
      return q * p + (q >= pol.q_tilde ? pol.s : 0.0);
    case PolicyKind::OptimalCapSubsidy:
      return std::min(q * pol.k, q * p + pol.s);
    case PolicyKind::HardCap:
      if (p > pol.k) return std::nullopt;
      return revenue(*pol.inner, q, p);
    case PolicyKind::Table:
      return table_value(*pol.table, q, p);
  }
  return std::nullopt;
}

namespace {

double rho_bar_impl(const Policy& pol, double q, double pmax) {
  switch (pol.kind) {
    case PolicyKind::LaissezFaire:
      return q * pmax;
    case PolicyKind::PriceCap:
      return q * std::min(pol.k, pmax);
    case PolicyKind::LumpSum:
      return q * pmax + (q >= pol.q_tilde ? pol.s : 0.0);
    case PolicyKind::OptimalCapSubsidy:
      return std::min(q * pol.k, q * pmax + pol.s);
    case PolicyKind::HardCap:
      return rho_bar_impl(*pol.inner, q, std::min(pmax, pol.k));
    case PolicyKind::Table: {
      const RevenueTable& t = *pol.table;
      double best = 0.0;
      // Bilinear max over [0,q] x [0,pmax]: clipped cell corners suffice.
      std::vector<double> qxs, pxs;
      for (double x : t.qs)
        if (x <= q) qxs.push_back(x);
      qxs.push_back(q);
      for (double x : t.ps)
        if (x <= pmax) pxs.push_back(x);
      pxs.push_back(pmax);
      for (double qq : qxs)
        for (double pp : pxs)
          best = std::max(best, table_value(t, qq, pp));
      return best;
    }
  }
  return 0.0;
}

double rho_hat_impl(const Policy& pol, double q, double product, double pmax) {
  // q' = 1 can always realise any marketplace revenue up to min(product,
  // pmax); built-in revenue rules are monotone in q' and in q'p'.
  double b = std::min(product, pmax);
  switch (pol.kind) {
    case PolicyKind::LaissezFaire:
      return b;
    case PolicyKind::PriceCap:
      return std::min(b, pol.k);
    case PolicyKind::LumpSum:
      return b + pol.s;
    case PolicyKind::OptimalCapSubsidy:
      return std::min(pol.k, b + pol.s);
    case PolicyKind::HardCap:
      return rho_hat_impl(*pol.inner, q, product, std::min(pmax, pol.k));
    case PolicyKind::Table: {
      const RevenueTable& t = *pol.table;
      double best = -1e300;
      std::vector<double> qxs;
      for (double x : t.qs)
        if (x >= q) qxs.push_back(x);
      qxs.push_back(q);
      const int kScan = 257;
      for (int i = 0; i < kScan; ++i)
        qxs.push_back(q + (1.0 - q) * static_cast<double>(i) / (kScan - 1));
      for (double qq : qxs) {
        if (qq <= 0.0) continue;
        double p_hi = std::min(pmax, product / qq);
        best = std::max(best, table_value(t, qq, p_hi));
        for (double pp : t.ps)
          if (pp <= p_hi) best = std::max(best, table_value(t, qq, pp));
      }
      return best;
    }
  }
  return 0.0;
}

}  // namespace

double rho_bar(const Policy& pol, double q, double v_bar) {
  require_domain(q, 0.0);
  return rho_bar_impl(pol, q, v_bar);
}

double rho_hat(const Policy& pol, double q, double p, double v_bar) {
  require_domain(q, p);
  require(q > 0.0, "rho_hat needs q > 0");
  return rho_hat_impl(pol, q, q * p, v_bar);
}

Policy optimal_policy(const AlphaConstants& consts, double s) {
  double slack = 1e-12 * consts.v_bar;
  if (s < consts.s_alpha - slack)
    throw std::invalid_argument(
        "subsidy cap " + std::to_string(s) + " below the minimal s_alpha = " +
        std::to_string(consts.s_alpha));
  if (s > consts.r_alpha + slack)
    throw std::invalid_argument(
        "subsidy cap " + std::to_string(s) + " above the maximal r_alpha = " +
        std::to_string(consts.r_alpha));
  return Policy::optimal_cap_subsidy(consts.k_alpha, s);
}

}  // namespace regcap
