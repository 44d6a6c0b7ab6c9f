#ifndef REGCAP_MARKET_HPP
#define REGCAP_MARKET_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace regcap {

// Quantities live in [0,1], money values in [0, v_bar].
// Semicontinuity convention: at an interior breakpoint the function value is
// the LEFT limit. A decreasing function is then upper-semicontinuous and an
// increasing one lower-semicontinuous. A cost jump at 0 (fixed cost) is
// charged for every q > 0 while C(0) = 0.

enum class SegmentKind { Constant, Hyperbolic, Linear };

struct Segment {
  double lo = 0.0;
  double hi = 1.0;
  SegmentKind kind = SegmentKind::Constant;
  // Constant:   value = a
  // Hyperbolic: value = a / z          (requires lo > 0)
  // Linear:     value = a + b * z
  double a = 0.0;
  double b = 0.0;

  double value(double z) const;
  // Exact integral of the analytic formula over [z0, z1] within [lo, hi].
  double integral(double z0, double z1) const;
  // Derivative of the analytic formula at z.
  double derivative(double z) const;
};

Segment constant_segment(double lo, double hi, double c);
Segment hyperbolic_segment(double lo, double hi, double a);
Segment linear_segment(double lo, double hi, double intercept, double slope);

enum class FnRole { Demand, Cost };

class PiecewiseFn {
 public:
  PiecewiseFn(FnRole role, std::vector<Segment> segments);

  // Point evaluation respecting the left-limit convention; cost at 0 is 0.
  double operator()(double z) const;
  // Exact closed-form integral over [0, q].
  double integral(double q) const;
  // sup of the function over (q, 1]; returns 0 for q >= 1.
  double sup_after(double q) const;

  FnRole role() const { return role_; }
  const std::vector<Segment>& segments() const { return segments_; }
  // All segment endpoints, sorted, deduplicated, including 0 and 1.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  FnRole role_;
  std::vector<Segment> segments_;
  std::vector<double> breakpoints_;
  const Segment& segment_at(double z) const;
};

struct Market {
  PiecewiseFn demand;
  PiecewiseFn cost;
  double v_bar;

  Market(PiecewiseFn demand_fn, PiecewiseFn cost_fn, double vbar);
};

// Extremal demand constructions: V_{q,p} is v_bar up to q with hyperbolic
// tail qp/z; W_{q,p} is the single step at height p.
PiecewiseFn make_V(double q, double p, double v_bar);
PiecewiseFn make_W(double q, double p, double v_bar);

// Cost constructors. fixed_cost(0) == zero_cost().
PiecewiseFn zero_cost();
PiecewiseFn fixed_cost(double f);
// 0 on (0, q_lo], f_lo + jump on (q_lo, 1]; the two-tier family.
PiecewiseFn two_tier_cost(double q_lo, double jump);
// f + c*q for q > 0 (decreasing average cost family).
PiecewiseFn affine_cost(double f, double c);

struct SocialOpt {
  double value;   // max of total value minus cost, never negative
  double q_star;  // a maximizer
};

// Consumer value of the first q units: integral of inverse demand.
double total_value(const Market& m, double q);
// Social optimum per the candidate/grid method; exact on piecewise-analytic
// inputs whose optimum sits at a breakpoint.
SocialOpt social_opt(const Market& m);
SocialOpt social_opt(const Market& m, int grid);
// Welfare shortfall at quantity q relative to the optimum; >= 0.
double distortion(const Market& m, double q);
double distortion(const Market& m, double q, const SocialOpt& opt);

namespace detail {
// Maximize a scalar function on [lo, hi]: evaluates the given candidate
// points plus a uniform grid, then golden-section polish around every local
// maximum bracket. Returns (max value, argmax).
std::pair<double, double> maximize_scalar(
    const std::vector<double>& candidates, double lo, double hi, int grid_n,
    const std::function<double(double)>& f);
}  // namespace detail

}  // namespace regcap

#endif  // REGCAP_MARKET_HPP
