#include "regcap/market.hpp"

#include <algorithm>
#include <cmath>

namespace regcap {

namespace {

constexpr double kRelTol = 1e-12;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_domain(double z) {
  if (!(z >= 0.0 && z <= 1.0))
    throw std::domain_error("quantity " + std::to_string(z) +
                            " outside [0,1]");
}

}  // namespace

double Segment::value(double z) const {
  switch (kind) {
    case SegmentKind::Constant:
      return a;
    case SegmentKind::Hyperbolic:
      return a / z;
    case SegmentKind::Linear:
      return a + b * z;
  }
  return 0.0;
}

double Segment::integral(double z0, double z1) const {
  if (z1 <= z0) return 0.0;
  switch (kind) {
    case SegmentKind::Constant:
      return a * (z1 - z0);
    case SegmentKind::Hyperbolic:
      return a * std::log(z1 / z0);
    case SegmentKind::Linear:
      return a * (z1 - z0) + 0.5 * b * (z1 * z1 - z0 * z0);
  }
  return 0.0;
}

double Segment::derivative(double z) const {
  switch (kind) {
    case SegmentKind::Constant:
      return 0.0;
    case SegmentKind::Hyperbolic:
      return -a / (z * z);
    case SegmentKind::Linear:
      return b;
  }
  return 0.0;
}

Segment constant_segment(double lo, double hi, double c) {
  return Segment{lo, hi, SegmentKind::Constant, c, 0.0};
}

Segment hyperbolic_segment(double lo, double hi, double a) {
  return Segment{lo, hi, SegmentKind::Hyperbolic, a, 0.0};
}

Segment linear_segment(double lo, double hi, double intercept, double slope) {
  return Segment{lo, hi, SegmentKind::Linear, intercept, slope};
}

PiecewiseFn::PiecewiseFn(FnRole role, std::vector<Segment> segments)
    : role_(role), segments_(std::move(segments)) {
  require(!segments_.empty(), "piecewise function needs at least one segment");
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
  require(segments_.front().lo == 0.0, "segments must start at 0");
  require(segments_.back().hi == 1.0, "segments must end at 1");
  for (size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    require(s.lo < s.hi, "segment needs lo < hi");
    require(s.lo >= 0.0 && s.hi <= 1.0, "segment outside [0,1]");
    if (s.kind == SegmentKind::Hyperbolic)
      require(s.lo > 0.0, "hyperbolic segment needs lo > 0");
    if (i + 1 < segments_.size())
      require(s.hi == segments_[i + 1].lo,
              "segments must cover [0,1] without gaps or overlaps");
  }
  // Monotonicity: weakly decreasing for demand, weakly increasing for cost.
  const bool demand = (role_ == FnRole::Demand);
  for (const Segment& s : segments_) {
    double d_lo = s.derivative(s.kind == SegmentKind::Hyperbolic ? s.lo
                                                                 : s.hi);
    double d_hi = s.derivative(s.hi);
    if (demand) {
      require(d_lo <= kRelTol && d_hi <= kRelTol,
              "demand segment must be weakly decreasing");
    } else {
      require(d_lo >= -kRelTol && d_hi >= -kRelTol,
              "cost segment must be weakly increasing");
    }
  }
  for (size_t i = 0; i + 1 < segments_.size(); ++i) {
    const Segment& left = segments_[i];
    const Segment& right = segments_[i + 1];
    double lval = left.value(left.hi);
    double rlim = right.value(right.lo == 0.0 ? 0.0 : right.lo);
    if (right.kind == SegmentKind::Hyperbolic) rlim = right.a / right.lo;
    if (demand)
      require(rlim <= lval + kRelTol, "demand must be weakly decreasing");
    else
      require(rlim >= lval - kRelTol, "cost must be weakly increasing");
  }

  breakpoints_.reserve(segments_.size() + 1);
  breakpoints_.push_back(0.0);
  for (const Segment& s : segments_) breakpoints_.push_back(s.hi);
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()),
                     breakpoints_.end());
}

const Segment& PiecewiseFn::segment_at(double z) const {
  // Left-limit convention: pick the segment with lo < z <= hi.
  for (const Segment& s : segments_)
    if (z > s.lo && z <= s.hi) return s;
  return segments_.front();
}

double PiecewiseFn::operator()(double z) const {
  require_domain(z);
  if (z == 0.0) {
    if (role_ == FnRole::Cost) return 0.0;
    return segments_.front().value(0.0);
  }
  return segment_at(z).value(z);
}

double PiecewiseFn::integral(double q) const {
  require_domain(q);
  double total = 0.0;
  for (const Segment& s : segments_) {
    if (s.lo >= q) break;
    total += s.integral(s.lo, std::min(s.hi, q));
  }
  return total;
}

double PiecewiseFn::sup_after(double q) const {
  if (q >= 1.0) return 0.0;
  double sup = 0.0;
  for (const Segment& s : segments_) {
    if (s.hi <= q) continue;
    double lo = std::max(s.lo, q);
    // Monotone segments: sup over (lo, hi] is at an endpoint limit.
    double at_lo =
        s.kind == SegmentKind::Hyperbolic ? s.a / lo : s.value(lo);
    double at_hi = s.value(s.hi);
    sup = std::max({sup, at_lo, at_hi});
  }
  return sup;
}

Market::Market(PiecewiseFn demand_fn, PiecewiseFn cost_fn, double vbar)
    : demand(std::move(demand_fn)), cost(std::move(cost_fn)), v_bar(vbar) {
  require(demand.role() == FnRole::Demand, "market needs a Demand function");
  require(cost.role() == FnRole::Cost, "market needs a Cost function");
  require(v_bar > 0.0, "v_bar must be positive");
  for (const Segment& s : demand.segments()) {
    double hi_val = s.kind == SegmentKind::Hyperbolic ? s.a / s.lo
                                                      : std::max(s.value(s.lo),
                                                                 s.value(s.hi));
    require(hi_val <= v_bar * (1.0 + 1e-12),
            "demand exceeds v_bar");
    require(s.value(s.hi) >= -1e-12 * v_bar, "demand must be nonnegative");
  }
}

PiecewiseFn make_V(double q, double p, double v_bar) {
  require(q > 0.0 && q <= 1.0, "make_V needs q in (0,1]");
  require(p >= 0.0, "make_V needs p >= 0");
  if (p > v_bar) throw std::domain_error("make_V: p exceeds v_bar");
  std::vector<Segment> segs;
  if (q == 1.0) {
    segs.push_back(constant_segment(0.0, 1.0, v_bar));
  } else {
    segs.push_back(constant_segment(0.0, q, v_bar));
    segs.push_back(hyperbolic_segment(q, 1.0, q * p));
  }
  return PiecewiseFn(FnRole::Demand, std::move(segs));
}

PiecewiseFn make_W(double q, double p, double v_bar) {
  require(q > 0.0 && q <= 1.0, "make_W needs q in (0,1]");
  require(p >= 0.0, "make_W needs p >= 0");
  if (p > v_bar) throw std::domain_error("make_W: p exceeds v_bar");
  std::vector<Segment> segs;
  if (q == 1.0) {
    segs.push_back(constant_segment(0.0, 1.0, p));
  } else {
    segs.push_back(constant_segment(0.0, q, p));
    segs.push_back(constant_segment(q, 1.0, 0.0));
  }
  return PiecewiseFn(FnRole::Demand, std::move(segs));
}

PiecewiseFn zero_cost() {
  return PiecewiseFn(FnRole::Cost, {constant_segment(0.0, 1.0, 0.0)});
}

PiecewiseFn fixed_cost(double f) {
  require(f >= 0.0, "fixed cost must be nonnegative");
  return PiecewiseFn(FnRole::Cost, {constant_segment(0.0, 1.0, f)});
}

PiecewiseFn two_tier_cost(double q_lo, double jump) {
  require(jump >= 0.0, "cost jump must be nonnegative");
  if (q_lo <= 0.0) return fixed_cost(jump);
  if (q_lo >= 1.0) return zero_cost();
  return PiecewiseFn(FnRole::Cost, {constant_segment(0.0, q_lo, 0.0),
                                    constant_segment(q_lo, 1.0, jump)});
}

PiecewiseFn affine_cost(double f, double c) {
  require(f >= 0.0 && c >= 0.0, "affine cost needs f, c >= 0");
  return PiecewiseFn(FnRole::Cost, {linear_segment(0.0, 1.0, f, c)});
}

double total_value(const Market& m, double q) { return m.demand.integral(q); }

namespace detail {

std::pair<double, double> maximize_scalar(
    const std::vector<double>& candidates, double lo, double hi, int grid_n,
    const std::function<double(double)>& f) {
  std::vector<double> xs(candidates);
  for (int i = 0; i < grid_n; ++i)
    xs.push_back(lo + (hi - lo) * static_cast<double>(i) / (grid_n - 1));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::remove_if(xs.begin(), xs.end(),
                          [&](double x) { return x < lo || x > hi; }),
           xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> fs(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) fs[i] = f(xs[i]);

  double best_x = xs[0], best_f = fs[0];
  for (size_t i = 0; i < xs.size(); ++i)
    if (fs[i] > best_f) {
      best_f = fs[i];
      best_x = xs[i];
    }

  // Golden-section polish inside brackets around local maxima. Interior
  // points of a flat plateau are skipped: the function is constant there and
  // refinement can only matter where a neighbour differs.
  constexpr double kInvPhi = 0.6180339887498949;
  for (size_t i = 0; i < xs.size(); ++i) {
    bool local_max = (i == 0 || fs[i] >= fs[i - 1]) &&
                     (i + 1 == xs.size() || fs[i] >= fs[i + 1]);
    if (!local_max) continue;
    bool plateau_interior = i > 0 && i + 1 < xs.size() &&
                            fs[i] == fs[i - 1] && fs[i] == fs[i + 1];
    if (plateau_interior) continue;
    double a = (i == 0) ? xs[i] : xs[i - 1];
    double b = (i + 1 == xs.size()) ? xs[i] : xs[i + 1];
    if (b - a < 1e-14) continue;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
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
    double xm = 0.5 * (a + b), fm = f(xm);
    if (fm > best_f) {
      best_f = fm;
      best_x = xm;
    }
  }
  return {best_f, best_x};
}

}  // namespace detail

SocialOpt social_opt(const Market& m) { return social_opt(m, 4001); }

SocialOpt social_opt(const Market& m, int grid) {
  std::vector<double> candidates;
  for (double b : m.demand.breakpoints()) candidates.push_back(b);
  for (double b : m.cost.breakpoints()) candidates.push_back(b);
  // Interior stationary points: V(q) equals marginal cost on differentiable
  // stretches. Solved per segment pair where a closed form exists.
  for (const Segment& d : m.demand.segments()) {
    for (const Segment& c : m.cost.segments()) {
      double lo = std::max(d.lo, c.lo);
      double hi = std::min(d.hi, c.hi);
      if (lo >= hi) continue;
      if (c.kind == SegmentKind::Linear && c.b > 0.0) {
        switch (d.kind) {
          case SegmentKind::Hyperbolic:
            candidates.push_back(d.a / c.b);
            break;
          case SegmentKind::Linear:
            if (d.b != 0.0) candidates.push_back((c.b - d.a) / d.b);
            break;
          case SegmentKind::Constant:
            break;
        }
      }
    }
  }

  auto surplus = [&](double q) {
    return total_value(m, q) - m.cost(q);
  };
  auto [value, q_star] = detail::maximize_scalar(candidates, 0.0, 1.0, grid,
                                                 surplus);
  if (value < 0.0) {
    value = 0.0;
    q_star = 0.0;
  }
  return SocialOpt{value, q_star};
}

double distortion(const Market& m, double q, const SocialOpt& opt) {
  double d = opt.value - (total_value(m, q) - m.cost(q));
  return std::max(d, 0.0);
}

double distortion(const Market& m, double q) {
  return distortion(m, q, social_opt(m));
}

}  // namespace regcap
