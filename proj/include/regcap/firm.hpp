#ifndef REGCAP_FIRM_HPP
#define REGCAP_FIRM_HPP

#include <utility>
#include <vector>

#include "regcap/market.hpp"
#include "regcap/policy.hpp"

namespace regcap {

enum class TieBreak { AgainstRegulator, ForRegulator, All };

// A firm choice with its welfare accounting.
struct Outcome {
  double q;
  double p;
  double cs;    // consumers' surplus: total value minus firm revenue
  double fp;    // firm profit: revenue minus cost
  double dstr;  // distortion
  double rgrt;  // regret: dstr + (1-alpha) * fp
  double opt;   // social optimum of the market
};

struct FirmConfig {
  int q_grid = 2001;          // uniform quantity grid in the candidate set
  int table_p_grid = 201;     // extra price scan for Table policies
  int opt_grid = 4001;        // social optimum grid used by regret sweeps
  double tie_tol_scale = 1e-9;  // tie tolerance as a multiple of v_bar
  bool refine = true;           // golden-section polish around grid maxima
};

// Profit-maximizing feasible choices (p <= V(q), not rejected). All
// candidates within the tie tolerance of the maximal profit are retained.
// AgainstRegulator orders them worst-for-the-regulator first (descending
// distortion; tied profits make this the descending-regret order for every
// alpha), ForRegulator the reverse, All in lexicographic (q, p) order.
std::vector<std::pair<double, double>> best_responses(
    const Policy& pol, const Market& m, TieBreak tie,
    const FirmConfig& cfg = {});

// Welfare accounting for one feasible, non-rejected choice.
Outcome outcome(const Policy& pol, const Market& m, double alpha, double q,
                double p);
Outcome outcome(const Policy& pol, const Market& m, double alpha, double q,
                double p, const SocialOpt& opt);

}  // namespace regcap

#endif  // REGCAP_FIRM_HPP
