#ifndef REGCAP_ADVERSARY_HPP
#define REGCAP_ADVERSARY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "regcap/analysis.hpp"
#include "regcap/constants.hpp"
#include "regcap/firm.hpp"
#include "regcap/market.hpp"
#include "regcap/policy.hpp"

namespace regcap {

enum class ScenarioLabel {
  Overproduction,  // step demand W_{q,p} with fixed cost equal to revenue
  UnderTwoTier,    // V_{q,p} with a two-tier cost
  UnderFree,       // V_{q,p} with zero cost
  FlatFixed,       // W_{q,v_bar} with a fixed cost
  Random,
};

std::string to_string(ScenarioLabel label);

struct ScenarioParams {
  double q = 1.0;
  double p = 0.0;
  double q_lo = 0.0;   // two-tier threshold
  double fixed = 0.0;  // fixed cost / cost jump
};

struct Scenario {
  Market market;
  ScenarioLabel label;
  ScenarioParams params;
};

struct CertificationReport {
  std::string policy;
  double alpha;
  double lower_bound = 0.0;
  std::optional<Scenario> lower_witness;
  double upper_sweep = 0.0;
  std::optional<Scenario> upper_witness;
  std::string verdict;
};

// The worst-case families used in the lower-bound arguments:
//  (a) W_{q,p} plus a fixed cost of rho(q,p), wherever the policy subsidises
//  (b) V_{q,p} with a two-tier cost jumping by (q - q_lo) k_alpha
//  (c) V_{q,p} with zero cost
//  (d) W_{q,v_bar} with a fixed cost, including one equal to rho_bar(q)
// All costs except (b)'s are fixed costs; the q_lo = 0 slice of (b) is also
// a fixed cost.
std::vector<Scenario> proof_library(const Policy& pol,
                                    const AlphaConstants& consts,
                                    int resolution);

struct AdversaryConfig {
  FirmConfig firm;
  int polish_witnesses = 5;
  int polish_iterations = 200;
  AdversaryConfig() {
    firm.q_grid = 129;
    firm.opt_grid = 129;
  }
};

// Max regret over the proof library with local polish around the best
// witnesses. For any policy this reaches at least r_alpha (up to grid
// tolerance) at resolution >= 201.
CertificationReport certify_lower_bound(const Policy& pol,
                                        const AlphaConstants& consts,
                                        int resolution,
                                        const AdversaryConfig& cfg = {});

// Max regret over the proof library plus seeded random markets.
CertificationReport sweep_upper_bound(const Policy& pol,
                                      const AlphaConstants& consts,
                                      int resolution, int random_count,
                                      std::uint64_t seed,
                                      const AdversaryConfig& cfg = {});

// Random market: step demand with 1-8 steps and a random fixed, two-tier or
// decreasing-average cost.
Market random_market(std::mt19937_64& rng, double v_bar);

}  // namespace regcap

#endif  // REGCAP_ADVERSARY_HPP
