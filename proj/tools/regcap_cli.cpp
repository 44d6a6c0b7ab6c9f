#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "regcap/adversary.hpp"
#include "regcap/analysis.hpp"
#include "regcap/firm.hpp"
#include "regcap/market.hpp"
#include "regcap/policy.hpp"
#include "regcap/scenario_io.hpp"

using namespace regcap;

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitInputError = 2;

std::string num12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << text;
}

TieBreak tie_from_string(const std::string& s) {
  if (s == "against") return TieBreak::AgainstRegulator;
  if (s == "for") return TieBreak::ForRegulator;
  if (s == "all") return TieBreak::All;
  throw std::runtime_error("unknown tie mode '" + s + "'");
}

int cmd_constants(const std::vector<double>& alphas, double v_bar, int grid,
                  const std::string& out_path) {
  std::vector<double> grid_alphas = alphas;
  if (grid_alphas.empty())
    for (int i = 0; i <= 20; ++i) grid_alphas.push_back(i * 0.05);
  std::string csv = "alpha,k_alpha,r_alpha,q_alpha,s_alpha,r_numeric,gap\n";
  for (double a : grid_alphas) {
    AlphaConstants c = constants(a, v_bar);
    MaximinResult r = r_alpha_numeric(a, v_bar, grid);
    double gap = std::abs(r.value - c.r_alpha);
    csv += num12(a) + "," + num12(c.k_alpha) + "," + num12(c.r_alpha) + "," +
           num12(c.q_alpha) + "," + num12(c.s_alpha) + "," + num12(r.value) +
           "," + num12(gap) + "\n";
  }
  write_text(out_path, csv);
  return 0;
}

struct LoadedInputs {
  std::optional<Market> market;
  std::optional<Policy> policy;
};

LoadedInputs load_files(const std::vector<std::string>& paths) {
  LoadedInputs in;
  for (const std::string& path : paths) {
    ScenarioFile sf = parse_scenario_file(path);
    if (sf.market) in.market = std::move(sf.market);
    if (sf.policy) in.policy = std::move(sf.policy);
  }
  return in;
}

int cmd_eval(const std::vector<std::string>& paths, double alpha,
             const std::string& tie, const std::string& out_path) {
  LoadedInputs in = load_files(paths);
  if (!in.policy) throw std::runtime_error("no [policy] block in the inputs");
  if (!in.market) throw std::runtime_error("no market blocks in the inputs");
  auto responses = best_responses(*in.policy, *in.market,
                                  tie_from_string(tie));
  SocialOpt opt = social_opt(*in.market);
  std::ostringstream out;
  out << "policy: " << in.policy->describe() << "\n";
  out << "alpha: " << num12(alpha) << "\n";
  out << "social optimum: " << num12(opt.value) << " at q = "
      << num12(opt.q_star) << "\n";
  out << "tied best responses: " << responses.size() << "\n";
  out << "q,p,cs,fp,dstr,rgrt\n";
  double worst = 0.0;
  for (auto [q, p] : responses) {
    Outcome o = outcome(*in.policy, *in.market, alpha, q, p, opt);
    worst = std::max(worst, o.rgrt);
    out << num12(o.q) << "," << num12(o.p) << "," << num12(o.cs) << ","
        << num12(o.fp) << "," << num12(o.dstr) << "," << num12(o.rgrt)
        << "\n";
  }
  out << "worst regret: " << num12(worst) << "\n";
  write_text(out_path, out.str());
  return 0;
}

bool claims_optimality(const Policy& pol, const AlphaConstants& c) {
  return pol.kind == PolicyKind::OptimalCapSubsidy &&
         std::abs(pol.k - c.k_alpha) <= 1e-9 * c.v_bar &&
         pol.s >= c.s_alpha - 1e-9 * c.v_bar &&
         pol.s <= c.r_alpha + 1e-9 * c.v_bar;
}

int cmd_wcr(const std::vector<std::string>& paths, double alpha, double v_bar,
            int resolution, int random_count, std::uint64_t seed,
            const std::string& out_path) {
  LoadedInputs in = load_files(paths);
  if (!in.policy) throw std::runtime_error("no [policy] block in the inputs");
  AlphaConstants c = constants(alpha, v_bar);
  CertificationReport lo = certify_lower_bound(*in.policy, c, resolution);
  CertificationReport hi =
      sweep_upper_bound(*in.policy, c, resolution, random_count, seed);
  std::ostringstream out;
  out << "policy: " << lo.policy << "\n";
  out << "alpha: " << num12(alpha) << "\n";
  out << "r_alpha: " << num12(c.r_alpha) << "\n";
  out << "certified lower bound: " << num12(lo.lower_bound) << " ("
      << lo.verdict << ")\n";
  out << "sweep upper bound: " << num12(hi.upper_sweep) << " (" << hi.verdict
      << ")\n";
  if (lo.lower_witness) {
    out << "\nworst witness:\n" << serialize_scenario(*lo.lower_witness);
  }
  write_text(out_path, out.str());
  bool claimed = claims_optimality(*in.policy, c);
  if (claimed && hi.upper_sweep > c.r_alpha + 1e-6 * v_bar)
    return kExitVerifyFailure;
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int resolution,
               const std::string& out_path) {
  std::ostringstream out;
  bool pass = true;
  if (suite == "claim1") {
    std::mt19937_64 rng(seed);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
      Market m = random_market(rng, 1.0);
      SocialOpt opt = social_opt(m);
      Policy pol = Policy::hard_cap(
          Policy::lump_sum(opt.q_star, m.cost(opt.q_star)), 0.0);
      auto br = best_responses(pol, m, TieBreak::ForRegulator);
      Outcome o = outcome(pol, m, 0.0, br[0].first, br[0].second, opt);
      if (std::abs(o.rgrt) > 1e-9) ++bad;
    }
    pass = bad == 0;
    out << "claim1: " << (100 - bad)
        << "/100 markets reach zero regret under complete information\n";
  } else if (suite == "lemma1") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      Market m = random_market(rng, 1.0);
      double q_bar = unif(rng);
      double lo = m.demand.sup_after(q_bar);
      double p_bar = lo + (m.demand(q_bar) - lo) * unif(rng);
      if (!lemma1_check(m, q_bar, p_bar).holds) ++bad;
    }
    pass = bad == 0;
    out << "lemma1: " << (1000 - bad)
        << "/1000 markets satisfy the underproduction bound\n";
  } else if (suite == "theorem3-converse") {
    const double delta = 0.05;
    struct Probe {
      double alpha;
      Policy pol;
      const char* what;
    };
    AlphaConstants c0 = constants(0.0, 1.0);
    AlphaConstants c5 = constants(0.5, 1.0);
    AlphaConstants c1 = constants(1.0, 1.0);
    std::vector<Probe> probes;
    probes.push_back(
        {0.0, Policy::optimal_cap_subsidy(c0.k_alpha + delta, c0.s_alpha),
         "cap raised"});
    probes.push_back(
        {1.0, Policy::optimal_cap_subsidy(c1.k_alpha, c1.s_alpha - delta),
         "subsidy lowered"});
    probes.push_back(
        {0.5, Policy::optimal_cap_subsidy(c5.k_alpha, c5.r_alpha + delta),
         "subsidy ceiling raised"});
    for (const Probe& pr : probes) {
      AlphaConstants c = constants(pr.alpha, 1.0);
      CertificationReport rep = certify_lower_bound(pr.pol, c, resolution);
      bool ok = rep.lower_bound > c.r_alpha + 0.01;
      if (!ok) pass = false;
      out << "theorem3-converse (" << pr.what << ", alpha = "
          << num12(pr.alpha) << "): regret " << num12(rep.lower_bound)
          << (ok ? " > " : " <= ") << "r_alpha + 0.01\n";
    }
  } else {
    throw std::runtime_error("unknown suite '" + suite +
                             "'; expected claim1, lemma1 or theorem3-converse");
  }
  out << (pass ? "PASS" : "FAIL") << "\n";
  write_text(out_path, out.str());
  return pass ? 0 : kExitVerifyFailure;
}

int cmd_figure1(const std::string& out_path, double v_bar) {
  std::string csv = "alpha,k_alpha,r_alpha,q_alpha,s_alpha\n";
  for (int i = 0; i <= 200; ++i) {
    double a = i / 200.0;
    AlphaConstants c = constants(a, v_bar);
    csv += num12(a) + "," + num12(c.k_alpha) + "," + num12(c.r_alpha) + "," +
           num12(c.q_alpha) + "," + num12(c.s_alpha) + "\n";
  }
  write_text(out_path, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"worst-case-regret toolkit for monopoly regulation"};
  app.require_subcommand(1);

  double alpha = 0.0;
  double v_bar = 1.0;
  int grid = 801;
  int random_count = 1000;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string tie = "against";
  std::vector<double> alphas;
  std::vector<std::string> files;
  std::string suite;

  CLI::App* c_const = app.add_subcommand(
      "constants", "closed-form constants with a numeric cross-check");
  c_const->add_option("--alpha", alphas, "alpha values (default: 0..1 by 0.05)");
  c_const->add_option("--v-bar", v_bar, "value scale");
  c_const->add_option("--grid", grid, "maximin grid resolution");
  c_const->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI::App* c_eval = app.add_subcommand(
      "eval", "firm best responses and welfare for a policy and market");
  c_eval->add_option("files", files, "scenario/policy/market files")
      ->required()
      ->check(CLI::ExistingFile);
  c_eval->add_option("--alpha", alpha, "profit weight");
  c_eval->add_option("--tie", tie, "tie-breaking: against, for or all")
      ->check(CLI::IsMember({"against", "for", "all"}));
  c_eval->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* c_wcr = app.add_subcommand(
      "wcr", "certify worst-case regret bounds for a policy");
  c_wcr->add_option("files", files, "policy file")
      ->required()
      ->check(CLI::ExistingFile);
  c_wcr->add_option("--alpha", alpha, "profit weight");
  c_wcr->add_option("--v-bar", v_bar, "value scale");
  c_wcr->add_option("--grid", grid, "scenario library resolution")
      ->default_val(101);
  c_wcr->add_option("--random", random_count, "random scenarios in the sweep");
  c_wcr->add_option("--seed", seed, "random sweep seed");
  c_wcr->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* c_verify = app.add_subcommand(
      "verify", "run a named verification suite");
  c_verify->add_option("suite", suite, "claim1, lemma1 or theorem3-converse")
      ->required();
  c_verify->add_option("--seed", seed, "random market seed");
  c_verify->add_option("--grid", grid, "scenario library resolution")
      ->default_val(101);
  c_verify->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* c_fig = app.add_subcommand(
      "figure1", "dense constants table as CSV");
  c_fig->add_option("--out", out_path, "output CSV path (default stdout)");
  c_fig->add_option("--v-bar", v_bar, "value scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (c_const->parsed()) return cmd_constants(alphas, v_bar, grid, out_path);
    if (c_eval->parsed()) return cmd_eval(files, alpha, tie, out_path);
    if (c_wcr->parsed())
      return cmd_wcr(files, alpha, v_bar, grid, random_count, seed, out_path);
    if (c_verify->parsed()) return cmd_verify(suite, seed, grid, out_path);
    if (c_fig->parsed()) return cmd_figure1(out_path, v_bar);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return 0;
}
