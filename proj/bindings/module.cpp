#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "regcap/adversary.hpp"
#include "regcap/analysis.hpp"
#include "regcap/firm.hpp"
#include "regcap/market.hpp"
#include "regcap/policy.hpp"
#include "regcap/scenario_io.hpp"

namespace py = pybind11;
using namespace regcap;

PYBIND11_MODULE(_regcap, m) {
  m.doc() = "worst-case-regret monopoly regulation toolkit";

  py::class_<AlphaConstants>(m, "AlphaConstants")
      .def_readonly("alpha", &AlphaConstants::alpha)
      .def_readonly("v_bar", &AlphaConstants::v_bar)
      .def_readonly("k_alpha", &AlphaConstants::k_alpha)
      .def_readonly("r_alpha", &AlphaConstants::r_alpha)
      .def_readonly("q_alpha", &AlphaConstants::q_alpha)
      .def_readonly("s_alpha", &AlphaConstants::s_alpha);

  py::class_<Market>(m, "Market");

  py::class_<Policy>(m, "Policy")
      .def_static("laissez_faire", &Policy::laissez_faire)
      .def_static("price_cap", &Policy::price_cap, py::arg("k"))
      .def_static("lump_sum", &Policy::lump_sum, py::arg("q_tilde"),
                  py::arg("s"))
      .def_static("cap_subsidy", &Policy::optimal_cap_subsidy, py::arg("k"),
                  py::arg("s"))
      .def("describe", &Policy::describe);

  py::enum_<TieBreak>(m, "TieBreak")
      .value("AGAINST", TieBreak::AgainstRegulator)
      .value("FOR", TieBreak::ForRegulator)
      .value("ALL", TieBreak::All);

  py::class_<Outcome>(m, "Outcome")
      .def_readonly("q", &Outcome::q)
      .def_readonly("p", &Outcome::p)
      .def_readonly("cs", &Outcome::cs)
      .def_readonly("fp", &Outcome::fp)
      .def_readonly("dstr", &Outcome::dstr)
      .def_readonly("rgrt", &Outcome::rgrt)
      .def_readonly("opt", &Outcome::opt);

  py::class_<MaximinResult>(m, "MaximinResult")
      .def_readonly("value", &MaximinResult::value)
      .def_readonly("q", &MaximinResult::q)
      .def_readonly("p", &MaximinResult::p);

  py::class_<CertificationReport>(m, "CertificationReport")
      .def_readonly("policy", &CertificationReport::policy)
      .def_readonly("alpha", &CertificationReport::alpha)
      .def_readonly("lower_bound", &CertificationReport::lower_bound)
      .def_readonly("upper_sweep", &CertificationReport::upper_sweep)
      .def_readonly("verdict", &CertificationReport::verdict);

  m.def("constants", &constants, py::arg("alpha"), py::arg("v_bar") = 1.0);
  m.def("r_alpha_numeric", &r_alpha_numeric, py::arg("alpha"),
        py::arg("v_bar") = 1.0, py::arg("grid") = 801);
  m.def("optimal_policy", &optimal_policy, py::arg("constants"), py::arg("s"));
  m.def(
      "step_market",
      [](double q, double p, double fixed, double v_bar) {
        return Market(make_W(q, p, v_bar), fixed_cost(fixed), v_bar);
      },
      py::arg("q"), py::arg("p"), py::arg("fixed") = 0.0,
      py::arg("v_bar") = 1.0);
  m.def(
      "extremal_market",
      [](double q, double p, double fixed, double v_bar) {
        return Market(make_V(q, p, v_bar), fixed_cost(fixed), v_bar);
      },
      py::arg("q"), py::arg("p"), py::arg("fixed") = 0.0,
      py::arg("v_bar") = 1.0);
  m.def(
      "parse_scenario",
      [](const std::string& text) {
        std::istringstream in(text);
        ScenarioFile sf = parse_scenario(in);
        py::dict out;
        out["has_market"] = sf.market.has_value();
        if (sf.policy) out["policy"] = *sf.policy;
        return out;
      },
      py::arg("text"));
  m.def(
      "best_responses",
      [](const Policy& pol, const Market& mk, TieBreak tie) {
        return best_responses(pol, mk, tie);
      },
      py::arg("policy"), py::arg("market"),
      py::arg("tie") = TieBreak::AgainstRegulator);
  m.def(
      "evaluate",
      [](const Policy& pol, const Market& mk, double alpha, double q,
         double p) { return outcome(pol, mk, alpha, q, p); },
      py::arg("policy"), py::arg("market"), py::arg("alpha"), py::arg("q"),
      py::arg("p"));
  m.def("policy_regret",
        [](const Policy& pol, const Market& mk, double alpha) {
          return policy_regret(pol, mk, alpha);
        },
        py::arg("policy"), py::arg("market"), py::arg("alpha"));
  m.def(
      "certify_lower_bound",
      [](const Policy& pol, double alpha, double v_bar, int resolution) {
        return certify_lower_bound(pol, constants(alpha, v_bar), resolution);
      },
      py::arg("policy"), py::arg("alpha"), py::arg("v_bar") = 1.0,
      py::arg("resolution") = 41);
  m.def(
      "sweep_upper_bound",
      [](const Policy& pol, double alpha, double v_bar, int resolution,
         int random_count, std::uint64_t seed) {
        return sweep_upper_bound(pol, constants(alpha, v_bar), resolution,
                                 random_count, seed);
      },
      py::arg("policy"), py::arg("alpha"), py::arg("v_bar") = 1.0,
      py::arg("resolution") = 41, py::arg("random_count") = 100,
      py::arg("seed") = 0);
}
