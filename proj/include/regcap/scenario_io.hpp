#ifndef REGCAP_SCENARIO_IO_HPP
#define REGCAP_SCENARIO_IO_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "regcap/adversary.hpp"
#include "regcap/market.hpp"
#include "regcap/policy.hpp"

namespace regcap {

// Line-oriented `key = value` document with [section] headers; repeated
// blocks use [[market.demand.segment]] / [[market.cost.segment]] headers.
// Numbers are decimal with optional exponent and round-trip bit-exactly.

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

struct ScenarioFile {
  std::optional<Market> market;
  std::optional<Policy> policy;
  std::optional<ScenarioLabel> label;
  ScenarioParams params;
};

ScenarioFile parse_scenario(std::istream& in);
ScenarioFile parse_scenario_file(const std::string& path);

std::string serialize_market(const Market& m);
std::string serialize_policy(const Policy& pol);
std::string serialize_scenario(const Scenario& sc);

// Full-precision decimal formatting (round-trips through strtod).
std::string format_number(double x);

}  // namespace regcap

#endif  // REGCAP_SCENARIO_IO_HPP
