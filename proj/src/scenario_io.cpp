#include "regcap/scenario_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace regcap {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError(line, "not a number: '" + text + "'");
  return v;
}

struct RawBlock {
  std::string name;
  int line;
  std::map<std::string, std::pair<std::string, int>> kv;

  bool has(const std::string& key) const { return kv.count(key) > 0; }
  double num(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ParseError(line, "block [" + name + "] is missing key '" + key +
                                 "'");
    return parse_number(it->second.first, it->second.second);
  }
  double num_or(const std::string& key, double fallback) const {
    return has(key) ? num(key) : fallback;
  }
  std::string str(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ParseError(line, "block [" + name + "] is missing key '" + key +
                                 "'");
    return it->second.first;
  }
};

Segment parse_segment(const RawBlock& b) {
  std::string kind = b.str("kind");
  double lo = b.num("lo");
  double hi = b.num("hi");
  if (!(lo < hi))
    throw ParseError(b.line, "segment in [" + b.name + "] needs lo < hi");
  if (kind == "constant") return constant_segment(lo, hi, b.num("c"));
  if (kind == "hyperbolic") return hyperbolic_segment(lo, hi, b.num("a"));
  if (kind == "linear")
    return linear_segment(lo, hi, b.num("intercept"), b.num("slope"));
  throw ParseError(b.line, "unknown segment kind '" + kind + "'");
}

Policy parse_policy_block(const RawBlock& b) {
  std::string kind = b.str("kind");
  if (kind == "laissez_faire") return Policy::laissez_faire();
  if (kind == "price_cap") return Policy::price_cap(b.num("k"));
  if (kind == "lump_sum")
    return Policy::lump_sum(b.num("q_tilde"), b.num("s"));
  if (kind == "cap_subsidy" || kind == "optimal_cap_subsidy")
    return Policy::optimal_cap_subsidy(b.num("k"), b.num("s"));
  if (kind == "hard_cap") {
    std::string inner = b.str("inner");
    Policy ip;
    if (inner == "laissez_faire")
      ip = Policy::laissez_faire();
    else if (inner == "price_cap")
      ip = Policy::price_cap(b.num("k"));
    else if (inner == "cap_subsidy" || inner == "optimal_cap_subsidy")
      ip = Policy::optimal_cap_subsidy(b.num("k"), b.num("s"));
    else
      throw ParseError(b.line, "unsupported hard_cap inner '" + inner + "'");
    return Policy::hard_cap(std::move(ip), b.num("k"));
  }
  if (kind == "table") {
    std::ifstream f(b.str("table.file"));
    if (!f)
      throw ParseError(b.line, "cannot open table file " + b.str("table.file"));
    std::map<double, std::map<double, double>> grid;
    std::string row;
    int line_no = 0;
    while (std::getline(f, row)) {
      ++line_no;
      row = trim(row);
      if (row.empty() || row[0] == '#' || row.rfind("q,", 0) == 0) continue;
      std::stringstream ss(row);
      std::string a, bb, c;
      if (!std::getline(ss, a, ',') || !std::getline(ss, bb, ',') ||
          !std::getline(ss, c))
        throw ParseError(line_no, "table row needs q,p,revenue");
      grid[parse_number(a, line_no)][parse_number(bb, line_no)] =
          parse_number(c, line_no);
    }
    RevenueTable t;
    for (auto& [q, rowv] : grid) t.qs.push_back(q);
    if (grid.empty()) throw ParseError(b.line, "table file is empty");
    for (auto& [p, v] : grid.begin()->second) t.ps.push_back(p);
    for (auto& [q, rowv] : grid) {
      if (rowv.size() != t.ps.size())
        throw ParseError(b.line, "table is not a full grid");
      for (auto& [p, v] : rowv) t.values.push_back(v);
    }
    return Policy::from_table(std::move(t));
  }
  throw ParseError(b.line, "unknown policy kind '" + kind + "'");
}

std::optional<ScenarioLabel> label_from_string(const std::string& s) {
  if (s == "overproduction") return ScenarioLabel::Overproduction;
  if (s == "under_two_tier") return ScenarioLabel::UnderTwoTier;
  if (s == "under_free") return ScenarioLabel::UnderFree;
  if (s == "flat_fixed") return ScenarioLabel::FlatFixed;
  if (s == "random") return ScenarioLabel::Random;
  return std::nullopt;
}

}  // namespace

ScenarioFile parse_scenario(std::istream& in) {
  std::vector<RawBlock> blocks;
  RawBlock* current = nullptr;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      bool repeated = t.rfind("[[", 0) == 0;
      size_t close = t.find(repeated ? "]]" : "]");
      if (close == std::string::npos)
        throw ParseError(line_no, "unterminated section header");
      std::string name = t.substr(repeated ? 2 : 1, close - (repeated ? 2 : 1));
      blocks.push_back(RawBlock{name, line_no, {}});
      current = &blocks.back();
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, "expected 'key = value'");
    if (!current) throw ParseError(line_no, "key outside any [section]");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    current->kv[key] = {value, line_no};
  }

  ScenarioFile out;
  double v_bar = 1.0;
  double cost_fixed = 0.0;
  std::vector<Segment> demand_segs, cost_segs;
  bool have_market = false;
  for (const RawBlock& b : blocks) {
    if (b.name == "market") {
      have_market = true;
      v_bar = b.num_or("v_bar", 1.0);
      cost_fixed = b.num_or("cost.fixed", 0.0);
    } else if (b.name == "market.demand.segment") {
      have_market = true;
      demand_segs.push_back(parse_segment(b));
    } else if (b.name == "market.cost.segment") {
      have_market = true;
      cost_segs.push_back(parse_segment(b));
    } else if (b.name == "policy") {
      out.policy = parse_policy_block(b);
    } else if (b.name == "scenario") {
      out.label = label_from_string(b.str("label"));
      out.params.q = b.num_or("q", 1.0);
      out.params.p = b.num_or("p", 0.0);
      out.params.q_lo = b.num_or("q_lo", 0.0);
      out.params.fixed = b.num_or("fixed", 0.0);
    } else {
      throw ParseError(b.line, "unknown section [" + b.name + "]");
    }
  }
  if (have_market) {
    if (demand_segs.empty())
      throw ParseError(1, "market needs at least one demand segment");
    PiecewiseFn demand(FnRole::Demand, std::move(demand_segs));
    PiecewiseFn cost = zero_cost();
    if (!cost_segs.empty()) {
      if (cost_fixed != 0.0)
        for (Segment& s : cost_segs) s.a += cost_fixed;
      cost = PiecewiseFn(FnRole::Cost, std::move(cost_segs));
    } else if (cost_fixed != 0.0) {
      cost = fixed_cost(cost_fixed);
    }
    out.market = Market(std::move(demand), std::move(cost), v_bar);
  }
  return out;
}

ScenarioFile parse_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return parse_scenario(f);
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void append_segment(std::string& out, const std::string& section,
                    const Segment& s) {
  out += "[[" + section + "]]\n";
  out += "lo = " + format_number(s.lo) + "\n";
  out += "hi = " + format_number(s.hi) + "\n";
  switch (s.kind) {
    case SegmentKind::Constant:
      out += "kind = constant\nc = " + format_number(s.a) + "\n";
      break;
    case SegmentKind::Hyperbolic:
      out += "kind = hyperbolic\na = " + format_number(s.a) + "\n";
      break;
    case SegmentKind::Linear:
      out += "kind = linear\nintercept = " + format_number(s.a) +
             "\nslope = " + format_number(s.b) + "\n";
      break;
  }
  out += "\n";
}

}  // namespace

std::string serialize_market(const Market& m) {
  std::string out;
  out += "[market]\n";
  out += "v_bar = " + format_number(m.v_bar) + "\n\n";
  for (const Segment& s : m.demand.segments())
    append_segment(out, "market.demand.segment", s);
  for (const Segment& s : m.cost.segments())
    append_segment(out, "market.cost.segment", s);
  return out;
}

std::string serialize_policy(const Policy& pol) {
  std::string out = "[policy]\n";
  switch (pol.kind) {
    case PolicyKind::LaissezFaire:
      out += "kind = laissez_faire\n";
      break;
    case PolicyKind::PriceCap:
      out += "kind = price_cap\nk = " + format_number(pol.k) + "\n";
      break;
    case PolicyKind::LumpSum:
      out += "kind = lump_sum\nq_tilde = " + format_number(pol.q_tilde) +
             "\ns = " + format_number(pol.s) + "\n";
      break;
    case PolicyKind::OptimalCapSubsidy:
      out += "kind = cap_subsidy\nk = " + format_number(pol.k) +
             "\ns = " + format_number(pol.s) + "\n";
      break;
    case PolicyKind::HardCap:
      out += "kind = hard_cap\nk = " + format_number(pol.k) + "\n";
      if (pol.inner->kind == PolicyKind::OptimalCapSubsidy)
        out += "inner = cap_subsidy\ns = " + format_number(pol.inner->s) +
               "\n";
      else if (pol.inner->kind == PolicyKind::PriceCap)
        out += "inner = price_cap\n";
      else
        out += "inner = laissez_faire\n";
      break;
    case PolicyKind::Table:
      out += "kind = table\ntable.file = <inline tables not serialized>\n";
      break;
  }
  out += "\n";
  return out;
}

std::string serialize_scenario(const Scenario& sc) {
  std::string out = "[scenario]\n";
  out += "label = " + to_string(sc.label) + "\n";
  out += "q = " + format_number(sc.params.q) + "\n";
  out += "p = " + format_number(sc.params.p) + "\n";
  out += "q_lo = " + format_number(sc.params.q_lo) + "\n";
  out += "fixed = " + format_number(sc.params.fixed) + "\n\n";
  out += serialize_market(sc.market);
  return out;
}

}  // namespace regcap
