#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "iolb/core/error.hpp"
#include "iolb/pathfind/pathfind.hpp"
#include "iolb/pebblelab/game.hpp"
#include "iolb/pebblelab/partition.hpp"
#include "iolb/pebblelab/suite.hpp"

using namespace iolb;
using nlohmann::json;

namespace {

struct Config {
  std::string input;
  std::vector<std::string> sets;
  int S = 3;
  bool s_given = false;
  std::string variant = "std";
  bool no_slide = false;
  bool decompose = false;
  bool trace = false;
  int max_circuit = 4;
  long long budget = 4'000'000;
  long long cap = dfg::kDefaultVertexCap;
  std::string json_path;
  std::string out_path;
  std::string calc;
  std::string def = "nr";
  std::uint64_t seed = 1;
  int count = 200;
  bool mutate = false;
  std::string data_dir = IOLB_DATA_DIR;
};

poly::Binding parse_sets(const std::vector<std::string>& sets) {
  poly::Binding b;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) fail(ErrorKind::usage, "binding '" + s + "' is not NAME=VALUE");
    long long v = 0;
    try {
      size_t used = 0;
      v = std::stoll(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      fail(ErrorKind::usage, "binding '" + s + "' needs an integer value");
    }
    if (v < 1) fail(ErrorKind::usage, "binding '" + s + "' must be positive");
    b[s.substr(0, eq)] = v;
  }
  return b;
}

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorKind::input, "cannot write " + path);
  out << j.dump(2) << "\n";
}

// The text report is dropped when JSON goes to stdout.
std::ostream& text_out(const Config& cfg) {
  static std::ostream null(nullptr);
  return cfg.json_path == "-" ? null : std::cout;
}

std::string indent(const std::string& text, const std::string& pad) {
  std::string out, line;
  std::istringstream in(text);
  while (std::getline(in, line)) out += pad + line + "\n";
  return out;
}

json bound_json(const asym::AsymBound& b) {
  json cases = json::array();
  for (const auto& c : b.cases) {
    json pos = json::array(), neg = json::array();
    for (const auto& m : c.pos) pos.push_back(m.str());
    for (const auto& m : c.neg) neg.push_back(m.str());
    cases.push_back({{"region", c.region.str()}, {"pos", pos}, {"neg", neg}, {"text", b.render_case(c)}});
  }
  return {{"render", b.render()}, {"leading", path::render_leading(b)}, {"scale", b.scale.str()}, {"cases", cases}};
}

json lp_json(const path::Solved& s) {
  json cons = json::array();
  for (const auto& c : s.lp.cons) cons.push_back({{"text", c.str()}, {"unit", c.unit}});
  json cases = json::array();
  for (const auto& c : s.sol.cases) {
    json x = json::array();
    for (const auto& xi : c.x) x.push_back(xi.str());
    cases.push_back({{"region", c.region.str()}, {"x", x}, {"theta", c.theta.str()}});
  }
  return {{"vars", s.lp.vars}, {"constraints", cons}, {"solution", cases}};
}

// ---- analyze

int cmd_analyze(const Config& cfg) {
  auto g = dfg::classify_edges(dfg::load_program(cfg.input));
  if (cfg.max_circuit < 1) fail(ErrorKind::usage, "--max-circuit must be positive");
  path::Options opts;
  opts.max_len = cfg.max_circuit;
  opts.trace = cfg.trace;
  auto pa = path::analyze_program(g, opts);

  std::ostringstream out;
  json j;
  out << "program " << cfg.input << "\n";
  out << "edges\n";
  j["edges"] = json::array();
  for (const auto& e : g.edges) {
    out << "  " << e.name << ": " << g.stmts[e.src].name << " -> " << g.stmts[e.dst].name << "  "
        << dfg::class_name(e.cls) << "\n";
    j["edges"].push_back({{"name", e.name},
                          {"src", g.stmts[e.src].name},
                          {"dst", g.stmts[e.dst].name},
                          {"class", dfg::class_name(e.cls)},
                          {"relation", poly::to_string(e.rel)}});
  }
  j["groups"] = json::array();
  for (const auto& ga : pa.groups) {
    json gj;
    gj["name"] = ga.name;
    gj["repeated"] = ga.repeated;
    if (!ga.name.empty()) out << "group " << ga.name << (ga.repeated ? " (repeated)" : "") << "\n";
    const dfg::DataFlowGraph sub = ga.name.empty() ? g : dfg::sub_graph(g, g.groups[g.find_group(ga.name)]);
    gj["vertices"] = json::array();
    for (const auto& va : ga.graph.vertices) {
      const std::string& vname = sub.stmts[va.vertex].name;
      if (cfg.trace)
        for (const auto& line : va.trace) out << "  | " << line << "\n";
      json vj{{"name", vname}, {"bound", bound_json(va.complexity())}};
      if (va.chosen >= 0 && va.result) {
        const auto& entry = va.clique[va.chosen];
        json paths = json::array();
        out << "  vertex " << vname << "\n    paths:";
        for (int pi : entry.paths) {
          const auto& p = va.paths[pi];
          out << " " << p.str(sub) << " " << p.reason << ";";
          paths.push_back({{"path", p.str(sub)}, {"direction", p.direction.str()}, {"detail", p.reason}});
        }
        out << "\n    basis: " << (va.orthogonal ? "orthogonal" : "general") << (va.spanning ? ", spanning" : ", best") << "\n";
        out << indent(va.result->lp.str(), "    ");
        out << "    solution:\n" << indent(va.result->sol.str(), "      ");
        out << "    bound:\n" << indent(va.complexity().render(), "      ");
        vj["paths"] = paths;
        vj["orthogonal"] = va.orthogonal;
        vj["spanning"] = va.spanning;
        vj["lp"] = lp_json(*va.result);
      }
      gj["vertices"].push_back(vj);
    }
    json tags = json::array();
    for (const auto& t : ga.input_tags) tags.push_back(t.str());
    gj["input_tags"] = tags;
    gj["bound"] = bound_json(ga.bound);
    if (!ga.name.empty()) out << "  group bound:\n" << indent(ga.bound.render(), "    ");
    j["groups"].push_back(gj);
  }
  out << "total\n" << indent(pa.total.render(), "  ");
  out << "leading " << path::render_leading(pa.total) << "\n";
  j["total"] = bound_json(pa.total);
  j["warnings"] = pa.warnings;
  for (const auto& w : pa.warnings) out << "warning: " << w << "\n";

  if (cfg.s_given) {
    poly::Binding b = parse_sets(cfg.sets);
    std::map<std::string, double> at{{"S", static_cast<double>(cfg.S)}};
    for (const auto& p : g.params) {
      if (!b.count(p)) fail(ErrorKind::usage, "evaluation needs --set " + p + "=...");
      at[p] = static_cast<double>(b[p]);
    }
    double v = asym::eval_at(pa.total, at);
    out << "value at binding " << v << "\n";
    j["value"] = v;
  }
  text_out(cfg) << out.str();
  write_json(cfg.json_path, j);
  return 0;
}

// ---- pebble

pebble::GameRules rules_of(const Config& cfg) {
  pebble::GameRules r;
  if (cfg.S < 1) fail(ErrorKind::usage, "--s must be positive");
  r.S = cfg.S;
  r.variant = pebble::parse_variant(cfg.variant);
  r.slide = !cfg.no_slide;
  return r;
}

int cmd_pebble(const Config& cfg) {
  auto c = pebble::Cdag::load(cfg.input);
  auto rules = rules_of(cfg);
  pebble::SearchLimits lim;
  if (cfg.budget < 1) fail(ErrorKind::usage, "--budget must be positive");
  lim.budget = cfg.budget;
  json j{{"S", rules.S}, {"variant", pebble::variant_name(rules.variant)}, {"slide", rules.slide}};
  int code = 0;
  if (cfg.decompose) {
    if (c.groups.empty()) fail(ErrorKind::input, "--decompose needs vertex groups in the CDAG file");
    std::vector<std::vector<int>> parts;
    for (const auto& [_, ids] : c.groups) parts.push_back(ids);
    auto subs = pebble::decompose(c, parts);
    int sum_std = 0, sum_flex = 0;
    json pj = json::array();
    for (size_t i = 0; i < subs.size(); ++i) {
      auto flex = pebble::min_io(subs[i], rules, lim);
      auto stdm = pebble::min_io(pebble::standardize(subs[i]), rules, lim);
      if (!flex.optimal || !stdm.optimal) code = 3;
      sum_std += stdm.q;
      sum_flex += flex.q;
      text_out(cfg) << "part " << c.groups[i].first << ": standard " << stdm.q << ", flexible " << flex.q
                << ((flex.optimal && stdm.optimal) ? "" : " (upper bound)") << "\n";
      pj.push_back({{"name", c.groups[i].first}, {"standard", stdm.q}, {"flexible", flex.q},
                    {"optimal", flex.optimal && stdm.optimal}});
    }
    text_out(cfg) << "sum standard " << sum_std << "\nsum flexible " << sum_flex << "\n";
    j["parts"] = pj;
    j["sum_standard"] = sum_std;
    j["sum_flexible"] = sum_flex;
  } else {
    auto r = pebble::min_io(c, rules, lim);
    if (r.optimal) {
      text_out(cfg) << "q = " << r.q << " (optimal)\n";
    } else {
      text_out(cfg) << "q <= " << r.q << " (upper bound, search budget exhausted)\n";
      code = 3;
    }
    text_out(cfg) << "witness: " << r.witness.str(c) << "\n";
    text_out(cfg) << "expanded " << r.expanded << "\n";
    j["q"] = r.q;
    j["optimal"] = r.optimal;
    j["witness"] = r.witness.str(c);
  }
  write_json(cfg.json_path, j);
  return code;
}

// ---- partition

int cmd_partition(const Config& cfg) {
  auto c = pebble::Cdag::load(cfg.input);
  if (cfg.S < 1) fail(ErrorKind::usage, "--s must be positive");
  const int S = cfg.S;
  pebble::GameRules nr{S, pebble::Variant::nr, !cfg.no_slide};
  pebble::Calculation calc;
  int q = 0;
  if (!cfg.calc.empty()) {
    calc = pebble::parse_calculation(c, cfg.calc);
    q = pebble::validate_calculation(c, nr, calc);
  } else {
    auto r = pebble::min_io(c, nr);
    if (!r.optimal) fail(ErrorKind::cap, "search budget exhausted before an optimal calculation was found");
    calc = r.witness;
    q = r.q;
  }
  auto def = pebble::parse_partition_def(cfg.def);
  auto part = pebble::partition_from_calculation(c, S, calc);
  auto check = pebble::verify_partition(c, part, 2 * S, pebble::PartitionDef::nr);
  auto h = pebble::hmin(c, 2 * S, def);
  text_out(cfg) << "calculation q = " << q << "\n";
  text_out(cfg) << "partition h = " << part.h() << "\n" << indent(part.str(c), "  ");
  text_out(cfg) << "verify (2S = " << 2 * S << ", NR): " << (check.ok ? "ok" : "violated") << "\n";
  for (const auto& v : check.violations) text_out(cfg) << "  " << v << "\n";
  text_out(cfg) << "h_min (" << cfg.def << ", 2S) = " << h.h << "\n";
  const int lower = S * (h.h - 1);
  text_out(cfg) << "S*(h_min-1) = " << lower << (lower <= q ? " <= " : " > ") << "q = " << q << "\n";
  json j{{"q", q},
         {"h", part.h()},
         {"partition", part.str(c)},
         {"ok", check.ok},
         {"violations", check.violations},
         {"hmin", h.h}};
  write_json(cfg.json_path, j);
  return check.ok && lower <= q ? 0 : 4;
}

// ---- instantiate

int cmd_instantiate(const Config& cfg) {
  auto spec = dfg::load_program(cfg.input);
  if (cfg.cap < 1) fail(ErrorKind::usage, "--cap must be positive");
  auto c = dfg::instantiate(spec, parse_sets(cfg.sets), cfg.cap);
  if (cfg.out_path.empty()) {
    std::cout << c.str();
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) fail(ErrorKind::input, "cannot write " + cfg.out_path);
    out << c.str();
    std::cout << c.size() << " vertices written to " << cfg.out_path << "\n";
  }
  return 0;
}

// ---- check

struct OracleCase {
  std::string file;
  poly::Binding binding;
  int S;
};

// Numeric value of an asymptotic bound may exceed the exact optimum by this
// factor: constants from the 2S partition and change of basis are dropped.
constexpr double kSlack = 4.0;

int cmd_check(const Config& cfg) {
  pebble::SuiteOptions opt;
  opt.seed = cfg.seed;
  opt.count = cfg.count;
  opt.mutate_checker = cfg.mutate;
  if (opt.count < 1) fail(ErrorKind::usage, "--count must be positive");
  auto report = pebble::run_theorem_suite(opt);
  std::cout << report.str();
  std::vector<std::string> failures = report.violations;

  // partition lower bounds on the instantiated Jacobi CDAG
  auto jac = dfg::instantiate(dfg::load_program(cfg.data_dir + "/jacobi1d.prog"), {{"T", 3}, {"N", 5}});
  const int S = 3;
  for (auto variant : {pebble::Variant::std, pebble::Variant::nr}) {
    auto r = pebble::min_io(jac, {S, variant, true});
    auto def = variant == pebble::Variant::nr ? pebble::PartitionDef::nr : pebble::PartitionDef::hk;
    auto h = pebble::hmin(jac, 2 * S, def);
    bool ok = r.optimal && S * (h.h - 1) <= r.q;
    std::cout << "jacobi T=3 N=5 S=3 " << pebble::variant_name(variant) << ": q=" << r.q << " h_min=" << h.h
              << (ok ? " ok" : " VIOLATED") << "\n";
    if (!ok) failures.push_back("jacobi lemma " + pebble::variant_name(variant) + ": q=" + std::to_string(r.q) +
                                " h_min=" + std::to_string(h.h) + (r.optimal ? "" : " (not optimal)"));
  }

  // analyzer value versus the exact optimum on small instances
  const std::vector<OracleCase> cases = {
      {"jacobi1d.prog", {{"T", 3}, {"N", 5}}, 3},
      {"nbody.prog", {{"N", 3}}, 5},
      {"matmul_like.prog", {{"N", 2}}, 3},
  };
  for (const auto& oc : cases) {
    auto g = dfg::classify_edges(dfg::load_program(cfg.data_dir + "/" + oc.file));
    auto pa = path::analyze_program(g);
    auto c = dfg::instantiate(g, oc.binding);
    auto r = pebble::min_io(c, {oc.S, pebble::Variant::nr, true});
    std::map<std::string, double> at{{"S", static_cast<double>(oc.S)}};
    for (const auto& [k, v] : oc.binding) at[k] = static_cast<double>(v);
    double value = asym::eval_at(pa.total, at);
    bool ok = r.optimal && value <= kSlack * r.q + 1e-9;
    std::cout << "analyzer " << oc.file << " S=" << oc.S << ": bound value " << value << ", optimum " << r.q
              << (r.optimal ? "" : " (upper bound)") << (ok ? " ok" : " VIOLATED") << "\n";
    if (!ok)
      failures.push_back("analyzer " + oc.file + ": value " + std::to_string(value) + " vs q " + std::to_string(r.q) +
                         (r.optimal ? "" : ", search budget exhausted"));
  }

  if (!failures.empty()) {
    std::cout << "FAILED " << failures.size() << "\n";
    for (const auto& f : failures) std::cout << "  " << f << "\n";
    return 4;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric I/O lower bounds for affine programs, with a pebble game oracle"};
  app.require_subcommand(1);
  Config cfg;

  auto* analyze = app.add_subcommand("analyze", "derive the asymptotic I/O lower bound of a program");
  analyze->add_option("spec", cfg.input, "program file")->required();
  analyze->add_flag("--trace", cfg.trace, "list every considered path and clique step");
  analyze->add_option("--json", cfg.json_path, "write the report as JSON, - for stdout");
  analyze->add_option("--max-circuit", cfg.max_circuit, "longest circuit or broadcast path");
  analyze->add_option("--set", cfg.sets, "bind a parameter, NAME=VALUE");
  analyze->add_option("--s", cfg.S, "fast memory size for evaluating the bound");

  auto* pebble_cmd = app.add_subcommand("pebble", "exact minimum I/O of a small CDAG");
  pebble_cmd->add_option("cdag", cfg.input, "CDAG file")->required();
  pebble_cmd->add_option("--s", cfg.S, "red pebbles");
  pebble_cmd->add_option("--variant", cfg.variant, "std or nr");
  pebble_cmd->add_flag("--no-slide", cfg.no_slide, "forbid moving a red pebble on compute");
  pebble_cmd->add_flag("--decompose", cfg.decompose, "solve the CDAG groups separately");
  pebble_cmd->add_option("--budget", cfg.budget, "expanded state budget");
  pebble_cmd->add_option("--json", cfg.json_path, "write the result as JSON, - for stdout");

  auto* partition = app.add_subcommand("partition", "2S partition built from an NR calculation");
  partition->add_option("cdag", cfg.input, "CDAG file")->required();
  partition->add_option("--s", cfg.S, "red pebbles");
  partition->add_option("--calc", cfg.calc, "calculation such as \"R1_2, R3_6\"; default an optimal one");
  partition->add_option("--def", cfg.def, "partition definition for h_min: nr or hk");
  partition->add_flag("--no-slide", cfg.no_slide, "forbid slides");
  partition->add_option("--json", cfg.json_path, "write the result as JSON, - for stdout");

  auto* inst = app.add_subcommand("instantiate", "emit the CDAG of a program at a binding");
  inst->add_option("spec", cfg.input, "program file")->required();
  inst->add_option("--set", cfg.sets, "bind a parameter, NAME=VALUE")->required();
  inst->add_option("--cap", cfg.cap, "vertex cap");
  inst->add_option("-o,--out", cfg.out_path, "output file");

  auto* check = app.add_subcommand("check", "theorem suites and analyzer versus oracle");
  check->add_option("--seed", cfg.seed, "random seed");
  check->add_option("--count", cfg.count, "random DAGs");
  check->add_flag("--mutate-checker", cfg.mutate, "negative control: break the partition checker");
  check->add_option("--data", cfg.data_dir, "directory of the example programs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::usage);
  }
  cfg.s_given = analyze->count("--s") > 0;
  try {
    if (*analyze) return cmd_analyze(cfg);
    if (*pebble_cmd) return cmd_pebble(cfg);
    if (*partition) return cmd_partition(cfg);
    if (*inst) return cmd_instantiate(cfg);
    if (*check) return cmd_check(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::internal);
  }
  return static_cast<int>(ErrorKind::usage);
}
