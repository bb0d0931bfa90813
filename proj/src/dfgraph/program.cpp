#include "iolb/dfgraph/program.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "iolb/core/error.hpp"
#include "iolb/polyset/parse.hpp"

namespace iolb::dfg {

using poly::Lexer;
using poly::Token;

std::string class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::injective: return "INJECTIVE";
    case EdgeClass::broadcast1: return "BROADCAST1";
    case EdgeClass::broadcastk: return "BROADCASTK";
    case EdgeClass::other: return "OTHER";
    case EdgeClass::skipped: return "SKIPPED";
  }
  return "?";
}

int ProgramSpec::find(const std::string& name) const {
  for (size_t i = 0; i < stmts.size(); ++i)
    if (stmts[i].name == name) return static_cast<int>(i);
  return -1;
}

int ProgramSpec::find_group(const std::string& name) const {
  for (size_t i = 0; i < groups.size(); ++i)
    if (groups[i].name == name) return static_cast<int>(i);
  return -1;
}

namespace {

[[noreturn]] void error_at(const Token& t, const std::string& msg) {
  throw Error(ErrorKind::input, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
}

poly::ParsedMap braced_map(Lexer& lex, const poly::ParamSpace& params) {
  lex.expect("{");
  poly::ParsedMap m = poly::parse_map(lex, &params);
  lex.expect("}");
  return m;
}

std::vector<std::string> name_list(Lexer& lex) {
  std::vector<std::string> out;
  lex.expect("{");
  while (!lex.accept("}")) {
    out.push_back(lex.expect_ident());
    if (!lex.accept(",")) lex.accept(";");
  }
  return out;
}

poly::Binding probe_binding(const poly::ParamSpace& params, long long v) {
  poly::Binding b;
  for (const auto& p : params) b[p] = v;
  return b;
}

// Relation endpoints must stay inside the declared domains; checked by
// counting at two generic bindings.
void check_within(const Token& at, const std::string& edge, const poly::IntSet& part, const poly::IntSet& dom) {
  poly::IntSet out = poly::subtract(part, dom);
  for (long long v : {12, 17})
    if (poly::card_at(out, probe_binding(dom.params, v)) != 0)
      error_at(at, "edge " + edge + " reaches outside the domain of " + dom.tag);
}

}  // namespace

ProgramSpec parse_program(std::string_view text) {
  Lexer lex(text);
  ProgramSpec spec;
  bool have_params = false;
  std::vector<std::pair<Token, std::vector<std::string>>> pending_groups;
  std::optional<std::pair<Token, std::pair<std::string, std::vector<std::string>>>> pending_repeat;
  while (!lex.at_end()) {
    Token kw = lex.peek();
    std::string word = lex.expect_ident();
    if (word == "params") {
      if (have_params) error_at(kw, "params declared twice");
      have_params = true;
      do spec.params.push_back(lex.expect_ident());
      while (lex.accept(","));
      lex.expect(";");
    } else if (word == "input" || word == "stmt") {
      Token nt = lex.peek();
      std::string name = lex.expect_ident();
      if (spec.find(name) >= 0) error_at(nt, "statement " + name + " declared twice");
      poly::ParsedMap m = braced_map(lex, spec.params);
      lex.expect(";");
      if (m.is_relation) error_at(nt, "domain of " + name + " must be a set");
      if (m.set.tag != name) error_at(nt, "domain tag " + m.set.tag + " does not match statement " + name);
      Statement s;
      s.name = name;
      s.domain = m.set;
      s.domain.pieces.clear();
      for (auto& p : m.set.pieces) s.domain.add_piece(p);
      s.input = word == "input";
      spec.stmts.push_back(std::move(s));
    } else if (word == "output") {
      std::string array = lex.expect_ident();
      lex.expect("from");
      do {
        Token st = lex.peek();
        int i = spec.find(lex.expect_ident());
        if (i < 0) error_at(st, "unknown statement " + st.text);
        spec.stmts[i].output = true;
        spec.stmts[i].output_array = array;
      } while (lex.accept(","));
      lex.expect(";");
    } else if (word == "edge") {
      Token nt = lex.peek();
      std::string name = lex.expect_ident();
      lex.expect(":");
      poly::ParsedMap m = poly::parse_map(lex, &spec.params);
      lex.expect(";");
      if (!m.is_relation) error_at(nt, "edge " + name + " needs a relation");
      const poly::AffRelation& r = m.relation;
      int src = spec.find(r.in_tag), dst = spec.find(r.out_tag);
      if (src < 0) error_at(nt, "unknown statement " + r.in_tag);
      if (dst < 0) error_at(nt, "unknown statement " + r.out_tag);
      if (r.in_dims != spec.stmts[src].domain.dims || r.out_dims != spec.stmts[dst].domain.dims)
        error_at(nt, "arity mismatch in edge " + name);
      if (spec.stmts[dst].input) error_at(nt, "edge " + name + " writes into input " + r.out_tag);
      if (r.pieces.size() > static_cast<size_t>(kMaxDisjuncts))
        error_at(nt, "edge " + name + " has " + std::to_string(r.pieces.size()) + " disjuncts, at most " +
                         std::to_string(kMaxDisjuncts) + " are accepted");
      for (size_t k = 0; k < r.pieces.size(); ++k) {
        Edge e;
        e.name = r.pieces.size() == 1 ? name : name + "." + std::to_string(k + 1);
        e.src = src;
        e.dst = dst;
        e.rel = r;
        e.rel.pieces.clear();
        e.rel.add_piece(r.pieces[k]);
        if (e.rel.is_empty()) continue;
        for (const auto& other : spec.edges)
          if (other.name == e.name) error_at(nt, "edge " + e.name + " declared twice");
        check_within(nt, e.name, poly::domain(e.rel), spec.stmts[src].domain);
        check_within(nt, e.name, poly::image(e.rel), spec.stmts[dst].domain);
        spec.edges.push_back(std::move(e));
      }
    } else if (word == "group") {
      std::string name = lex.expect_ident();
      auto members = name_list(lex);
      lex.expect(";");
      Token at = kw;
      at.text = name;
      pending_groups.push_back({at, members});
    } else if (word == "repeat") {
      if (pending_repeat) error_at(kw, "only one repeat block is supported");
      std::string factor = lex.expect_ident();
      if (std::find(spec.params.begin(), spec.params.end(), factor) == spec.params.end())
        error_at(kw, "repeat factor " + factor + " is not a parameter");
      auto members = name_list(lex);
      lex.expect(";");
      pending_repeat = {kw, {factor, members}};
    } else {
      error_at(kw, "unknown declaration '" + word + "'");
    }
  }
  if (spec.stmts.empty()) fail(ErrorKind::input, "program declares no statements");

  std::set<int> grouped;
  for (const auto& [at, members] : pending_groups) {
    if (spec.find_group(at.text) >= 0) error_at(at, "group " + at.text + " declared twice");
    Group g{at.text, {}};
    for (const auto& m : members) {
      int i = spec.find(m);
      if (i < 0) error_at(at, "unknown statement " + m + " in group " + at.text);
      if (!grouped.insert(i).second) error_at(at, "statement " + m + " is in two groups");
      g.stmts.push_back(i);
    }
    spec.groups.push_back(std::move(g));
  }
  if (!spec.groups.empty())
    for (size_t i = 0; i < spec.stmts.size(); ++i)
      if (!grouped.count(static_cast<int>(i)))
        fail(ErrorKind::input, "statement " + spec.stmts[i].name + " belongs to no group");
  if (pending_repeat) {
    const auto& [at, body] = *pending_repeat;
    Repeat r{body.first, {}};
    for (const auto& m : body.second) {
      int gi = spec.find_group(m);
      if (gi < 0) error_at(at, "unknown group " + m + " in repeat");
      r.groups.push_back(gi);
    }
    spec.repeat = std::move(r);
  }
  return spec;
}

ProgramSpec load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::input, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_program(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ":" + e.what());
  }
}

EdgeClass classify(const poly::AffRelation& r, const poly::IntSet& dst_domain) {
  const int img = poly::dim_of(poly::image(r), true);
  if (img < poly::dim_of(dst_domain, true)) return EdgeClass::skipped;
  if (auto m = poly::as_affine_map(r); m && m->invertible()) return EdgeClass::injective;
  const int dom = poly::dim_of(poly::domain(r), true);
  if (dom == img - 1) return EdgeClass::broadcast1;
  if (dom < img - 1) return EdgeClass::broadcastk;
  return EdgeClass::other;
}

DataFlowGraph classify_edges(const ProgramSpec& spec) {
  DataFlowGraph g = spec;
  for (auto& e : g.edges) e.cls = classify(e.rel, g.stmts[e.dst].domain);
  return g;
}

DataFlowGraph sub_graph(const DataFlowGraph& g, const Group& group) {
  DataFlowGraph out;
  out.params = g.params;
  std::vector<int> remap(g.stmts.size(), -1);
  for (int i : group.stmts) {
    remap[i] = static_cast<int>(out.stmts.size());
    out.stmts.push_back(g.stmts[i]);
  }
  for (const auto& e : g.edges) {
    if (remap[e.src] < 0 || remap[e.dst] < 0) continue;
    Edge c = e;
    c.src = remap[e.src];
    c.dst = remap[e.dst];
    out.edges.push_back(std::move(c));
  }
  return out;
}

long long instance_count(const ProgramSpec& spec, const poly::Binding& b) {
  Integer total = 0;
  for (const auto& s : spec.stmts) total += poly::card_at(s.domain, b);
  return total.fits_slong_p() ? total.get_si() : -1;
}

namespace {

std::string point_name(const std::string& tag, const std::vector<long long>& p, size_t from, size_t n) {
  std::string s = tag + "[";
  for (size_t k = 0; k < n; ++k) s += (k ? "," : "") + std::to_string(p[from + k]);
  return s + "]";
}

}  // namespace

pebble::Cdag instantiate(const ProgramSpec& spec, const poly::Binding& b, long long cap) {
  for (const auto& p : spec.params)
    if (!b.count(p)) fail(ErrorKind::usage, "parameter " + p + " is not bound");
  long long n = instance_count(spec, b);
  if (n < 0 || n > cap)
    fail(ErrorKind::cap, "instantiation needs " + (n < 0 ? std::string("too many") : std::to_string(n)) +
                             " vertices, cap is " + std::to_string(cap));
  pebble::Cdag c;
  std::vector<std::vector<int>> of_stmt(spec.stmts.size());
  for (size_t i = 0; i < spec.stmts.size(); ++i) {
    const Statement& s = spec.stmts[i];
    poly::enumerate_set(s.domain, b, [&](const std::vector<long long>& p) {
      of_stmt[i].push_back(c.add_vertex(point_name(s.name, p, 0, p.size()), s.input, false));
    });
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& e : spec.edges) {
    const auto& r = e.rel;
    poly::enumerate_relation(r, b, [&](const std::vector<long long>& p) {
      int u = c.find(point_name(r.in_tag, p, 0, r.in_dims));
      int v = c.find(point_name(r.out_tag, p, r.in_dims, r.out_dims));
      // printed relations may ignore small-parameter corner cases
      if (u < 0 || v < 0) return;
      if (seen.insert({u, v}).second) c.add_edge(u, v);
    });
  }
  for (size_t i = 0; i < spec.stmts.size(); ++i)
    if (spec.stmts[i].output)
      for (int v : of_stmt[i])
        if (c.succ(v).empty()) c.set_output(v, true);
  for (const auto& g : spec.groups) {
    std::vector<int> ids;
    for (int s : g.stmts) ids.insert(ids.end(), of_stmt[s].begin(), of_stmt[s].end());
    c.groups.push_back({g.name, ids});
  }
  return c;
}

}  // namespace iolb::dfg
