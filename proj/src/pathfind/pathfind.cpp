#include "iolb/pathfind/pathfind.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <tuple>

#include "iolb/core/error.hpp"

namespace iolb::path {

using dfg::EdgeClass;

namespace {

poly::Binding probe(const poly::ParamSpace& params, long long v) {
  poly::Binding b;
  for (const auto& p : params) b[p] = v;
  return b;
}

bool empty_at_probes(const poly::IntSet& s) {
  for (long long v : {12, 17})
    if (poly::card_at(s, probe(s.params, v)) != 0) return false;
  return true;
}

std::vector<asym::Monomial> leading_monomials(const poly::IntSet& s) {
  if (empty_at_probes(s)) return {};
  return asym::monomials_of(poly::card_leading(s));
}

poly::AffRelation compose_path(const DataFlowGraph& g, const std::vector<int>& edges) {
  poly::AffRelation r = g.edges[edges[0]].rel;
  for (size_t i = 1; i < edges.size(); ++i) r = poly::compose(g.edges[edges[i]].rel, r);
  return r;
}

// Images of one-to-one edges from input statements into v: their points
// are reached from tagged inputs already.
poly::IntSet input_fed(const DataFlowGraph& g, int v) {
  const auto& dom = g.stmts[v].domain;
  poly::IntSet u = poly::IntSet::empty(dom.tag, dom.dims, dom.params);
  for (const auto& e : g.edges) {
    if (e.dst != v || !g.stmts[e.src].input) continue;
    auto m = poly::as_affine_map(e.rel);
    if (m && m->full_column_rank()) u = poly::unite(u, poly::image(e.rel));
  }
  return u;
}

bool ends_well(const DataFlowGraph& g, Path& p, int d) {
  if (poly::dim_of(poly::image(p.relation), true) < d) {
    p.reason = "image has lower dimension than the vertex";
    return false;
  }
  (void)g;
  return true;
}

void sort_paths(std::vector<Path>& ps) {
  std::stable_sort(ps.begin(), ps.end(), [](const Path& a, const Path& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  });
}

}  // namespace

std::string Path::str(const DataFlowGraph& g) const {
  std::string s = kind == PathKind::circuit ? "circuit (" : "broadcast (";
  for (size_t i = 0; i < edges.size(); ++i) s += (i ? "," : "") + g.edges[edges[i]].name;
  return s + ")";
}

std::vector<Path> enumerate_circuits(const DataFlowGraph& g, int v, int max_len) {
  std::vector<Path> out;
  const int d = g.stmts[v].domain.dims;
  std::vector<int> stack;
  std::vector<bool> on(g.stmts.size(), false);
  std::function<void(int)> walk = [&](int at) {
    if (static_cast<int>(stack.size()) >= max_len) return;
    for (size_t i = 0; i < g.edges.size(); ++i) {
      const auto& e = g.edges[i];
      if (e.src != at || e.cls != EdgeClass::injective) continue;
      stack.push_back(static_cast<int>(i));
      if (e.dst == v) {
        Path p;
        p.kind = PathKind::circuit;
        p.edges = stack;
        out.push_back(std::move(p));
      } else if (!on[e.dst]) {
        on[e.dst] = true;
        walk(e.dst);
        on[e.dst] = false;
      }
      stack.pop_back();
    }
  };
  on[v] = true;
  walk(v);
  sort_paths(out);

  poly::IntSet fed;
  bool fed_ready = false;
  for (auto& p : out) {
    p.relation = compose_path(g, p.edges);
    auto b = poly::as_translation(p.relation);
    if (!b) {
      p.reason = "relation is not a translation";
      continue;
    }
    p.direction = poly::Subspace(d, {*b});
    if (p.direction.dim() == 0) {
      p.reason = "zero translation";
      continue;
    }
    if (!ends_well(g, p, d)) continue;
    p.frontier = poly::frontier(poly::domain(p.relation), p.relation);
    if (!fed_ready) {
      fed = input_fed(g, v);
      fed_ready = true;
    }
    if (!empty_at_probes(poly::subtract(p.frontier, fed))) p.charges = leading_monomials(p.frontier);
    p.accepted = true;
    p.reason = "translation " + iolb::to_string(*b);
  }
  return out;
}

std::vector<Path> enumerate_broadcast_paths(const DataFlowGraph& g, int v, EdgeClass family, int max_len) {
  std::vector<Path> out;
  const int d = g.stmts[v].domain.dims;
  std::vector<int> stack;
  std::vector<bool> on(g.stmts.size(), false);
  std::function<void(int)> walk = [&](int at) {
    if (at == v) {
      Path p;
      p.kind = PathKind::broadcast;
      p.edges = stack;
      out.push_back(std::move(p));
      return;
    }
    if (static_cast<int>(stack.size()) >= max_len) return;
    for (size_t i = 0; i < g.edges.size(); ++i) {
      const auto& e = g.edges[i];
      if (e.src != at || e.cls != EdgeClass::injective || on[e.dst]) continue;
      stack.push_back(static_cast<int>(i));
      on[e.dst] = true;
      walk(e.dst);
      on[e.dst] = false;
      stack.pop_back();
    }
  };
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.cls != family || e.src == e.dst) continue;
    stack = {static_cast<int>(i)};
    std::fill(on.begin(), on.end(), false);
    on[e.src] = on[e.dst] = true;
    walk(e.dst);
  }
  sort_paths(out);

  for (auto& p : out) {
    p.relation = compose_path(g, p.edges);
    auto m = poly::as_affine_map(poly::inverse(p.relation));
    if (!m) {
      p.reason = "inverse is not an affine map";
      continue;
    }
    p.direction = poly::kernel_basis(*m);
    if (p.direction.dim() == 0) {
      p.reason = "inverse map has a trivial kernel";
      continue;
    }
    if (!ends_well(g, p, d)) continue;
    const auto& first = g.edges[p.edges[0]];
    if (!g.stmts[first.src].input) p.charges = leading_monomials(poly::domain(first.rel));
    p.accepted = true;
    p.reason = "kernel " + p.direction.str();
  }
  return out;
}

Solved solve(const poly::IntSet& D, const std::vector<poly::Subspace>& K, const std::vector<asym::Monomial>& charges) {
  Solved s;
  s.lp = plp::build_lp(D, K);
  s.sol = plp::solve_plp(s.lp);
  s.bound = plp::assemble_bound(poly::card_leading(D), s.sol, charges);
  return s;
}

const asym::AsymBound& VertexAnalysis::complexity() const {
  static const asym::AsymBound zero = asym::AsymBound::zero();
  return result ? result->bound : zero;
}

VertexState::VertexState(const DataFlowGraph& g, int v, bool orthogonal)
    : g_(g), dom_(g.stmts[v].domain), d_(g.stmts[v].domain.dims) {
  a_.vertex = v;
  a_.orthogonal = orthogonal;
}

bool VertexState::try_add(int index) {
  const Path& p = a_.paths[index];
  const poly::Subspace& k2 = p.direction;
  for (const auto& s : a_.subspaces)
    if (s == k2) {
      a_.trace.push_back("  " + p.str(g_) + ": " + k2.str() + " already seen");
      return false;
    }
  a_.subspaces.push_back(k2);

  // Snapshot: larger accumulated spans first, the empty entry last.
  std::vector<int> order(a_.clique.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a_.clique[x].k.dim() > a_.clique[y].k.dim(); });
  order.push_back(-1);

  const poly::IntSet img = poly::image(p.relation);
  bool added = false;
  for (int idx : order) {
    CliqueEntry base_entry;
    if (idx >= 0) {
      base_entry = a_.clique[idx];
    } else {
      base_entry.k = poly::Subspace::zero(d_);
      base_entry.D = dom_;
    }
    poly::Subspace ksum = base_entry.k.sum(k2);
    if (ksum.dim() <= base_entry.k.dim()) continue;
    std::vector<poly::Subspace> K = base_entry.K;
    K.push_back(k2);
    if (!poly::base(K, d_, a_.orthogonal)) continue;
    poly::IntSet D2 = poly::intersect(img, base_entry.D);
    if (poly::dim_of(D2, true) != d_) continue;

    CliqueEntry e;
    e.k = ksum;
    e.K = std::move(K);
    e.D = std::move(D2);
    e.T = base_entry.T;
    for (int ei : p.edges)
      for (int s : {g_.edges[ei].src, g_.edges[ei].dst}) e.T.push_back(s);
    std::sort(e.T.begin(), e.T.end());
    e.T.erase(std::unique(e.T.begin(), e.T.end()), e.T.end());
    e.paths = base_entry.paths;
    e.paths.push_back(index);
    e.charges = base_entry.charges;
    e.charges.insert(e.charges.end(), p.charges.begin(), p.charges.end());
    a_.clique.push_back(std::move(e));
    added = true;
    const CliqueEntry& ne = a_.clique.back();
    if (ne.k.dim() >= d_) {
      a_.result = solve(ne.D, ne.K, ne.charges);
      a_.chosen = static_cast<int>(a_.clique.size()) - 1;
      a_.spanning = true;
      a_.trace.push_back("  " + p.str(g_) + ": spans with entry " + std::to_string(idx) + ", solved");
      return true;
    }
  }
  a_.trace.push_back("  " + p.str(g_) + (added ? ": added to the clique" : ": no compatible entry"));
  return false;
}

void VertexState::best() {
  if (a_.result) return;
  if (a_.clique.empty()) {
    a_.result = Solved{{}, {}, asym::AsymBound::zero()};
    a_.trace.push_back("  best: empty clique, zero bound");
    return;
  }
  std::map<std::string, double> ref;
  for (const auto& p : g_.params) ref[p] = 1e4;
  ref["S"] = 100;
  using Key = std::tuple<int, int, int, double, int>;
  std::optional<Key> top;
  std::optional<Solved> top_solved;
  for (size_t i = 0; i < a_.clique.size(); ++i) {
    const CliqueEntry& e = a_.clique[i];
    int sum_k = 0;
    for (const auto& k : e.K) sum_k += k.dim();
    Key partial{poly::dim_of(e.D, true), e.k.dim(), -sum_k, 0.0, 0};
    if (top && std::make_tuple(std::get<0>(partial), std::get<1>(partial), std::get<2>(partial)) <
                   std::make_tuple(std::get<0>(*top), std::get<1>(*top), std::get<2>(*top)))
      continue;
    Solved s = solve(e.D, e.K, e.charges);
    Key key = partial;
    std::get<3>(key) = asym::eval_at(s.bound, ref);
    std::get<4>(key) = -static_cast<int>(e.T.size());
    if (!top || *top < key) {
      top = key;
      top_solved = std::move(s);
      a_.chosen = static_cast<int>(i);
    }
  }
  a_.result = std::move(top_solved);
  a_.trace.push_back("  best: entry " + std::to_string(a_.chosen));
}

VertexAnalysis analyze_vertex(const DataFlowGraph& g, int v, const Options& opts) {
  std::vector<Path> paths = enumerate_circuits(g, v, opts.max_len);
  for (EdgeClass fam : {EdgeClass::broadcast1, EdgeClass::broadcastk}) {
    auto more = enumerate_broadcast_paths(g, v, fam, opts.max_len);
    paths.insert(paths.end(), more.begin(), more.end());
  }
  std::vector<std::string> trace;
  trace.push_back("vertex " + g.stmts[v].name);
  for (const auto& p : paths)
    trace.push_back("  " + p.str(g) + (p.accepted ? " accepted, " : " rejected, ") + p.reason);

  VertexAnalysis out;
  for (bool orth : {true, false}) {
    VertexState st(g, v, orth);
    st.analysis().paths = paths;
    trace.push_back(orth ? " orthogonal pass" : " general pass");
    for (size_t i = 0; i < paths.size(); ++i)
      if (paths[i].accepted && st.try_add(static_cast<int>(i))) break;
    if (!st.analysis().spanning && orth) {
      trace.insert(trace.end(), st.analysis().trace.begin(), st.analysis().trace.end());
      continue;
    }
    st.best();
    out = std::move(st.analysis());
    break;
  }
  trace.insert(trace.end(), out.trace.begin(), out.trace.end());
  trace.push_back("  complexity: " + out.complexity().render());
  out.trace = std::move(trace);
  return out;
}

GraphAnalysis analyze_graph(const DataFlowGraph& g, const Options& opts) {
  GraphAnalysis ga;
  for (size_t v = 0; v < g.stmts.size(); ++v) ga.vertices.push_back(analyze_vertex(g, static_cast<int>(v), opts));
  std::vector<int> order(ga.vertices.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return g.stmts[a].name < g.stmts[b].name; });
  ga.total = asym::AsymBound::zero();
  for (int v : order) ga.total = asym::add(ga.total, ga.vertices[v].complexity());
  ga.total = asym::simplify(ga.total);
  return ga;
}

ProgramAnalysis analyze_program(const DataFlowGraph& g, const Options& opts) {
  ProgramAnalysis pa;
  if (g.edges.empty()) pa.warnings.push_back("program has no edges; the bound is zero");
  if (g.groups.empty()) {
    GroupAnalysis ga;
    ga.graph = analyze_graph(g, opts);
    ga.bound = ga.graph.total;
    pa.groups.push_back(std::move(ga));
  } else {
    for (size_t gi = 0; gi < g.groups.size(); ++gi) {
      const auto& grp = g.groups[gi];
      GroupAnalysis ga;
      ga.name = grp.name;
      ga.graph = analyze_graph(dfg::sub_graph(g, grp), opts);
      for (int s : grp.stmts)
        if (g.stmts[s].input) {
          auto m = leading_monomials(g.stmts[s].domain);
          ga.input_tags.insert(ga.input_tags.end(), m.begin(), m.end());
        }
      ga.bound = asym::subtract_tags(ga.graph.total, ga.input_tags);
      ga.repeated = g.repeat && std::count(g.repeat->groups.begin(), g.repeat->groups.end(), static_cast<int>(gi));
      if (ga.bound.is_zero()) pa.warnings.push_back("group " + grp.name + " yields no bound");
      pa.groups.push_back(std::move(ga));
    }
  }
  asym::AsymBound plain = asym::AsymBound::zero(), rep = asym::AsymBound::zero();
  for (const auto& ga : pa.groups) {
    if (ga.repeated)
      rep = asym::add(rep, ga.bound);
    else
      plain = asym::add(plain, ga.bound);
  }
  if (g.repeat && !rep.is_zero()) rep = asym::scale_by(rep, asym::Monomial::param(g.repeat->factor));
  pa.total = asym::simplify(asym::add(plain, rep));
  return pa;
}

const asym::BoundCase& leading_case(const asym::AsymBound& b) {
  std::set<std::string> params;
  std::vector<asym::Atom> atoms;
  for (const auto& c : b.cases)
    for (const auto& a : c.region.atoms()) {
      atoms.push_back(a);
      for (const auto& t : a.terms)
        for (const auto& [p, _] : t) params.insert(p);
    }
  std::map<std::string, double> logs;
  int idx = 0;
  for (const auto& p : params) logs[p] = 100 + 0.001 * idx++;
  std::map<asym::Atom, double> at;
  for (const auto& a : atoms) {
    double best = 0;
    for (const auto& t : a.terms) {
      double s = 0;
      for (const auto& [p, e] : t) s += e * logs[p];
      best = std::max(best, s);
    }
    at[a] = best;
  }
  for (const auto& c : b.cases)
    if (c.region.contains(at)) return c;
  return b.cases.front();
}

std::string render_leading(const asym::AsymBound& b) { return b.render_case(leading_case(b)); }

}  // namespace iolb::path
