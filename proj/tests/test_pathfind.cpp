#include <random>
#include <set>

#include "doctest.h"
#include "iolb/pathfind/pathfind.hpp"
#include "iolb/polyset/parse.hpp"

using namespace iolb;
using dfg::EdgeClass;
using path::Path;

namespace {

std::string data(const std::string& f) { return std::string(IOLB_DATA_DIR) + "/" + f; }
dfg::DataFlowGraph load(const std::string& f) { return dfg::classify_edges(dfg::load_program(data(f))); }

RatVec v(std::initializer_list<long> xs) {
  RatVec r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

std::string edges_of(const dfg::DataFlowGraph& g, const Path& p) {
  std::string s;
  for (int e : p.edges) s += (s.empty() ? "" : ",") + g.edges[e].name;
  return s;
}

bool same_count(const poly::IntSet& a, const poly::IntSet& b, std::mt19937& rng) {
  // the printed sets assume every loop runs a few iterations
  std::uniform_int_distribution<long long> pick(5, 30);
  for (int k = 0; k < 5; ++k) {
    poly::Binding bind;
    for (const auto& p : a.params) bind[p] = pick(rng);
    if (poly::card_at(a, bind) != poly::card_at(b, bind)) return false;
    // equal sets also have an empty difference
    if (poly::card_at(poly::subtract(a, b), bind) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("jacobi circuits through S2") {
  auto g = load("jacobi1d.prog");
  auto cs = path::enumerate_circuits(g, g.find("S2"), 4);
  REQUIRE(cs.size() == 3);
  CHECK(edges_of(g, cs[0]) == "e7,e8");
  CHECK(edges_of(g, cs[1]) == "e7,e9");
  CHECK(edges_of(g, cs[2]) == "e7,e10");
  std::vector<RatVec> dirs = {v({1, 1}), v({1, 0}), v({1, -1})};
  for (int i = 0; i < 3; ++i) {
    CHECK(cs[i].accepted);
    CHECK(*poly::as_translation(cs[i].relation) == dirs[i]);
  }
  // printed relation for (e7,e8)
  auto rc1 = poly::parse_relation("[T,N] -> { S2[t,i] -> S2[t+1,i+1] : 1 <= t < T-1 and 1 <= i < N-2 }", &g.params);
  std::mt19937 rng(3);
  CHECK(same_count(poly::domain(cs[0].relation), poly::domain(rc1), rng));
  CHECK(same_count(poly::image(cs[0].relation), poly::image(rc1), rng));
}

TEST_CASE("jacobi frontiers equal the printed sets") {
  auto g = load("jacobi1d.prog");
  auto cs = path::enumerate_circuits(g, g.find("S2"), 4);
  const char* printed[] = {
      "[T,N] -> { S2[1,i] : 2 <= i < N-2 ; S2[t,1] : 1 <= t < T-1 }",
      "[T,N] -> { S2[1,i] : 1 <= i < N-1 }",
      "[T,N] -> { S2[1,i] : 2 <= i < N-1 ; S2[t,N-2] : 2 <= t < T-1 }",
  };
  std::mt19937 rng(11);
  for (int i = 0; i < 3; ++i) CHECK(same_count(cs[i].frontier, poly::parse_set(printed[i], &g.params), rng));
  // F1 and F3 are charged, N + T each
  CHECK(cs[0].charges.size() == 2);
  CHECK(cs[2].charges.size() == 2);
}

TEST_CASE("circuit enumeration properties") {
  for (const char* f : {"jacobi1d.prog", "scaled_matmul.prog", "seidel.prog", "composite.prog"}) {
    auto g = load(f);
    for (size_t v = 0; v < g.stmts.size(); ++v) {
      auto cs = path::enumerate_circuits(g, static_cast<int>(v), 4);
      std::set<std::vector<int>> seen;
      for (const auto& c : cs) {
        CHECK(seen.insert(c.edges).second);
        CHECK(g.edges[c.edges.front()].src == static_cast<int>(v));
        CHECK(g.edges[c.edges.back()].dst == static_cast<int>(v));
        for (int e : c.edges) CHECK(g.edges[e].cls == EdgeClass::injective);
        if (!c.accepted) continue;
        // the image of the domain never meets the frontier
        auto D = poly::domain(c.relation);
        auto meet = poly::intersect(poly::apply(c.relation, D), c.frontier);
        for (long long n : {6, 9}) {
          poly::Binding b;
          for (const auto& p : g.params) b[p] = n;
          CHECK(poly::card_at(meet, b) == 0);
        }
      }
    }
  }
}

TEST_CASE("scaled matmul paths into S1") {
  auto g = load("scaled_matmul.prog");
  int s1 = g.find("S1");
  auto cs = path::enumerate_circuits(g, s1, 4);
  REQUIRE(cs.size() == 1);
  CHECK(edges_of(g, cs[0]) == "e5");
  CHECK(*poly::as_translation(cs[0].relation) == v({0, 0, 1}));
  // the frontier S1[i,j,0] is fed by the input Temp
  CHECK(cs[0].charges.empty());

  auto bs = path::enumerate_broadcast_paths(g, s1, EdgeClass::broadcast1, 4);
  REQUIRE(bs.size() == 2);
  CHECK(edges_of(g, bs[0]) == "e1");
  CHECK(edges_of(g, bs[1]) == "e2");
  CHECK(bs[0].direction == poly::Subspace(3, {v({0, 1, 0})}));
  CHECK(bs[1].direction == poly::Subspace(3, {v({1, 0, 0})}));
  CHECK(bs[0].charges.empty());
  CHECK(path::enumerate_broadcast_paths(g, s1, EdgeClass::broadcastk, 4).empty());
}

TEST_CASE("no accepted broadcast paths in jacobi") {
  auto g = load("jacobi1d.prog");
  for (size_t v = 0; v < g.stmts.size(); ++v)
    for (EdgeClass fam : {EdgeClass::broadcast1, EdgeClass::broadcastk})
      for (const auto& p : path::enumerate_broadcast_paths(g, static_cast<int>(v), fam, 4)) CHECK(!p.accepted);
  CHECK(path::enumerate_circuits(g, g.find("S1"), 4).empty());
  CHECK(path::enumerate_circuits(g, g.find("I"), 4).empty());
}

TEST_CASE("try follows the clique rules") {
  auto g = load("jacobi1d.prog");
  int s2 = g.find("S2");
  path::VertexState st(g, s2, true);
  st.analysis().paths = path::enumerate_circuits(g, s2, 4);
  CHECK_FALSE(st.try_add(0));
  CHECK(st.analysis().clique.size() == 1);
  // same direction again: no state change
  CHECK_FALSE(st.try_add(0));
  CHECK(st.analysis().clique.size() == 1);
  CHECK(st.analysis().subspaces.size() == 1);
  // (1,0) is not orthogonal to (1,1): only a fresh entry
  CHECK_FALSE(st.try_add(1));
  CHECK(st.analysis().clique.size() == 2);
  CHECK(st.try_add(2));
  CHECK(st.analysis().spanning);
  const auto& e = st.analysis().clique[st.analysis().chosen];
  CHECK(e.paths == std::vector<int>{0, 2});
  CHECK(e.T == std::vector<int>{g.find("S2"), g.find("S3")});
  for (const auto& ce : st.analysis().clique) {
    CHECK(poly::base(ce.K, 2, true));
    CHECK(poly::dim_of(ce.D) == 2);
  }

  // the general pass accepts (1,1) with (1,0)
  path::VertexState gen(g, s2, false);
  gen.analysis().paths = st.analysis().paths;
  CHECK_FALSE(gen.try_add(0));
  CHECK(gen.try_add(1));
}

TEST_CASE("scaled matmul clique spans on the third direction") {
  auto g = load("scaled_matmul.prog");
  auto a = path::analyze_vertex(g, g.find("S1"));
  CHECK(a.spanning);
  CHECK(a.orthogonal);
  REQUIRE(a.chosen >= 0);
  const auto& e = a.clique[a.chosen];
  CHECK(e.K.size() == 3);
  CHECK(e.k.dim() == 3);
  CHECK(path::render_leading(a.complexity()) == "Omega(N^3/sqrt(S))");
  CHECK(a.result->lp.cons.size() == 9);
}

TEST_CASE("best picks by the lexicographic key") {
  auto g = load("jacobi1d.prog");
  int s2 = g.find("S2");
  path::VertexState one(g, s2, true);
  one.analysis().paths = path::enumerate_circuits(g, s2, 4);
  one.try_add(0);
  one.best();
  CHECK(one.analysis().chosen == 0);
  CHECK_FALSE(one.analysis().complexity().is_zero());

  path::VertexState none(g, g.find("S1"), true);
  none.best();
  CHECK(none.analysis().complexity().is_zero());

  // a broadcast fed by a non input: two entries of dims 2 and 1, the 2-dim one wins
  auto h = dfg::classify_edges(dfg::parse_program(R"(
params N;
stmt X { [N] -> { X[i] : 0 <= i < N } };
stmt Y { [N] -> { Y[i,j] : 0 <= i < N and 0 <= j < N } };
edge b : [N] -> { X[i] -> Y[i,j] : 0 <= i < N and 0 <= j < N };
edge c : [N] -> { Y[i,j] -> Y[i+1,j] : 0 <= i < N-1 and 0 <= j < N };
)"));
  auto y = path::analyze_vertex(h, h.find("Y"));
  CHECK(y.spanning);
  CHECK(y.clique[y.chosen].k.dim() == 2);
  // charges: frontier Y[0,j] and the broadcast source X
  CHECK(path::render_leading(y.complexity()) == "Omega(N^2/S - N)");
}

TEST_CASE("analyze graph examples") {
  auto j = path::analyze_program(load("jacobi1d.prog"));
  CHECK(path::render_leading(j.total) == "Omega(N*T/S - (N+T))");
  auto m = path::analyze_program(load("scaled_matmul.prog"));
  CHECK(path::render_leading(m.total) == "Omega(N^3/sqrt(S) - N^2)");
  auto n = path::analyze_program(load("nbody.prog"));
  CHECK(path::render_leading(n.total) == "Omega(N^2/S)");
  auto e8 = path::analyze_program(load("matmul_like.prog"));
  CHECK(path::render_leading(e8.total) == "Omega(N^3/S)");

  auto skipped = path::analyze_program(dfg::classify_edges(dfg::parse_program(R"(
params N;
input I { [N] -> { I[i] : 0 <= i < N } };
stmt S { [N] -> { S[i,j] : 0 <= i < N and 0 <= j < N } };
edge e : [N] -> { I[i] -> S[i,0] : 0 <= i < N };
)")));
  CHECK(skipped.total.is_zero());
  auto bare = path::analyze_program(dfg::classify_edges(dfg::parse_program("params N;\nstmt S { [N] -> { S[i] : 0 <= i < N } };")));
  CHECK(bare.total.is_zero());
  CHECK(bare.warnings.size() == 1);
}

TEST_CASE("analysis is deterministic") {
  auto g = load("seidel.prog");
  auto a = path::analyze_program(g), b = path::analyze_program(g);
  CHECK(a.total.render() == b.total.render());
  REQUIRE(a.groups.size() == b.groups.size());
  for (size_t i = 0; i < a.groups.size(); ++i)
    for (size_t v = 0; v < a.groups[i].graph.vertices.size(); ++v)
      CHECK(a.groups[i].graph.vertices[v].trace == b.groups[i].graph.vertices[v].trace);
}

TEST_CASE("leading case") {
  auto g = load("jacobi1d.prog");
  auto a = path::analyze_program(g);
  CHECK(a.total.cases.size() == 2);
  CHECK(path::render_leading(a.total) == a.total.render_case(a.total.cases[0]));
  CHECK(path::render_leading(asym::AsymBound::zero()) == "0");
}
