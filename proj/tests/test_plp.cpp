#include <algorithm>
#include <random>

#include "doctest.h"
#include "iolb/core/error.hpp"
#include "iolb/core/simplex.hpp"
#include "iolb/paramlp/plp.hpp"
#include "iolb/polyset/parse.hpp"

using namespace iolb;
using namespace iolb::plp;
using poly::Subspace;

namespace {

RatVec v(std::initializer_list<long> xs) {
  RatVec r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

LpConstraint unit(std::vector<int> c) { return {c, LogExpr::number(1), true}; }
LpConstraint bounded(std::vector<int> c, const poly::Posynomial& p) { return {c, LogExpr::log_of(p), false}; }
poly::Posynomial P(std::vector<poly::ParamMonomial> t) { return poly::Posynomial(std::move(t)); }

bool same_constraints(std::vector<LpConstraint> a, std::vector<LpConstraint> b) {
  if (a.size() != b.size()) return false;
  for (const auto& c : a)
    if (std::find(b.begin(), b.end(), c) == b.end()) return false;
  return true;
}

// Jacobi 1D statement domain with the two orthogonal circuit directions
ExpLP jacobi_lp() {
  auto D = poly::parse_set("[T,N] -> { S2[t,i] : 0 <= t < T and 1 <= i < N-1 }");
  return build_lp(D, {Subspace(2, {v({1, 1})}), Subspace(2, {v({1, -1})})});
}

ExpLP matmul_like_lp() {
  auto D = poly::parse_set("[N] -> { S[i,j,k] : 0 <= i < N and 0 <= j < N and 0 <= k < N }");
  return build_lp(D, {Subspace(3, {v({0, 0, 1})}), Subspace(3, {v({0, 1, 0})}),
                      Subspace(3, {v({1, 0, 0}), v({0, 1, 0})})});
}

ExpLP scaled_matmul_lp() {
  auto D = poly::parse_set("[N] -> { S[i,j,k] : 0 <= i < N and 0 <= j < N and 0 <= k < N }");
  return build_lp(D, {Subspace(3, {v({0, 1, 0})}), Subspace(3, {v({1, 0, 0})}), Subspace(3, {v({0, 0, 1})})});
}

const asym::Atom NT = asym::Atom({poly::ParamMonomial{{"N", 1}}, poly::ParamMonomial{{"T", 1}}});
const asym::Atom N = asym::param_atom("N");

AtomValues random_values(const ExpLP& lp, std::mt19937& rng) {
  AtomValues vals;
  for (const auto& a : lp.atoms()) {
    vals[a] = Rational(static_cast<long>(rng() % 301), 100);
    vals[a].canonicalize();
  }
  return vals;
}

}  // namespace

TEST_CASE("matmul-like exponent program") {
  auto lp = matmul_like_lp();
  CHECK(same_constraints(lp.unit_constraints(), {unit({1, 1, 0}), unit({1, 0, 1}), unit({0, 0, 1})}));
  CHECK(lp.str().rfind("Maximize x1+x2+x3\n", 0) == 0);
  auto sol = solve_plp(lp);
  AtomValues big{{N, 5}};
  const auto& c = sol.at(big);
  CHECK(c.x == std::vector<LogExpr>{LogExpr::number(0), LogExpr::number(1), LogExpr::number(1)});
  CHECK(c.theta == LogExpr::number(2));
  // only unit constraints: the solution is parameter free
  ExpLP pure = lp;
  pure.cons = lp.unit_constraints();
  auto ps = solve_plp(pure);
  REQUIRE(ps.cases.size() == 1);
  CHECK(ps.cases[0].theta == LogExpr::number(2));
  auto b = assemble_bound(P({{{"N", 3}}}), sol, {});
  CHECK(b.render_case(b.cases[0]) == "Omega(N^3/S)");
}

TEST_CASE("Jacobi exponent program") {
  auto lp = jacobi_lp();
  CHECK(same_constraints(lp.cons, {unit({1, 0}), unit({0, 1}), bounded({1, 0}, P({{{"N", 1}}, {{"T", 1}}})),
                                   bounded({0, 1}, P({{{"N", 1}}, {{"T", 1}}}))}));
  auto sol = solve_plp(lp);
  REQUIRE(sol.cases.size() == 2);
  CHECK(sol.cases[0].region.str() == "log_S(N+T) >= 1");
  CHECK(sol.cases[0].x == std::vector<LogExpr>{LogExpr::number(1), LogExpr::number(1)});
  LogExpr l;
  l.coef[NT] = 1;
  CHECK(sol.cases[1].x == std::vector<LogExpr>{l, l});
  CHECK(sol.str() == "if log_S(N+T) >= 1 then x1=x2=1 (theta=2)\nelse if log_S(N+T) <= 1 then x1=x2=log_S(N+T) (theta=2*log_S(N+T))\n");
  AtomValues at{{NT, Rational(7, 10)}};
  CHECK(solve_at(lp, at) == Rational(7, 5));
  CHECK(sol.at(at).theta.eval(at) == Rational(7, 5));
  CHECK(verify_numeric(lp, sol, at));
  CHECK_THROWS_AS(verify_numeric(lp, sol, {{NT, -1}}), Error);
  auto b = assemble_bound(P({{{"N", 1}, {"T", 1}}}), sol, {asym::Monomial::param("N"), asym::Monomial::param("T")});
  CHECK(b.render_case(b.cases[0]) == "Omega(N*T/S - (N+T))");
  CHECK(b.cases[1].region.str() == "log_S(N+T) <= 1");
}

TEST_CASE("scaled matmul exponent program") {
  auto lp = scaled_matmul_lp();
  REQUIRE(lp.cons.size() == 9);
  auto n = P({{{"N", 1}}}), n2 = P({{{"N", 2}}});
  CHECK(same_constraints(lp.cons, {unit({1, 1, 0}), unit({0, 1, 1}), unit({1, 0, 1}), bounded({1, 0, 0}, n),
                                   bounded({0, 1, 0}, n), bounded({0, 0, 1}, n), bounded({1, 1, 0}, n2),
                                   bounded({0, 1, 1}, n2), bounded({1, 0, 1}, n2)}));
  auto sol = solve_plp(lp);
  REQUIRE(sol.cases.size() == 2);
  CHECK(sol.cases[0].region.str() == "2*log_S(N) >= 1");
  auto h = LogExpr::number(Rational(1, 2));
  CHECK(sol.cases[0].x == std::vector<LogExpr>{h, h, h});
  auto b = assemble_bound(P({{{"N", 3}}}), sol, {asym::Monomial::param("N", 2)});
  CHECK(b.render() == "Omega(N^3/sqrt(S) - N^2) when 2*log_S(N) >= 1\n0 when 2*log_S(N) <= 1");
}

TEST_CASE("full volume gives the degenerate identity bound") {
  ExpLP lp;
  lp.vars = 3;
  lp.cons = {bounded({1, 0, 0}, P({{}})) };
  lp.cons[0].rhs = LogExpr::number(1);
  lp.cons.push_back({{0, 1, 0}, LogExpr::number(1), true});
  lp.cons.push_back({{0, 0, 1}, LogExpr::number(1), true});
  auto sol = solve_plp(lp);
  REQUIRE(sol.cases.size() == 1);
  CHECK(sol.cases[0].theta == LogExpr::number(3));
  CHECK(assemble_bound(P({{{"N", 3}}}), sol, {}).render() == "Omega(N^3/S^2)");
}

TEST_CASE("parametric arity is capped") {
  ExpLP lp;
  lp.vars = 1;
  for (const char* p : {"A", "B", "C", "D", "E"}) lp.cons.push_back(bounded({1}, P({{{p, 1}}})));
  CHECK_THROWS_WITH_AS(solve_plp(lp), "parametric arity exceeded", Error);
}

TEST_CASE("piecewise solutions agree with exact simplex") {
  std::mt19937 rng(11);
  for (auto lp : {matmul_like_lp(), jacobi_lp(), scaled_matmul_lp()}) {
    auto sol = solve_plp(lp);
    for (int i = 0; i < 100; ++i) {
      auto vals = random_values(lp, rng);
      CHECK(verify_numeric(lp, sol, vals));
      // theta never exceeds the dimension
      CHECK(solve_at(lp, vals) <= lp.vars);
    }
  }
}

TEST_CASE("relaxing a bound never lowers theta") {
  std::mt19937 rng(5);
  for (auto lp : {matmul_like_lp(), jacobi_lp(), scaled_matmul_lp()}) {
    auto sol = solve_plp(lp);
    for (size_t k = 0; k < lp.cons.size(); ++k) {
      ExpLP relaxed = lp;
      relaxed.cons[k].rhs = relaxed.cons[k].rhs + LogExpr::number(Rational(1, 3));
      auto rs = solve_plp(relaxed);
      for (int i = 0; i < 10; ++i) {
        auto vals = random_values(lp, rng);
        CHECK(rs.at(vals).theta.eval(vals) >= sol.at(vals).theta.eval(vals));
      }
    }
  }
}

TEST_CASE("unit program matches its dual") {
  for (auto lp : {matmul_like_lp(), jacobi_lp(), scaled_matmul_lp()}) {
    auto units = lp.unit_constraints();
    ExpLP pure = lp;
    pure.cons = units;
    Rational primal = solve_at(pure, {});
    // minimize sum s_j with sum_j s_j delta_ij >= 1 for every i
    RatMat rows;
    RatVec rhs;
    for (int i = 0; i < lp.vars; ++i) {
      RatVec r(units.size(), 0);
      for (size_t j = 0; j < units.size(); ++j) r[j] = -units[j].coeffs[i];
      rows.push_back(r);
      rhs.push_back(-1);
    }
    auto dual = lp_maximize(rows, rhs, RatVec(units.size(), -1), std::vector<bool>(units.size(), true));
    REQUIRE(dual.status == LpStatus::optimal);
    CHECK(-dual.value == primal);
  }
}
