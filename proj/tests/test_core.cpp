#include <random>

#include "doctest.h"
#include "iolb/core/linalg.hpp"
#include "iolb/core/simplex.hpp"

using namespace iolb;

namespace {

RatVec vec(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Best objective over all vertices of a 2-variable polytope, by brute force
// over pairs of tight constraints.
std::optional<Rational> vertex_oracle(const RatMat& a, const RatVec& b, const RatVec& c) {
  std::optional<Rational> best;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j) {
      auto inv = inverse({a[i], a[j]});
      if (!inv) continue;
      RatVec x = apply(*inv, {b[i], b[j]});
      bool ok = true;
      for (size_t k = 0; k < a.size(); ++k) ok = ok && dot(a[k], x) <= b[k];
      if (!ok) continue;
      Rational v = dot(c, x);
      if (!best || v > *best) best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("rref, rank and nullspace") {
  RatMat m{vec({1, 0, 0}), vec({0, 0, 1})};
  CHECK(rank(m) == 2);
  auto ns = nullspace(m, 3);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == vec({0, 1, 0}));
  CHECK(nullspace(identity(3), 3).empty());
}

TEST_CASE("inverse round trip") {
  RatMat m{vec({1, 1}), vec({1, -1})};
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(multiply(m, *inv) == identity(2));
  CHECK_FALSE(inverse({vec({1, 2}), vec({2, 4})}));
}

TEST_CASE("primitive vectors") {
  RatVec v{Rational(1, 2), Rational(-1, 3)};
  CHECK(primitive(v) == vec({3, -2}));
  CHECK(primitive(vec({0, -4, 2})) == vec({0, 2, -1}));
}

TEST_CASE("simplex basic statuses") {
  // max x + y, x <= 1, y <= 2
  auto r = lp_maximize({vec({1, 0}), vec({0, 1})}, vec({1, 2}), vec({1, 1}));
  CHECK(r.status == LpStatus::optimal);
  CHECK(r.value == 3);
  // infeasible: x <= -1, -x <= -1 (x >= 1)
  CHECK(lp_maximize({vec({1}), vec({-1})}, vec({-1, -1}), vec({0})).status == LpStatus::infeasible);
  // unbounded free variable
  CHECK(lp_maximize({vec({-1})}, vec({0}), vec({1})).status == LpStatus::unbounded);
  // nonnegativity flag
  auto n = lp_maximize({vec({1, 1})}, vec({4}), vec({-1, 1}), {true, true});
  CHECK(n.value == 4);
}

TEST_CASE("simplex matches vertex enumeration on random bounded LPs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5), rhs(0, 12);
  for (int trial = 0; trial < 200; ++trial) {
    RatMat a{vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})};
    RatVec b{Rational(10), Rational(10), Rational(10), Rational(10)};
    for (int k = 0; k < 4; ++k) {
      a.push_back(vec({coef(rng), coef(rng)}));
      b.push_back(Rational(rhs(rng) - 3));
    }
    RatVec c = vec({coef(rng), coef(rng)});
    auto oracle = vertex_oracle(a, b, c);
    auto r = lp_maximize(a, b, c);
    if (!oracle) {
      CHECK(r.status == LpStatus::infeasible);
    } else {
      REQUIRE(r.status == LpStatus::optimal);
      CHECK(r.value == *oracle);
    }
  }
}
