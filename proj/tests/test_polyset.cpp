#include <random>

#include "doctest.h"
#include "iolb/core/error.hpp"
#include "iolb/core/linalg.hpp"
#include "iolb/polyset/affine.hpp"
#include "iolb/polyset/count.hpp"
#include "iolb/polyset/parse.hpp"
#include "oracle.hpp"

using namespace iolb;
using namespace iolb::poly;

namespace {

const ParamSpace kTN{"T", "N"};

IntSet S(const std::string& t, const ParamSpace* g = &kTN) { return parse_set(t, g); }
AffRelation R(const std::string& t, const ParamSpace* g = &kTN) { return parse_relation(t, g); }

long long card(const IntSet& s, const Binding& b) { return card_at(s, b).get_si(); }

std::vector<Binding> tn_bindings() {
  return {{{"T", 11}, {"N", 11}}, {{"T", 6}, {"N", 9}}, {{"T", 13}, {"N", 7}}, {{"T", 5}, {"N", 5}}, {{"T", 20}, {"N", 14}}};
}

RatVec vec(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

const char* kDS2 = "[T,N] -> { S2[t,i] : 1<=t<T and 1<=i<N-1 }";
const char* kE7 = "[T,N] -> { S2[t,i] -> S3[t,i] : 1<=t<T and 1<=i<N-1 }";
const char* kE8 = "[T,N] -> { S3[t,i] -> S2[t+1,i+1] : 1<=t<T-1 and 1<=i<N-2 }";
const char* kE9 = "[T,N] -> { S3[t,i] -> S2[t+1,i] : 1<=t<T-1 and 1<=i<N-1 }";
const char* kE10 = "[T,N] -> { S3[t,i] -> S2[t+1,i-1] : 1<=t<T-1 and 2<=i<N-1 }";

}  // namespace

TEST_CASE("card_at small examples") {
  ParamSpace n{"n"};
  CHECK(card(parse_set("[n] -> { A[i,j] : 0<=i<j<n }", &n), {{"n", 10}}) == 45);
  CHECK(card(parse_set("[N] -> { A[i] : 0<=i<N }"), {{"N", 7}}) == 7);
  CHECK(card(S(kDS2), {{"T", 4}, {"N", 6}}) == 12);
  CHECK(card(S("[T,N] -> { S[i] : i >= 0 and i < 0 }"), {{"T", 1}, {"N", 1}}) == 0);
  CHECK_THROWS(card(S("[T,N] -> { S[i] : i >= 0 }"), {{"T", 1}, {"N", 1}}));
}

TEST_CASE("intersect") {
  auto a = S("[T,N] -> { A[i] : 0<=i<N }");
  auto b = S("[T,N] -> { A[i] : i>=3 }");
  CHECK(oracle::same_at(intersect(a, b), S("[T,N] -> { A[i] : 3<=i<N }"), {{"T", 1}, {"N", 20}}));
  CHECK(intersect(a, IntSet::empty("A", 1, kTN)).pieces.empty());
  auto rc1 = compose(R(kE8), R(kE7));
  auto expect = S("[T,N] -> { S2[t,i] : 2<=t<T-1 and 2<=i<N-2 }");
  for (const auto& b : tn_bindings()) CHECK(oracle::same_at(intersect(domain(rc1), image(rc1)), expect, b));
}

TEST_CASE("compose follows the quoted domain and image rule") {
  auto rp = compose(R(kE8), R(kE7));
  CHECK(rp.in_tag == "S2");
  CHECK(rp.out_tag == "S2");
  auto quoted = R("[T,N] -> { S2[t,i] -> S2[t+1,i+1] : 1<=t<T-1 and 1<=i<N-2 }");
  for (const auto& b : tn_bindings()) {
    CHECK(oracle::same_rel_at(rp, quoted, b));
    CHECK(oracle::same_at(domain(rp), S("[T,N] -> { S2[t,i] : 1<=t<T-1 and 1<=i<N-2 }"), b));
    CHECK(oracle::same_at(image(rp), S("[T,N] -> { S2[t,i] : 2<=t<T and 2<=i<N-1 }"), b));
  }
  // identity on the left leaves the relation unchanged
  auto id = identity_relation(S("[T,N] -> { S2[t,i] : 1<=t<T and 1<=i<N-1 }"));
  for (const auto& b : tn_bindings()) CHECK(oracle::same_rel_at(compose(id, rp), rp, b));
  // disjoint middle sets
  auto r1 = R("[T,N] -> { A[i] -> B[i] : 0<=i<5 }");
  auto r2 = R("[T,N] -> { B[i] -> C[i] : 10<=i<20 }");
  CHECK(compose(r2, r1).pieces.empty());
}

TEST_CASE("compose domain matches brute-force join") {
  auto r1 = R("[T,N] -> { A[i,j] -> B[i+j] : 0<=i<N and 0<=j<T }");
  auto r2 = R("[T,N] -> { B[k] -> C[k,k] : 2<=k<N }");
  auto c = compose(r2, r1);
  Binding b{{"T", 4}, {"N", 7}};
  long long brute = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 4; ++j)
      if (i + j >= 2 && i + j < 7) ++brute;
  CHECK(card(domain(c), b) == brute);
}

TEST_CASE("domain, image and apply of the sample relation") {
  ParamSpace n{"n"};
  auto r1 = parse_relation("[n] -> { S1[i] -> B[i+1] : 0<=i<n }", &n);
  for (long long v : {1, 5, 17}) {
    Binding b{{"n", v}};
    CHECK(oracle::same_at(domain(r1), parse_set("[n] -> { S1[i] : 0<=i<n }", &n), b));
    CHECK(oracle::same_at(image(r1), parse_set("[n] -> { B[i] : 1<=i<n+1 }", &n), b));
  }
  auto d = S(kDS2);
  auto id = identity_relation(d);
  for (const auto& b : tn_bindings()) CHECK(oracle::same_at(apply(id, d), d, b));
}

TEST_CASE("frontiers of the Jacobi circuits") {
  auto e7 = R(kE7);
  struct Case {
    const char* edge;
    const char* printed;
  } cases[] = {
      {kE8, "[T,N] -> { S2[1,i] : 2<=i<N-2; S2[t,1] : 1<=t<T-1 }"},
      {kE9, "[T,N] -> { S2[1,i] : 1<=i<N-1 }"},
      {kE10, "[T,N] -> { S2[1,i] : 2<=i<N-1; S2[t,N-2] : 2<=t<T-1 }"},
  };
  for (const auto& c : cases) {
    auto r = compose(R(c.edge), e7);
    auto f = frontier(domain(r), r);
    for (const auto& b : tn_bindings()) {
      CHECK(oracle::same_at(f, S(c.printed), b));
      CHECK(card(intersect(f, apply(r, domain(r))), b) == 0);
    }
  }
  // empty relation leaves the whole domain as frontier
  auto d = S(kDS2);
  AffRelation none = R(kE7);
  none.in_tag = none.out_tag = "S2";
  none.pieces.clear();
  CHECK(oracle::same_at(frontier(d, none), d, tn_bindings()[0]));
  CHECK(oracle::same_at(subtract(d, IntSet::empty("S2", 2, kTN)), d, tn_bindings()[1]));
}

TEST_CASE("project_out") {
  ParamSpace nm{"N", "M"};
  auto box = parse_set("[N,M] -> { A[i,j] : 0<=i<N and 0<=j<M }", &nm);
  CHECK(oracle::same_at(project_out(box, {1}), parse_set("[N,M] -> { A[i] : 0<=i<N }", &nm), {{"N", 6}, {"M", 3}}));
  auto cube = parse_set("[N,M] -> { A[i,j,k] : 0<=i<N and 0<=j<N and 0<=k<N }", &nm);
  Binding b{{"N", 5}, {"M", 1}};
  CHECK(oracle::same_at(project_out(cube, {2}), parse_set("[N,M] -> { A[i,j] : 0<=i<N and 0<=j<N }", &nm), b));
  CHECK(oracle::same_at(project_out(cube, {0, 1}), parse_set("[N,M] -> { A[k] : 0<=k<N }", &nm), b));
}

TEST_CASE("dimensions") {
  ParamSpace n{"N"};
  CHECK(dim_of(parse_set("[N] -> { S1[i] : 0<=i<N }", &n)) == 1);
  CHECK(dim_of(S(kDS2)) == 2);
  CHECK(dim_of(S("[T,N] -> { P[i,j] : i = 3 and j = 4 }")) == 0);
  CHECK(dim_of(S("[T,N] -> { L[t,i] : 1<=t<T and i = N-2 }")) == 1);
  ParamSpace nm{"n", "m"};
  // |D| = n*m + n + 3
  auto d = parse_set("[n,m] -> { D[i,j] : 0<=i<n and 0<=j<m; D[i,j] : 0<=i<n and j = -1; D[i,j] : 0<=i<3 and j = -5 }", &nm);
  CHECK(card(d, {{"n", 100}, {"m", 100}}) == 100 * 100 + 100 + 3);
  CHECK(dim_by_counting(d) == 2);
  CHECK(dim_of(d) == 2);
  CHECK(dim_of(project_out(d, {1})) <= dim_of(d));
}

TEST_CASE("card_leading") {
  CHECK(card_leading(S(kDS2)).str() == "N*T");
  ParamSpace n{"N"};
  CHECK(card_leading(parse_set("[N] -> { S1[i,j,k] : 0<=i<N and 0<=j<N and 0<=k<N }", &n)).str() == "N^3");
  CHECK(card_leading(parse_set("[N] -> { A[i] : 0<=i<N }", &n)).str() == "N");
  CHECK(card_leading(S("[T,N] -> { P[i] : 0<=i<N+T-6 }")).str() == "N+T");
  CHECK(card_leading(S("[T,N] -> { P[i] : i = 4 }")).str() == "1");
  CHECK_THROWS(card_leading(S("[T,N] -> { P[i] : 0<=i<N and i<T }")));
}

TEST_CASE("affine maps, translations and kernels") {
  auto rc1 = compose(R(kE8), R(kE7));
  auto rc3 = compose(R(kE10), R(kE7));
  CHECK(*as_translation(rc1) == vec({1, 1}));
  CHECK(*as_translation(rc3) == vec({1, -1}));
  ParamSpace n{"N"};
  auto e1 = parse_relation("[N] -> { A[i,j] -> S1[i,j',j] : 0<=i<N and 0<=j<N and 0<=j'<N }", &n);
  auto e2 = parse_relation("[N] -> { A[i,j] -> S1[i',j,i] : 0<=i'<N and 0<=i<N and 0<=j<N }", &n);
  CHECK_FALSE(as_translation(e1));
  CHECK_FALSE(as_affine_map(e1));
  auto m1 = as_affine_map(inverse(e1));
  REQUIRE(m1);
  CHECK(m1->matrix == RatMat{vec({1, 0, 0}), vec({0, 0, 1})});
  CHECK(m1->offset == std::vector<RatVec>{vec({0, 0}), vec({0, 0})});
  CHECK(kernel_basis(*m1).primitive_basis() == std::vector<RatVec>{vec({0, 1, 0})});
  auto m2 = as_affine_map(inverse(e2));
  REQUIRE(m2);
  CHECK(m2->matrix == RatMat{vec({0, 0, 1}), vec({0, 1, 0})});
  CHECK(kernel_basis(*m2).primitive_basis() == std::vector<RatVec>{vec({1, 0, 0})});
  auto id = as_affine_map(identity_relation(S(kDS2)));
  REQUIRE(id);
  CHECK(id->matrix == identity(2));
  CHECK(kernel_basis(*id).dim() == 0);
  CHECK_FALSE(as_affine_map(parse_relation("[N] -> { A[i] -> B[j] : 0<=i<=j<N }", &n)));
  // parameter dependent offset
  auto rev = as_affine_map(parse_relation("[N] -> { A[i] -> B[N-1-i] : 0<=i<N }", &n));
  REQUIRE(rev);
  CHECK(rev->offset[0] == vec({1, -1}));
}

TEST_CASE("change of basis") {
  ParamSpace n{"N"};
  auto sq = parse_set("[N] -> { Q[i,j] : 0<=i<N and 0<=j<N }", &n);
  CHECK(oracle::same_at(change_basis(sq, identity(2)), sq, {{"N", 6}}));
  RatMat m{vec({1, 1}), vec({1, -1})};
  auto diamond = change_basis(sq, m);
  long long a = card(sq, {{"N", 20}}), b = card(diamond, {{"N", 20}});
  CHECK(b * 2 >= a - 40);
  CHECK(b * 2 <= a + 40);
  // Jacobi directions become the coordinate axes
  auto b1 = base({Subspace(2, {vec({1, 1})}), Subspace(2, {vec({1, -1})})}, 2, true);
  REQUIRE(b1);
  CHECK((*b1)[0] == vec({1, 1}));
  CHECK((*b1)[1] == vec({1, -1}));
  CHECK(change_basis(sq, basis_matrix(*b1)).dims == 2);
}

TEST_CASE("base of compatible subspaces") {
  auto e = [](int k) {
    RatVec v(3, 0);
    v[k] = 1;
    return v;
  };
  std::vector<Subspace> K{Subspace(3, {e(2)}), Subspace(3, {e(1)}), Subspace(3, {e(0), e(1)})};
  auto b = base(K, 3);
  REQUIRE(b);
  CHECK((*b)[0] == e(0));
  CHECK((*b)[1] == e(1));
  CHECK((*b)[2] == e(2));
  // three pairwise non-orthogonal directions in the plane are incompatible
  std::vector<Subspace> bad{Subspace(2, {vec({1, 1})}), Subspace(2, {vec({1, 0})}), Subspace(2, {vec({1, -1})})};
  CHECK_FALSE(base(bad, 2));
  CHECK_FALSE(base({Subspace(2, {vec({1, 1})}), Subspace(2, {vec({1, 0})})}, 2, true));
  CHECK(base({Subspace(2, {vec({1, 1})}), Subspace(2, {vec({1, 0})})}, 2, false));
}

TEST_CASE("parser errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_set("[N] -> { A[i] : 0 <= i < M }", nullptr), doctest::Contains("unknown identifier"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_set("[N] -> { A[i] : 0 <= }"), doctest::Contains("1:"), Error);
  CHECK_THROWS(parse_set("[N] -> { A[i] : i*i >= 0 }"));
}

TEST_CASE("randomized counting against naive enumeration") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> c(-2, 2), dimd(1, 3), nd(3, 12), kd(-4, 4), extra(0, 3), npieces(1, 2);
  ParamSpace n{"N"};
  for (int trial = 0; trial < 60; ++trial) {
    int d = dimd(rng);
    IntSet s = IntSet::empty("X", d, n);
    int pieces = npieces(rng);
    for (int p = 0; p < pieces; ++p) {
      Polyhedron poly(d, 1);
      for (int k = 0; k < d; ++k) {
        RatVec lo(d + 2, 0), hi(d + 2, 0);
        lo[k] = 1;
        hi[k] = -1;
        hi[d] = 1;
        hi[d + 1] = -1;
        poly.add_ge(lo);
        poly.add_ge(hi);
      }
      int ex = extra(rng);
      for (int e = 0; e < ex; ++e) {
        RatVec v(d + 2);
        for (int k = 0; k < d; ++k) v[k] = c(rng);
        v[d] = c(rng);
        v[d + 1] = kd(rng);
        poly.add_ge(v);
      }
      s.pieces.push_back(poly);
    }
    Binding b{{"N", nd(rng)}};
    long long expect = oracle::naive_count(s, b, -1, b["N"] + 1);
    CHECK(card(s, b) == expect);
    // subtract then union restores the count
    IntSet t = IntSet::universe("X", d, n);
    t.pieces[0].add_ge([&] {
      RatVec v(d + 2, 0);
      v[0] = 2;
      v[d] = -1;
      return v;
    }());
    CHECK(card(subtract(s, t), b) + card(intersect(s, t), b) == expect);
  }
}
