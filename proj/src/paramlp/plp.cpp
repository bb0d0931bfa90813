#include "iolb/paramlp/plp.hpp"

#include <algorithm>
#include <set>

#include "iolb/core/error.hpp"
#include "iolb/core/linalg.hpp"
#include "iolb/core/simplex.hpp"
#include "iolb/polyset/count.hpp"

namespace iolb::plp {
namespace {

constexpr int kMaxDims = 4;
constexpr size_t kMaxAtoms = 4;

std::string sum_str(const std::vector<int>& coeffs) {
  std::string s;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i]) s += (s.empty() ? "" : "+") + ("x" + std::to_string(i + 1));
  return s;
}

std::string rhs_str(const LogExpr& e) { return e.str(); }

// Rows of the full system: constraints, then -x_i <= 0.
struct Row {
  RatVec a;
  LogExpr b;
};

std::vector<Row> all_rows(const ExpLP& lp) {
  std::vector<Row> rows;
  for (const auto& c : lp.cons) {
    RatVec a(lp.vars, 0);
    for (int i = 0; i < lp.vars; ++i) a[i] = c.coeffs[i];
    rows.push_back({a, c.rhs});
  }
  for (int i = 0; i < lp.vars; ++i) {
    RatVec a(lp.vars, 0);
    a[i] = -1;
    rows.push_back({a, LogExpr::number(0)});
  }
  return rows;
}

// Dual multipliers of the objective perturbed by eps^k e_k must be lex >= 0,
// which picks one optimal vertex per parameter point.
bool lex_dual_feasible(const RatMat& Minv, int d) {
  // y columns: Minv^T [c, e1..ed]; row r of y is for basis row r
  for (int r = 0; r < d; ++r) {
    RatVec seq;
    Rational yc = 0;
    for (int i = 0; i < d; ++i) yc += Minv[i][r];
    seq.push_back(yc);
    for (int k = 0; k < d; ++k) seq.push_back(Minv[k][r]);
    for (const auto& v : seq) {
      if (v > 0) break;
      if (v < 0) return false;
    }
  }
  return true;
}

void subsets(int n, int k, int start, std::vector<int>& cur, const std::function<void()>& f) {
  if (static_cast<int>(cur.size()) == k) {
    f();
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

std::vector<std::string> x_strs(const std::vector<LogExpr>& x) {
  std::vector<std::string> out;
  for (const auto& e : x) out.push_back(e.str());
  return out;
}

}  // namespace

std::string LpConstraint::str() const { return sum_str(coeffs) + " <= " + rhs_str(rhs); }

std::vector<LpConstraint> ExpLP::unit_constraints() const {
  std::vector<LpConstraint> out;
  for (const auto& c : cons)
    if (c.unit) out.push_back(c);
  return out;
}

std::vector<asym::Atom> ExpLP::atoms() const {
  std::set<asym::Atom> s;
  for (const auto& c : cons)
    for (const auto& [a, v] : c.rhs.coef) s.insert(a);
  return {s.begin(), s.end()};
}

std::string ExpLP::str() const {
  std::vector<int> all(vars, 1);
  std::string s = "Maximize " + sum_str(all) + "\n";
  for (const auto& c : cons) s += "  " + c.str() + "\n";
  return s;
}

ExpLP build_lp(const poly::IntSet& D, const std::vector<poly::Subspace>& K) {
  auto b = poly::base(K, D.dims, true);
  if (!b) b = poly::base(K, D.dims, false);
  if (!b) fail(ErrorKind::internal, "subspaces have no adapted basis");
  return build_lp(D, K, *b);
}

ExpLP build_lp(const poly::IntSet& D, const std::vector<poly::Subspace>& K, const std::vector<RatVec>& basis) {
  const int d = D.dims;
  if (d > kMaxDims) fail(ErrorKind::cap, "domain dimension " + std::to_string(d) + " exceeds " + std::to_string(kMaxDims));
  if (static_cast<int>(basis.size()) != d) fail(ErrorKind::internal, "basis does not span the domain");
  ExpLP lp;
  lp.vars = d;
  lp.basis = basis;
  for (const auto& k : K) {
    LpConstraint c;
    c.unit = true;
    c.rhs = LogExpr::number(1);
    bool any = false;
    for (int i = 0; i < d; ++i) {
      c.coeffs.push_back(k.contains(basis[i]) ? 0 : 1);
      any = any || c.coeffs.back();
    }
    if (any && std::find(lp.cons.begin(), lp.cons.end(), c) == lp.cons.end()) lp.cons.push_back(c);
  }
  // small problem sizes: the projection onto any proper subset of the basis
  auto Dp = poly::change_basis(D, poly::basis_matrix(basis));
  for (int size = 1; size < d; ++size) {
    std::vector<int> cur;
    subsets(d, size, 0, cur, [&] {
      LpConstraint c;
      c.coeffs.assign(d, 0);
      for (int i : cur) c.coeffs[i] = 1;
      c.rhs = LogExpr::log_of(poly::card_leading(poly::keep_dims(Dp, cur)));
      lp.cons.push_back(c);
    });
  }
  return lp;
}

const PlpCase& PiecewiseSolution::at(const AtomValues& v) const {
  const PlpCase* best = nullptr;
  for (const auto& c : cases)
    if (c.region.contains(v) && (!best || c.theta.eval(v) < best->theta.eval(v))) best = &c;
  if (!best) fail(ErrorKind::internal, "no solution case holds at the binding");
  return *best;
}

std::string PiecewiseSolution::str() const {
  std::string s;
  for (size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    auto xs = x_strs(c.x);
    std::string assign;
    // runs of equal values print as x1=x2=v
    std::vector<bool> used(xs.size(), false);
    for (size_t a = 0; a < xs.size(); ++a) {
      if (used[a]) continue;
      std::string part;
      for (size_t b = a; b < xs.size(); ++b)
        if (!used[b] && xs[b] == xs[a]) {
          used[b] = true;
          part += "x" + std::to_string(b + 1) + "=";
        }
      assign += (assign.empty() ? "" : ", ") + part + xs[a];
    }
    if (cases.size() == 1)
      s += assign;
    else
      s += std::string(i == 0 ? "if " : "else if ") + c.region.str() + " then " + assign;
    s += " (theta=" + c.theta.str() + ")\n";
  }
  return s;
}

PiecewiseSolution solve_plp(const ExpLP& lp) {
  if (lp.atoms().size() > kMaxAtoms) fail(ErrorKind::cap, "parametric arity exceeded");
  const int d = lp.vars;
  auto rows = all_rows(lp);
  const int m = static_cast<int>(rows.size());
  PiecewiseSolution sol;
  std::set<std::vector<LogExpr>> seen;
  std::vector<int> cur;
  subsets(m, d, 0, cur, [&] {
    RatMat M;
    for (int r : cur) M.push_back(rows[r].a);
    auto Minv = iolb::inverse(M);
    if (!Minv || !lex_dual_feasible(*Minv, d)) return;
    std::vector<LogExpr> x(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) x[i] = x[i] + rows[cur[j]].b * (*Minv)[i][j];
    if (!seen.insert(x).second) return;
    // the vertex is optimal wherever it is feasible
    Region reg;
    for (const auto& row : rows) {
      LogExpr slack = row.b;
      for (int i = 0; i < d; ++i) slack = slack - x[i] * row.a[i];
      if (slack.is_constant() && slack.constant >= 0) continue;
      reg.cons.push_back(slack);
    }
    reg = reg.simplified();
    if (!reg.has_interior()) return;
    PlpCase c;
    c.region = reg;
    c.x = x;
    for (const auto& e : x) c.theta = c.theta + e;
    sol.cases.push_back(c);
  });
  // the large-parameter case first
  AtomValues big;
  for (const auto& a : lp.atoms()) big[a] = 100;
  std::stable_sort(sol.cases.begin(), sol.cases.end(), [&](const PlpCase& a, const PlpCase& b) {
    auto ta = a.theta.eval(big), tb = b.theta.eval(big);
    if (ta != tb) return ta < tb;
    return a.region.str() < b.region.str();
  });
  if (sol.cases.empty()) fail(ErrorKind::internal, "parametric LP has no optimal vertex");
  return sol;
}

Rational solve_at(const ExpLP& lp, const AtomValues& v) {
  RatMat A;
  RatVec b;
  for (const auto& c : lp.cons) {
    RatVec a(lp.vars, 0);
    for (int i = 0; i < lp.vars; ++i) a[i] = c.coeffs[i];
    A.push_back(a);
    b.push_back(c.rhs.eval(v));
  }
  auto r = lp_maximize(A, b, RatVec(lp.vars, 1), std::vector<bool>(lp.vars, true));
  if (r.status != LpStatus::optimal) fail(ErrorKind::internal, "instantiated exponent LP is not bounded");
  return r.value;
}

bool verify_numeric(const ExpLP& lp, const PiecewiseSolution& sol, const AtomValues& v) {
  for (const auto& [a, val] : v)
    if (val < 0) fail(ErrorKind::usage, "log values must be nonnegative");
  const auto& c = sol.at(v);
  // the assignment itself must be feasible and reach the optimum
  for (const auto& con : lp.cons) {
    Rational lhs = 0;
    for (int i = 0; i < lp.vars; ++i)
      if (con.coeffs[i]) lhs += c.x[i].eval(v);
    if (lhs > con.rhs.eval(v)) return false;
  }
  for (const auto& e : c.x)
    if (e.eval(v) < 0) return false;
  return c.theta.eval(v) == solve_at(lp, v);
}

asym::AsymBound assemble_bound(const poly::Posynomial& card, const PiecewiseSolution& sol,
                               const std::vector<asym::Monomial>& charges) {
  asym::AsymBound out;
  for (const auto& c : sol.cases) {
    // S / U = S^(1 - c0) * prod a^(-c_a)
    asym::Monomial factor;
    factor.s_exp = 1 - c.theta.constant;
    for (const auto& [a, k] : c.theta.coef) factor.exps[a] = -k;
    asym::BoundCase bc;
    bc.region = c.region;
    bool grows = false;
    for (const auto& m : asym::monomials_of(card)) {
      auto t = m * factor;
      for (const auto& [a, e] : t.exps) grows = grows || e > 0;
      bc.pos.push_back(t);
    }
    if (!grows) bc.pos.clear();
    out.cases.push_back(bc);
  }
  return asym::subtract_tags(asym::simplify(out), charges);
}

}  // namespace iolb::plp
