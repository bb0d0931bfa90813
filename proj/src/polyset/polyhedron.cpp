#include "iolb/polyset/polyhedron.hpp"

#include <algorithm>

#include "iolb/core/linalg.hpp"
#include "iolb/core/simplex.hpp"

namespace iolb::poly {
namespace {

// Returns false when the constraint is trivially true (drop it); sets bad
// when it is trivially false.
bool normalize(Constraint& c, int vars, bool& bad) {
  Integer l = 1;
  for (const auto& x : c.coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (auto& x : c.coeffs) x *= l;
  Integer g = 0;
  for (int j = 0; j < vars; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.coeffs[j].get_num_mpz_t());
  Rational& k = c.coeffs[vars];
  if (g == 0) {
    if (c.equality ? sgn(k) != 0 : sgn(k) < 0) bad = true;
    return false;
  }
  for (int j = 0; j < vars; ++j) c.coeffs[j] /= g;
  if (c.equality) {
    Rational q = k / g;
    if (q.get_den() != 1) {
      bad = true;
      return false;
    }
    k = q;
    int s = 0;
    for (int j = 0; j < vars && s == 0; ++j) s = sgn(c.coeffs[j]);
    if (s < 0)
      for (auto& x : c.coeffs) x = -x;
  } else {
    k = Rational(floor_div(k / g));
  }
  return true;
}

void lp_system(const Polyhedron& p, RatMat& rows, RatVec& rhs, const Constraint* skip = nullptr) {
  // a.x + k >= 0 becomes -a.x <= k; equalities add a.x <= -k.
  const int n = p.dims + p.params;
  for (const auto& c : p.cons) {
    if (&c == skip) continue;
    RatVec r(n);
    for (int j = 0; j < n; ++j) r[j] = -c.coeffs[j];
    rows.push_back(r);
    rhs.push_back(c.coeffs[n]);
    if (c.equality) {
      for (auto& x : r) x = -x;
      rows.push_back(r);
      rhs.push_back(-c.coeffs[n]);
    }
  }
}

// Minimum of the affine form over p (nullopt when unbounded or empty).
std::optional<Rational> minimize(const Polyhedron& p, const RatVec& form, const Constraint* skip = nullptr) {
  RatMat rows;
  RatVec rhs;
  lp_system(p, rows, rhs, skip);
  const int n = p.dims + p.params;
  RatVec c(n);
  for (int j = 0; j < n; ++j) c[j] = -form[j];
  LpResult r = lp_maximize(rows, rhs, c);
  if (r.status != LpStatus::optimal) return std::nullopt;
  return -r.value + form[n];
}

}  // namespace

void Polyhedron::add(Constraint c) {
  if (contradiction) return;
  c.coeffs.resize(width(), 0);
  bool bad = false;
  if (!normalize(c, dims + params, bad)) {
    if (bad) {
      contradiction = true;
      cons.clear();
    }
    return;
  }
  for (const auto& e : cons)
    if (e == c) return;
  cons.push_back(std::move(c));
}

bool Polyhedron::is_empty() const {
  if (contradiction) return true;
  if (cons.empty()) return false;
  RatMat rows;
  RatVec rhs;
  lp_system(*this, rows, rhs);
  RatVec c(dims + params, 0);
  return lp_maximize(rows, rhs, c).status == LpStatus::infeasible;
}

Polyhedron Polyhedron::intersect(const Polyhedron& o) const {
  Polyhedron r = *this;
  if (o.contradiction) {
    r.contradiction = true;
    r.cons.clear();
    return r;
  }
  for (const auto& c : o.cons) r.add(c);
  return r;
}

Polyhedron Polyhedron::eliminate(int dim) const {
  Polyhedron out(dims - 1, params);
  if (contradiction) {
    out.contradiction = true;
    return out;
  }
  auto drop_col = [&](const RatVec& v) {
    RatVec r;
    r.reserve(v.size() - 1);
    for (size_t j = 0; j < v.size(); ++j)
      if (static_cast<int>(j) != dim) r.push_back(v[j]);
    return r;
  };
  const Constraint* pivot = nullptr;
  for (const auto& c : cons)
    if (c.equality && sgn(c.coeffs[dim]) != 0) {
      pivot = &c;
      break;
    }
  if (pivot) {
    for (const auto& c : cons) {
      if (&c == pivot) continue;
      RatVec v = c.coeffs;
      if (sgn(v[dim]) != 0) {
        Rational f = v[dim] / pivot->coeffs[dim];
        for (size_t j = 0; j < v.size(); ++j) v[j] -= f * pivot->coeffs[j];
      }
      out.add({drop_col(v), c.equality});
    }
    return out.remove_redundant();
  }
  std::vector<const Constraint*> pos, neg;
  for (const auto& c : cons) {
    int s = sgn(c.coeffs[dim]);
    if (s == 0)
      out.add({drop_col(c.coeffs), c.equality});
    else if (s > 0)
      pos.push_back(&c);
    else
      neg.push_back(&c);
  }
  for (const auto* p : pos)
    for (const auto* n : neg) {
      Rational a = p->coeffs[dim], b = -n->coeffs[dim];
      RatVec v(width());
      for (int j = 0; j < width(); ++j) v[j] = b * p->coeffs[j] + a * n->coeffs[j];
      out.add({drop_col(v), false});
    }
  return out.remove_redundant();
}

Polyhedron Polyhedron::project_out(std::vector<int> drop) const {
  std::sort(drop.rbegin(), drop.rend());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  Polyhedron r = *this;
  for (int d : drop) r = r.eliminate(d);
  return r;
}

Polyhedron Polyhedron::remove_redundant() const {
  if (contradiction || cons.size() <= 1) return *this;
  if (is_empty()) {
    Polyhedron e(dims, params);
    e.contradiction = true;
    return e;
  }
  const int n = dims + params;
  // Keep only the tightest inequality per direction.
  std::vector<Constraint> kept;
  for (const auto& c : cons) {
    bool merged = false;
    for (auto& k : kept) {
      if (k.equality || c.equality) continue;
      if (std::equal(k.coeffs.begin(), k.coeffs.begin() + n, c.coeffs.begin())) {
        if (c.coeffs[n] < k.coeffs[n]) k.coeffs[n] = c.coeffs[n];
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(c);
  }
  Polyhedron r(dims, params);
  r.cons = kept;
  for (size_t i = 0; i < r.cons.size();) {
    if (r.cons[i].equality) {
      ++i;
      continue;
    }
    auto m = minimize(r, r.cons[i].coeffs, &r.cons[i]);
    if (m && sgn(*m) >= 0)
      r.cons.erase(r.cons.begin() + i);
    else
      ++i;
  }
  return r;
}

Polyhedron Polyhedron::bind(const std::vector<long long>& values) const {
  Polyhedron r(dims, 0);
  if (contradiction) {
    r.contradiction = true;
    return r;
  }
  for (const auto& c : cons) {
    RatVec v(dims + 1);
    for (int j = 0; j < dims; ++j) v[j] = c.coeffs[j];
    v[dims] = c.coeffs[dims + params];
    for (int p = 0; p < params; ++p)
      if (sgn(c.coeffs[dims + p]) != 0) v[dims] += c.coeffs[dims + p] * rat(values[p]);
    r.add({v, c.equality});
  }
  return r;
}

Polyhedron Polyhedron::remap(int new_dims, const std::vector<int>& map) const {
  Polyhedron r(new_dims, params);
  r.contradiction = contradiction;
  for (const auto& c : cons) {
    RatVec v(new_dims + params + 1, 0);
    for (int j = 0; j < dims; ++j) v[map[j]] += c.coeffs[j];
    for (int p = 0; p <= params; ++p) v[new_dims + p] = c.coeffs[dims + p];
    r.add({v, c.equality});
  }
  return r;
}

Polyhedron Polyhedron::transform(const RatMat& m) const {
  Polyhedron r(dims, params);
  r.contradiction = contradiction;
  for (const auto& c : cons) {
    RatVec v = c.coeffs;
    for (int j = 0; j < dims; ++j) {
      v[j] = 0;
      for (int i = 0; i < dims; ++i)
        if (sgn(c.coeffs[i]) != 0) v[j] += c.coeffs[i] * m[i][j];
    }
    r.add({v, c.equality});
  }
  return r;
}

std::vector<RatVec> Polyhedron::equalities() const {
  std::vector<RatVec> eqs;
  for (const auto& c : cons) {
    if (c.equality) {
      eqs.push_back(c.coeffs);
      continue;
    }
    // a.x + k >= 0 is an implicit equality when its maximum is also 0
    RatVec neg = c.coeffs;
    for (auto& x : neg) x = -x;
    auto m = minimize(*this, neg);
    if (m && sgn(*m) == 0) eqs.push_back(c.coeffs);
  }
  return eqs;
}

int Polyhedron::affine_dim() const {
  if (is_empty()) return -1;
  RatMat lin;
  for (const auto& e : equalities()) lin.emplace_back(e.begin(), e.begin() + dims);
  return dims - rank(lin);
}

std::vector<Polyhedron> Polyhedron::subtract(const Polyhedron& b) const {
  if (is_empty()) return {};
  if (b.contradiction) return {*this};
  std::vector<Polyhedron> out;
  Polyhedron cur = *this;
  const int n = dims + params;
  auto push = [&](const Polyhedron& p) {
    if (!p.is_empty()) out.push_back(p);
  };
  for (const auto& c : b.cons) {
    RatVec neg = c.coeffs;
    for (auto& x : neg) x = -x;
    neg[n] -= 1;
    if (c.equality) {
      RatVec above = c.coeffs;
      above[n] -= 1;
      Polyhedron p1 = cur;
      p1.add_ge(above);
      push(p1);
      Polyhedron p2 = cur;
      p2.add_ge(neg);
      push(p2);
    } else {
      Polyhedron p = cur;
      p.add_ge(neg);
      push(p);
    }
    cur.add(c);
    if (cur.is_empty()) break;
  }
  return out;
}

bool Polyhedron::contains(const std::vector<long long>& point, const std::vector<long long>& pv) const {
  if (contradiction) return false;
  for (const auto& c : cons) {
    Rational s = c.coeffs[dims + params];
    for (int j = 0; j < dims; ++j) s += c.coeffs[j] * rat(point[j]);
    for (int p = 0; p < params; ++p) s += c.coeffs[dims + p] * rat(pv[p]);
    if (c.equality ? sgn(s) != 0 : sgn(s) < 0) return false;
  }
  return true;
}

}  // namespace iolb::poly
