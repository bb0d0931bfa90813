#include "iolb/polyset/intset.hpp"

#include <algorithm>

#include "iolb/core/error.hpp"

namespace iolb::poly {
namespace {

void check_space(const IntSet& a, const IntSet& b) {
  if (a.tag != b.tag || a.dims != b.dims || a.params != b.params)
    fail(ErrorKind::input, "space mismatch: " + a.tag + " vs " + b.tag);
}

std::vector<std::string> default_names(int n, const char* prefix) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

std::string term(const Rational& c, const std::string& name) {
  if (c == 1) return name;
  return iolb::to_string(c) + "*" + name;
}

std::string linear(const std::vector<std::pair<Rational, std::string>>& terms, const Rational& k) {
  std::string s;
  for (const auto& [c, n] : terms) {
    if (s.empty())
      s = term(c, n);
    else
      s += " + " + term(c, n);
  }
  if (s.empty()) return iolb::to_string(k);
  if (sgn(k) > 0) s += " + " + iolb::to_string(k);
  if (sgn(k) < 0) s += " - " + iolb::to_string(Rational(-k));
  return s;
}

std::string render_constraint(const Constraint& c, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  std::vector<std::pair<Rational, std::string>> pos, neg;
  for (int j = 0; j < n; ++j) {
    int s = sgn(c.coeffs[j]);
    if (s > 0) pos.push_back({c.coeffs[j], names[j]});
    if (s < 0) neg.push_back({-c.coeffs[j], names[j]});
  }
  const Rational& k = c.coeffs[n];
  const char* op = c.equality ? " = " : " >= ";
  if (neg.empty()) return linear(pos, 0) + op + iolb::to_string(Rational(-k));
  if (pos.empty()) return linear(neg, 0) + (c.equality ? " = " : " <= ") + iolb::to_string(k);
  return linear(neg, 0) + (c.equality ? " = " : " <= ") + linear(pos, k);
}

std::string render_pieces(const std::vector<Polyhedron>& pieces, const std::string& tuple,
                          const std::vector<std::string>& names) {
  std::string s;
  if (pieces.empty()) return "";
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (i) s += "; ";
    s += tuple;
    const auto& p = pieces[i];
    if (p.contradiction) {
      s += " : 1 = 0";
      continue;
    }
    for (size_t j = 0; j < p.cons.size(); ++j) {
      s += j ? " and " : " : ";
      s += render_constraint(p.cons[j], names);
    }
  }
  return s;
}

std::string param_prefix(const ParamSpace& params) {
  std::string s = "[";
  for (size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + params[i];
  return s + "] -> { ";
}

std::string tuple(const std::string& tag, const std::vector<std::string>& names) {
  std::string s = tag + "[";
  for (size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + "]";
}

Polyhedron embed(const Polyhedron& p, int offset, int total) {
  std::vector<int> map(p.dims);
  for (int i = 0; i < p.dims; ++i) map[i] = offset + i;
  return p.remap(total, map);
}

}  // namespace

IntSet IntSet::empty(std::string tag, int dims, ParamSpace params) {
  IntSet s;
  s.tag = std::move(tag);
  s.dims = dims;
  s.params = std::move(params);
  s.names = default_names(dims, "i");
  return s;
}

IntSet IntSet::universe(std::string tag, int dims, ParamSpace params) {
  IntSet s = empty(std::move(tag), dims, std::move(params));
  s.pieces.emplace_back(dims, static_cast<int>(s.params.size()));
  return s;
}

bool IntSet::is_empty() const {
  return std::all_of(pieces.begin(), pieces.end(), [](const Polyhedron& p) { return p.is_empty(); });
}

void IntSet::add_piece(Polyhedron p) {
  if (!p.is_empty()) pieces.push_back(std::move(p));
}

bool AffRelation::is_empty() const {
  return std::all_of(pieces.begin(), pieces.end(), [](const Polyhedron& p) { return p.is_empty(); });
}

void AffRelation::add_piece(Polyhedron p) {
  if (!p.is_empty()) pieces.push_back(std::move(p));
}

IntSet intersect(const IntSet& a, const IntSet& b) {
  check_space(a, b);
  IntSet r = a;
  r.pieces.clear();
  for (const auto& p : a.pieces)
    for (const auto& q : b.pieces) r.add_piece(p.intersect(q).remove_redundant());
  return r;
}

IntSet subtract(const IntSet& a, const IntSet& b) {
  check_space(a, b);
  IntSet r = a;
  r.pieces.clear();
  for (const auto& p : a.pieces) {
    std::vector<Polyhedron> rest{p};
    for (const auto& q : b.pieces) {
      std::vector<Polyhedron> next;
      for (const auto& x : rest)
        for (auto& y : x.subtract(q)) next.push_back(std::move(y));
      rest = std::move(next);
    }
    for (auto& x : rest) r.add_piece(x.remove_redundant());
  }
  return r;
}

IntSet unite(const IntSet& a, const IntSet& b) {
  check_space(a, b);
  IntSet r = a;
  for (const auto& p : b.pieces) r.add_piece(p);
  return r;
}

IntSet make_disjoint(const IntSet& s) {
  IntSet r = s;
  r.pieces.clear();
  for (size_t i = 0; i < s.pieces.size(); ++i) {
    std::vector<Polyhedron> rest{s.pieces[i]};
    for (size_t j = 0; j < i; ++j) {
      std::vector<Polyhedron> next;
      for (const auto& x : rest)
        for (auto& y : x.subtract(s.pieces[j])) next.push_back(std::move(y));
      rest = std::move(next);
    }
    for (auto& x : rest) r.add_piece(std::move(x));
  }
  return r;
}

IntSet project_out(const IntSet& s, const std::vector<int>& dims) {
  IntSet r = s;
  r.pieces.clear();
  r.names.clear();
  for (int i = 0; i < s.dims; ++i)
    if (std::find(dims.begin(), dims.end(), i) == dims.end()) r.names.push_back(s.names[i]);
  r.dims = static_cast<int>(r.names.size());
  for (const auto& p : s.pieces) r.add_piece(p.project_out(dims));
  return r;
}

IntSet keep_dims(const IntSet& s, const std::vector<int>& dims) {
  std::vector<int> drop;
  for (int i = 0; i < s.dims; ++i)
    if (std::find(dims.begin(), dims.end(), i) == dims.end()) drop.push_back(i);
  return project_out(s, drop);
}

IntSet domain(const AffRelation& r) {
  IntSet s = IntSet::empty(r.in_tag, r.in_dims, r.params);
  s.names = r.in_names;
  std::vector<int> drop;
  for (int i = 0; i < r.out_dims; ++i) drop.push_back(r.in_dims + i);
  for (const auto& p : r.pieces) s.add_piece(p.project_out(drop));
  return s;
}

IntSet image(const AffRelation& r) {
  IntSet s = IntSet::empty(r.out_tag, r.out_dims, r.params);
  s.names = r.out_names;
  std::vector<int> drop;
  for (int i = 0; i < r.in_dims; ++i) drop.push_back(i);
  for (const auto& p : r.pieces) s.add_piece(p.project_out(drop));
  return s;
}

AffRelation inverse(const AffRelation& r) {
  AffRelation inv;
  inv.in_tag = r.out_tag;
  inv.out_tag = r.in_tag;
  inv.in_dims = r.out_dims;
  inv.out_dims = r.in_dims;
  inv.params = r.params;
  inv.in_names = r.out_names;
  inv.out_names = r.in_names;
  std::vector<int> map(r.in_dims + r.out_dims);
  for (int i = 0; i < r.in_dims; ++i) map[i] = r.out_dims + i;
  for (int j = 0; j < r.out_dims; ++j) map[r.in_dims + j] = j;
  for (const auto& p : r.pieces) inv.pieces.push_back(p.remap(r.in_dims + r.out_dims, map));
  return inv;
}

AffRelation compose(const AffRelation& r2, const AffRelation& r1) {
  if (r1.out_tag != r2.in_tag || r1.out_dims != r2.in_dims)
    fail(ErrorKind::input, "compose: tag mismatch " + r1.out_tag + " vs " + r2.in_tag);
  const int a = r1.in_dims, b = r1.out_dims, c = r2.out_dims;
  AffRelation out;
  out.in_tag = r1.in_tag;
  out.out_tag = r2.out_tag;
  out.in_dims = a;
  out.out_dims = c;
  out.params = r1.params;
  out.in_names = r1.in_names;
  out.out_names = r2.out_names;
  std::vector<int> mid;
  for (int i = 0; i < b; ++i) mid.push_back(a + i);
  for (const auto& p1 : r1.pieces) {
    Polyhedron j1 = embed(p1, 0, a + b + c);
    for (const auto& p2 : r2.pieces) {
      Polyhedron joined = j1.intersect(embed(p2, a, a + b + c));
      if (joined.is_empty()) continue;
      out.add_piece(joined.project_out(mid));
    }
  }
  return out;
}

AffRelation restrict_domain(const AffRelation& r, const IntSet& s) {
  if (s.tag != r.in_tag || s.dims != r.in_dims) fail(ErrorKind::input, "restrict: space mismatch");
  AffRelation out = r;
  out.pieces.clear();
  for (const auto& p : r.pieces)
    for (const auto& q : s.pieces) out.add_piece(p.intersect(embed(q, 0, r.in_dims + r.out_dims)));
  return out;
}

AffRelation restrict_image(const AffRelation& r, const IntSet& s) {
  if (s.tag != r.out_tag || s.dims != r.out_dims) fail(ErrorKind::input, "restrict: space mismatch");
  AffRelation out = r;
  out.pieces.clear();
  for (const auto& p : r.pieces)
    for (const auto& q : s.pieces) out.add_piece(p.intersect(embed(q, r.in_dims, r.in_dims + r.out_dims)));
  return out;
}

IntSet apply(const AffRelation& r, const IntSet& s) { return image(restrict_domain(r, s)); }

IntSet frontier(const IntSet& d, const AffRelation& r) { return subtract(d, apply(r, d)); }

AffRelation identity_relation(const IntSet& s) {
  AffRelation r;
  r.in_tag = r.out_tag = s.tag;
  r.in_dims = r.out_dims = s.dims;
  r.params = s.params;
  r.in_names = s.names;
  r.out_names = s.names;
  const int w = 2 * s.dims + static_cast<int>(s.params.size()) + 1;
  for (const auto& q : s.pieces) {
    Polyhedron p = embed(q, 0, 2 * s.dims);
    for (int i = 0; i < s.dims; ++i) {
      RatVec v(w, 0);
      v[i] = 1;
      v[s.dims + i] = -1;
      p.add_eq(v);
    }
    r.add_piece(p);
  }
  return r;
}

std::string to_string(const IntSet& s) {
  std::vector<std::string> names = s.names;
  if (static_cast<int>(names.size()) != s.dims) names = default_names(s.dims, "i");
  std::vector<std::string> all = names;
  all.insert(all.end(), s.params.begin(), s.params.end());
  return param_prefix(s.params) + render_pieces(s.pieces, tuple(s.tag, names), all) + " }";
}

std::string to_string(const AffRelation& r) {
  std::vector<std::string> in = r.in_names, out = r.out_names;
  if (static_cast<int>(in.size()) != r.in_dims) in = default_names(r.in_dims, "i");
  if (static_cast<int>(out.size()) != r.out_dims) out = default_names(r.out_dims, "o");
  for (auto& o : out)
    while (std::find(in.begin(), in.end(), o) != in.end()) o += "'";
  std::vector<std::string> all = in;
  all.insert(all.end(), out.begin(), out.end());
  all.insert(all.end(), r.params.begin(), r.params.end());
  return param_prefix(r.params) + render_pieces(r.pieces, tuple(r.in_tag, in) + " -> " + tuple(r.out_tag, out), all) +
         " }";
}

std::vector<long long> param_values(const ParamSpace& params, const Binding& b) {
  std::vector<long long> v;
  for (const auto& p : params) {
    auto it = b.find(p);
    if (it == b.end()) fail(ErrorKind::usage, "parameter " + p + " is not bound");
    v.push_back(it->second);
  }
  return v;
}

}  // namespace iolb::poly
