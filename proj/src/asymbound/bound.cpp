#include "iolb/asymbound/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iolb/core/error.hpp"

namespace iolb::asym {
namespace {

std::string power(const std::string& base, const Rational& e, bool wrap) {
  std::string b = wrap ? "(" + base + ")" : base;
  if (e == 1) return b;
  if (base == "S" && e == Rational(1, 2)) return "sqrt(S)";
  if (e.get_den() == 1) return b + "^" + e.get_num().get_str();
  return b + "^(" + iolb::to_string(e) + ")";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

bool single_linear_param(const Monomial& m) {
  return m.s_exp == 0 && m.exps.size() == 1 && is_param_atom(m.exps.begin()->first) && m.exps.begin()->second == 1;
}

void prune(std::vector<Monomial>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<Monomial> keep;
  for (const auto& m : v) {
    bool dominated = false;
    for (const auto& o : v)
      if (!(o == m) && m.dominated_by(o)) dominated = true;
    if (!dominated) keep.push_back(m);
  }
  v = std::move(keep);
}

BoundCase simplify_case(BoundCase c) {
  prune(c.pos);
  prune(c.neg);
  // a negative term strictly below some positive one is absorbed by it
  std::vector<Monomial> neg;
  for (const auto& m : c.neg) {
    bool absorbed = false;
    for (const auto& p : c.pos)
      if (!(p == m) && m.dominated_by(p)) absorbed = true;
    if (!absorbed) neg.push_back(m);
  }
  c.neg = std::move(neg);
  std::sort(c.pos.begin(), c.pos.end(), display_before);
  std::sort(c.neg.begin(), c.neg.end(), display_before);
  return c;
}

AsymBound fold_scale(const AsymBound& b) {
  AsymBound r = b;
  for (auto& c : r.cases) {
    for (auto& m : c.pos) m = m * b.scale;
    for (auto& m : c.neg) m = m * b.scale;
  }
  r.scale = Monomial::one();
  return r;
}

}  // namespace

Monomial Monomial::of(const poly::ParamMonomial& m) {
  Monomial r;
  for (const auto& [p, e] : m)
    if (e != 0) r.exps[param_atom(p)] = Rational(e);
  return r;
}

Monomial Monomial::param(const std::string& name, long e) {
  Monomial r;
  if (e != 0) r.exps[param_atom(name)] = Rational(e);
  return r;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  r.s_exp += o.s_exp;
  for (const auto& [a, e] : o.exps) {
    r.exps[a] += e;
    if (r.exps[a] == 0) r.exps.erase(a);
  }
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r;
  r.s_exp = -s_exp;
  for (const auto& [a, e] : exps) r.exps[a] = -e;
  return r;
}

bool Monomial::dominated_by(const Monomial& o) const {
  if (s_exp > o.s_exp) return false;
  for (const auto& [a, e] : exps) {
    auto it = o.exps.find(a);
    if (e > (it == o.exps.end() ? Rational(0) : it->second)) return false;
  }
  for (const auto& [a, e] : o.exps)
    if (!exps.count(a) && e < 0) return false;
  return true;
}

double Monomial::eval(const std::map<std::string, double>& binding) const {
  double v = 1;
  if (s_exp != 0) v *= std::pow(binding.at("S"), s_exp.get_d());
  for (const auto& [a, e] : exps) v *= std::pow(a.eval(binding), e.get_d());
  return v;
}

std::string Monomial::str() const {
  std::vector<std::string> num, den;
  for (const auto& [a, e] : exps) {
    if (e > 0) num.push_back(power(atom_str(a), e, !is_param_atom(a)));
    if (e < 0) den.push_back(power(atom_str(a), -e, !is_param_atom(a)));
  }
  if (s_exp > 0) num.push_back(power("S", s_exp, false));
  if (s_exp < 0) den.insert(den.begin(), power("S", -s_exp, false));
  std::string s = num.empty() ? "1" : join(num, "*");
  if (!den.empty()) s += "/" + (den.size() == 1 ? den[0] : "(" + join(den, "*") + ")");
  return s;
}

std::vector<Monomial> monomials_of(const poly::Posynomial& p) {
  std::vector<Monomial> out;
  for (const auto& t : p.terms) out.push_back(Monomial::of(t));
  return out;
}

bool display_before(const Monomial& a, const Monomial& b) {
  auto ia = a.exps.begin(), ib = b.exps.begin();
  while (ia != a.exps.end() || ib != b.exps.end()) {
    Rational ea = 0, eb = 0;
    if (ib == b.exps.end() || (ia != a.exps.end() && ia->first < ib->first)) {
      ea = ia->second;
      ++ia;
    } else if (ia == a.exps.end() || ib->first < ia->first) {
      eb = ib->second;
      ++ib;
    } else {
      ea = ia->second;
      eb = ib->second;
      ++ia;
      ++ib;
    }
    if (ea != eb) return ea > eb;
  }
  return a.s_exp > b.s_exp;
}

AsymBound AsymBound::zero() {
  AsymBound b;
  b.cases.push_back(BoundCase{});
  return b;
}

bool AsymBound::is_zero() const {
  for (const auto& c : cases)
    if (!c.is_zero()) return false;
  return true;
}

std::string AsymBound::render_case(const BoundCase& c) const {
  if (c.is_zero()) return "0";
  std::vector<std::string> pos;
  for (const auto& m : c.pos) pos.push_back(m.str());
  std::string expr = join(pos, " + ");
  bool linear = c.neg.size() >= 2;
  for (const auto& m : c.neg) linear = linear && single_linear_param(m);
  if (linear) {
    std::vector<std::string> names;
    for (const auto& m : c.neg) names.push_back(m.str());
    expr += " - (" + join(names, "+") + ")";
  } else {
    for (const auto& m : c.neg) expr += " - " + m.str();
  }
  if (!scale.is_one()) expr = scale.str() + "*(" + expr + ")";
  return "Omega(" + expr + ")";
}

std::string AsymBound::render() const {
  if (cases.size() == 1 && cases[0].region.is_all()) return render_case(cases[0]);
  std::string s;
  for (const auto& c : cases) {
    if (!s.empty()) s += "\n";
    s += render_case(c) + " when " + c.region.str();
  }
  return s;
}

AsymBound simplify(const AsymBound& b) {
  AsymBound r;
  r.scale = b.scale;
  for (const auto& c : b.cases) {
    if (b.cases.size() > 1 && !c.region.has_interior()) continue;
    r.cases.push_back(simplify_case(c));
  }
  if (r.cases.empty()) r.cases.push_back(BoundCase{});
  if (r.is_zero()) r.scale = Monomial::one();
  return r;
}

AsymBound add(const AsymBound& a, const AsymBound& b) {
  if (a.is_zero()) return simplify(b);
  if (b.is_zero()) return simplify(a);
  AsymBound x = a, y = b;
  if (!(a.scale == b.scale)) {
    x = fold_scale(a);
    y = fold_scale(b);
  }
  AsymBound r;
  r.scale = x.scale;
  for (const auto& ca : x.cases)
    for (const auto& cb : y.cases) {
      Region reg = ca.region.intersect(cb.region);
      if (!reg.has_interior()) continue;
      BoundCase c;
      c.region = reg;
      c.pos = ca.pos;
      c.pos.insert(c.pos.end(), cb.pos.begin(), cb.pos.end());
      c.neg = ca.neg;
      c.neg.insert(c.neg.end(), cb.neg.begin(), cb.neg.end());
      r.cases.push_back(std::move(c));
    }
  return simplify(r);
}

AsymBound scale_by(const AsymBound& b, const Monomial& m) {
  if (b.is_zero()) return b;
  AsymBound r = b;
  r.scale = r.scale * m;
  return r;
}

AsymBound subtract_tags(const AsymBound& b, const std::vector<Monomial>& tags) {
  AsymBound r = b;
  const Monomial unscale = b.scale.inverse();
  for (auto& c : r.cases) {
    if (c.is_zero()) continue;
    for (const auto& t : tags) c.neg.push_back(t * unscale);
  }
  return simplify(r);
}

double eval_at(const AsymBound& b, const std::map<std::string, double>& binding) {
  std::vector<Atom> atoms;
  for (const auto& c : b.cases) {
    auto a = c.region.atoms();
    atoms.insert(atoms.end(), a.begin(), a.end());
  }
  auto logs = atom_logs(atoms, binding);
  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& c : b.cases) {
    if (!c.region.contains(logs)) continue;
    double v = 0;
    for (const auto& m : c.pos) v += m.eval(binding);
    for (const auto& m : c.neg) v -= m.eval(binding);
    if (!c.is_zero()) v *= b.scale.eval(binding);
    best = std::min(best, v);
    any = true;
  }
  if (!any) fail(ErrorKind::internal, "no bound case holds at the binding");
  return best;
}

}  // namespace iolb::asym
