#include "iolb/asymbound/logterm.hpp"

#include <algorithm>
#include <cmath>

#include "iolb/core/error.hpp"
#include "iolb/core/simplex.hpp"

namespace iolb::asym {
namespace {

std::string coef_times(const Rational& c, const std::string& what) {
  if (c == 1) return what;
  return iolb::to_string(c) + "*" + what;
}

std::string log_name(const Atom& a) { return "log_S(" + atom_str(a) + ")"; }

// Scales by a positive factor so all coefficients are coprime integers.
LogExpr normalized(const LogExpr& e) {
  Integer den = e.constant.get_den();
  for (const auto& [a, c] : e.coef) den = lcm(den, c.get_den());
  Integer g = 0;
  auto upd = [&](const Rational& c) {
    Integer n = abs(Integer(c.get_num() * (den / c.get_den())));
    g = gcd(g, n);
  };
  upd(e.constant);
  for (const auto& [a, c] : e.coef) upd(c);
  if (g == 0) return e;
  Rational k(den, g);
  k.canonicalize();
  return e * k;
}

// Rows a.theta <= rhs for the constraints and the orthant, over the given atoms.
void lp_rows(const Region& r, const std::vector<Atom>& atoms, RatMat& rows, RatVec& rhs, int skip, bool with_eps) {
  const size_t n = atoms.size() + (with_eps ? 1 : 0);
  for (size_t i = 0; i < r.cons.size(); ++i) {
    if (static_cast<int>(i) == skip) continue;
    RatVec row(n, 0);
    for (size_t j = 0; j < atoms.size(); ++j) {
      auto it = r.cons[i].coef.find(atoms[j]);
      if (it != r.cons[i].coef.end()) row[j] = -it->second;
    }
    if (with_eps) row[n - 1] = 1;
    rows.push_back(row);
    rhs.push_back(r.cons[i].constant);
  }
  for (size_t j = 0; j < atoms.size(); ++j) {
    RatVec row(n, 0);
    row[j] = -1;
    if (with_eps) row[n - 1] = 1;
    rows.push_back(row);
    rhs.push_back(0);
  }
}

}  // namespace

Atom param_atom(const std::string& name) { return Atom({poly::ParamMonomial{{name, 1}}}); }

bool is_param_atom(const Atom& a) {
  return a.terms.size() == 1 && a.terms[0].size() == 1 && a.terms[0].begin()->second == 1;
}

std::string atom_str(const Atom& a) { return a.str(); }

LogExpr LogExpr::number(const Rational& c) {
  LogExpr e;
  e.constant = c;
  return e;
}

LogExpr LogExpr::log_of(const poly::Posynomial& p) {
  LogExpr e;
  if (p.terms.empty()) fail(ErrorKind::internal, "log of an empty count");
  if (p.terms.size() == 1) {
    for (const auto& [name, k] : p.terms[0])
      if (k != 0) e.coef[param_atom(name)] += Rational(k);
    return e;
  }
  e.coef[p] = 1;
  return e;
}

LogExpr LogExpr::operator+(const LogExpr& o) const {
  LogExpr r = *this;
  r.constant += o.constant;
  for (const auto& [a, c] : o.coef) {
    r.coef[a] += c;
    if (r.coef[a] == 0) r.coef.erase(a);
  }
  return r;
}

LogExpr LogExpr::operator-(const LogExpr& o) const { return *this + o * Rational(-1); }

LogExpr LogExpr::operator*(const Rational& k) const {
  LogExpr r;
  if (k == 0) return r;
  r.constant = constant * k;
  for (const auto& [a, c] : coef) r.coef[a] = c * k;
  return r;
}

Rational LogExpr::eval(const AtomValues& v) const {
  Rational s = constant;
  for (const auto& [a, c] : coef) {
    auto it = v.find(a);
    if (it == v.end()) fail(ErrorKind::usage, "no value for log_S(" + atom_str(a) + ")");
    s += c * it->second;
  }
  return s;
}

double LogExpr::eval(const std::map<Atom, double>& v) const {
  double s = constant.get_d();
  for (const auto& [a, c] : coef) s += c.get_d() * v.at(a);
  return s;
}

std::string LogExpr::str() const {
  std::string s;
  for (const auto& [a, c] : coef) {
    if (s.empty())
      s = (c < 0 ? "-" : "") + coef_times(abs(c), log_name(a));
    else
      s += (c < 0 ? " - " : " + ") + coef_times(abs(c), log_name(a));
  }
  if (constant != 0 || s.empty()) {
    if (s.empty())
      s = iolb::to_string(constant);
    else
      s += (constant < 0 ? " - " : " + ") + iolb::to_string(abs(constant));
  }
  return s;
}

std::vector<Atom> Region::atoms() const {
  std::vector<Atom> out;
  for (const auto& c : cons)
    for (const auto& [a, k] : c.coef) out.push_back(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Region Region::intersect(const Region& o) const {
  Region r = *this;
  r.cons.insert(r.cons.end(), o.cons.begin(), o.cons.end());
  return r.simplified();
}

bool Region::contains(const AtomValues& v) const {
  for (const auto& c : cons)
    if (c.eval(v) < 0) return false;
  return true;
}

bool Region::contains(const std::map<Atom, double>& v, double tol) const {
  for (const auto& c : cons)
    if (c.eval(v) < -tol) return false;
  return true;
}

bool Region::has_interior() const {
  Region r;
  for (const auto& c : cons) {
    if (c.is_constant()) {
      if (c.constant <= 0) return false;
      continue;
    }
    r.cons.push_back(c);
  }
  auto atoms = r.atoms();
  RatMat rows;
  RatVec rhs;
  lp_rows(r, atoms, rows, rhs, -1, true);
  RatVec cap(atoms.size() + 1, 0);
  cap.back() = 1;
  rows.push_back(cap);
  rhs.push_back(1);
  RatVec obj(atoms.size() + 1, 0);
  obj.back() = 1;
  LpResult res = lp_maximize(rows, rhs, obj);
  return res.status == LpStatus::optimal && res.value > 0;
}

Region Region::simplified() const {
  Region r;
  for (const auto& c : cons) {
    if (c.is_constant()) {
      if (c.constant < 0) return Region{{LogExpr::number(-1)}};
      continue;
    }
    LogExpr n = normalized(c);
    if (std::find(r.cons.begin(), r.cons.end(), n) == r.cons.end()) r.cons.push_back(n);
  }
  std::sort(r.cons.begin(), r.cons.end());
  auto atoms = r.atoms();
  {
    RatMat rows;
    RatVec rhs;
    lp_rows(r, atoms, rows, rhs, -1, false);
    if (lp_maximize(rows, rhs, RatVec(atoms.size(), 0)).status == LpStatus::infeasible)
      return Region{{LogExpr::number(-1)}};
  }
  for (size_t i = 0; i < r.cons.size();) {
    RatMat rows;
    RatVec rhs;
    lp_rows(r, atoms, rows, rhs, static_cast<int>(i), false);
    RatVec obj(atoms.size(), 0);
    for (size_t j = 0; j < atoms.size(); ++j) {
      auto it = r.cons[i].coef.find(atoms[j]);
      if (it != r.cons[i].coef.end()) obj[j] = -it->second;
    }
    LpResult res = lp_maximize(rows, rhs, obj);
    // minimum of the constraint over the rest is -(max of its negation)
    if (res.status == LpStatus::optimal && -res.value + r.cons[i].constant >= 0)
      r.cons.erase(r.cons.begin() + static_cast<long>(i));
    else
      ++i;
  }
  return r;
}

std::string Region::str() const {
  if (cons.empty()) return "always";
  std::string out;
  for (const auto& c : cons) {
    LogExpr lhs, rhs;
    for (const auto& [a, k] : c.coef) {
      if (k > 0)
        lhs.coef[a] = k;
      else
        rhs.coef[a] = -k;
    }
    std::string op = " >= ";
    if (lhs.coef.empty()) {
      // all logs on the right: read them on the left instead
      std::swap(lhs, rhs);
      rhs.constant = c.constant;
      op = " <= ";
    } else {
      rhs.constant = -c.constant;
    }
    if (!out.empty()) out += " and ";
    out += lhs.str() + op + rhs.str();
  }
  return out;
}

std::map<Atom, double> atom_logs(const std::vector<Atom>& atoms, const std::map<std::string, double>& binding) {
  auto it = binding.find("S");
  if (it == binding.end() || it->second <= 1) fail(ErrorKind::usage, "binding needs S > 1");
  const double ls = std::log(it->second);
  std::map<Atom, double> out;
  for (const auto& a : atoms) {
    double v = a.eval(binding);
    if (v <= 0) fail(ErrorKind::usage, "binding must be positive");
    out[a] = std::log(v) / ls;
  }
  return out;
}

}  // namespace iolb::asym
