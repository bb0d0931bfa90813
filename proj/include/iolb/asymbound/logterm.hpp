#pragma once

#include <map>
#include <tuple>
#include <string>
#include <vector>

#include "iolb/core/rational.hpp"
#include "iolb/polyset/count.hpp"

namespace iolb::asym {

// A symbol whose base-S logarithm appears in exponent expressions: a single
// parameter, or a sum such as N+T that does not factor into parameters.
using Atom = poly::Posynomial;

Atom param_atom(const std::string& name);
bool is_param_atom(const Atom& a);
std::string atom_str(const Atom& a);

using AtomValues = std::map<Atom, Rational>;

// constant + sum coef[a] * log_S(a)
struct LogExpr {
  Rational constant;
  std::map<Atom, Rational> coef;

  static LogExpr number(const Rational& c);
  // log_S of a counting leading term; monomials split into their parameters.
  static LogExpr log_of(const poly::Posynomial& p);

  bool is_constant() const { return coef.empty(); }
  LogExpr operator+(const LogExpr& o) const;
  LogExpr operator-(const LogExpr& o) const;
  LogExpr operator*(const Rational& r) const;
  Rational eval(const AtomValues& v) const;
  double eval(const std::map<Atom, double>& v) const;
  std::string str() const;
  bool operator==(const LogExpr& o) const { return constant == o.constant && coef == o.coef; }
  bool operator<(const LogExpr& o) const { return std::tie(coef, constant) < std::tie(o.coef, o.constant); }
};

// Conjunction of LogExpr >= 0 inside the orthant where every log is >= 0.
struct Region {
  std::vector<LogExpr> cons;

  static Region all() { return {}; }
  std::vector<Atom> atoms() const;
  Region intersect(const Region& o) const;
  bool contains(const AtomValues& v) const;
  bool contains(const std::map<Atom, double>& v, double tol = 1e-9) const;
  // Nonempty interior relative to the orthant.
  bool has_interior() const;
  // Integer-normalized, deduplicated, redundancy-free and sorted.
  Region simplified() const;
  bool is_all() const { return cons.empty(); }
  std::string str() const;
  bool operator==(const Region& o) const { return cons == o.cons; }
  bool operator<(const Region& o) const { return cons < o.cons; }
};

std::map<Atom, double> atom_logs(const std::vector<Atom>& atoms, const std::map<std::string, double>& binding);

}  // namespace iolb::asym
