#pragma once

#include <map>
#include <tuple>
#include <string>
#include <vector>

#include "iolb/asymbound/logterm.hpp"

namespace iolb::asym {

// Unit-coefficient product of atoms and S with rational exponents.
struct Monomial {
  std::map<Atom, Rational> exps;
  Rational s_exp;

  static Monomial one() { return {}; }
  static Monomial of(const poly::ParamMonomial& m);
  static Monomial param(const std::string& name, long e = 1);
  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  bool is_one() const { return exps.empty() && s_exp == 0; }
  // Componentwise <= over atoms and S.
  bool dominated_by(const Monomial& o) const;
  double eval(const std::map<std::string, double>& binding) const;
  std::string str() const;
  bool operator==(const Monomial& o) const { return s_exp == o.s_exp && exps == o.exps; }
  bool operator<(const Monomial& o) const { return std::tie(exps, s_exp) < std::tie(o.exps, o.s_exp); }
};

std::vector<Monomial> monomials_of(const poly::Posynomial& p);
// Display order: larger exponents of earlier atoms first.
bool display_before(const Monomial& a, const Monomial& b);

struct BoundCase {
  Region region;
  std::vector<Monomial> pos;
  std::vector<Monomial> neg;
  bool is_zero() const { return pos.empty(); }
};

// Omega(scale * (sum pos - sum neg)) piecewise over log regions.
struct AsymBound {
  std::vector<BoundCase> cases;
  Monomial scale;

  static AsymBound zero();
  bool is_zero() const;
  std::string render() const;
  std::string render_case(const BoundCase& c) const;
};

AsymBound simplify(const AsymBound& b);
AsymBound add(const AsymBound& a, const AsymBound& b);
AsymBound scale_by(const AsymBound& b, const Monomial& m);
AsymBound subtract_tags(const AsymBound& b, const std::vector<Monomial>& tags);
// Minimum over the cases whose region holds the binding (which must include S).
double eval_at(const AsymBound& b, const std::map<std::string, double>& binding);

}  // namespace iolb::asym
