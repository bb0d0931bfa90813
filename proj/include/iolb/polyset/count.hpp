#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "iolb/polyset/intset.hpp"

namespace iolb::poly {

// Exponents per parameter; an empty map is the constant 1.
using ParamMonomial = std::map<std::string, int>;

// Sum of monomials with unit coefficients, kept sorted and duplicate free.
struct Posynomial {
  std::vector<ParamMonomial> terms;

  Posynomial() = default;
  explicit Posynomial(std::vector<ParamMonomial> t);
  bool is_monomial() const { return terms.size() == 1; }
  std::string str() const;
  double eval(const std::map<std::string, double>& values) const;
  auto operator<=>(const Posynomial&) const = default;
};

std::string monomial_str(const ParamMonomial& m);

// Counts integer points of a parameter-free polyhedron.
Integer count_points(const Polyhedron& bound);
// Calls f for every integer point; stops early when f returns false.
void enumerate_points(const Polyhedron& bound, const std::function<bool(const std::vector<long long>&)>& f);

Integer card_at(const IntSet& s, const Binding& b);
void enumerate_set(const IntSet& s, const Binding& b,
                   const std::function<void(const std::vector<long long>&)>& f);
void enumerate_relation(const AffRelation& r, const Binding& b,
                        const std::function<void(const std::vector<long long>&)>& f);

// Dimension via affine hull rank at a large generic binding. Returns -1 for a
// set that is empty there when allow_empty is set, else throws.
int dim_of(const IntSet& s, bool allow_empty = false);
int dim_by_counting(const IntSet& s, long long big = 100);

// Maximal monomials of the counting polynomial (exponent fit at large
// parameter values). Throws on non-polynomial growth.
Posynomial card_leading(const IntSet& s);

}  // namespace iolb::poly
