#pragma once

#include <string>
#include <vector>

#include "iolb/asymbound/bound.hpp"
#include "iolb/polyset/affine.hpp"

namespace iolb::plp {

using asym::AtomValues;
using asym::LogExpr;
using asym::Region;

// sum of x_i over vars with coeffs[i] = 1, bounded by rhs
struct LpConstraint {
  std::vector<int> coeffs;
  LogExpr rhs;
  bool unit = false;  // comes from a subspace, not from a degenerate size

  std::string str() const;
  bool operator==(const LpConstraint& o) const { return coeffs == o.coeffs && rhs == o.rhs; }
};

// Maximize sum x_i over x >= 0 subject to cons.
struct ExpLP {
  int vars = 0;
  std::vector<RatVec> basis;  // base vectors b_i in the original coordinates
  std::vector<LpConstraint> cons;

  std::vector<LpConstraint> unit_constraints() const;
  std::vector<asym::Atom> atoms() const;
  std::string str() const;
};

struct PlpCase {
  Region region;
  std::vector<LogExpr> x;
  LogExpr theta;
};

struct PiecewiseSolution {
  std::vector<PlpCase> cases;

  // Case holding the binding; the lowest theta wins on shared boundaries.
  const PlpCase& at(const AtomValues& v) const;
  std::string str() const;
};

// Adapted basis is tried orthogonal first, then general.
ExpLP build_lp(const poly::IntSet& D, const std::vector<poly::Subspace>& K);
ExpLP build_lp(const poly::IntSet& D, const std::vector<poly::Subspace>& K, const std::vector<RatVec>& basis);

PiecewiseSolution solve_plp(const ExpLP& lp);
// Plain exact simplex on the instantiated program.
Rational solve_at(const ExpLP& lp, const AtomValues& v);
bool verify_numeric(const ExpLP& lp, const PiecewiseSolution& sol, const AtomValues& v);

// Omega(|D| S / S^theta) per case minus the tag charges. Cases where the
// volume ratio has no positive growth in any parameter become the zero bound.
asym::AsymBound assemble_bound(const poly::Posynomial& card, const PiecewiseSolution& sol,
                               const std::vector<asym::Monomial>& charges);

}  // namespace iolb::plp
