#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iolb/core/rational.hpp"

namespace iolb::poly {

using ParamSpace = std::vector<std::string>;
using Binding = std::map<std::string, long long>;

// Affine form over [dims..., params..., 1]; meaning form >= 0 or form == 0.
struct Constraint {
  RatVec coeffs;
  bool equality = false;

  bool operator==(const Constraint&) const = default;
};

// Convex polyhedron over integer points. Constraints are kept integer
// normalized: coprime integer coefficients with the constant tightened, which
// preserves the integer points.
struct Polyhedron {
  int dims = 0;
  int params = 0;
  std::vector<Constraint> cons;
  bool contradiction = false;

  Polyhedron() = default;
  Polyhedron(int d, int p) : dims(d), params(p) {}

  int width() const { return dims + params + 1; }
  void add(Constraint c);
  void add_ge(RatVec coeffs) { add({std::move(coeffs), false}); }
  void add_eq(RatVec coeffs) { add({std::move(coeffs), true}); }

  // Rational relaxation emptiness (parameters treated as free variables).
  bool is_empty() const;
  Polyhedron intersect(const Polyhedron& o) const;
  // Fourier-Motzkin elimination of one dimension; the column is removed.
  Polyhedron eliminate(int dim) const;
  Polyhedron project_out(std::vector<int> dims_to_drop) const;
  Polyhedron remove_redundant() const;
  // Substitutes parameter values; the result has no parameters.
  Polyhedron bind(const std::vector<long long>& values) const;
  // Old dimension i moves to new dimension map[i] in a space of new_dims dims.
  Polyhedron remap(int new_dims, const std::vector<int>& map) const;
  // Rewrites constraints under x = m x'.
  Polyhedron transform(const RatMat& m) const;
  // Explicit plus implicit equalities (inequalities tight everywhere).
  std::vector<RatVec> equalities() const;
  // Dimension of the rational affine hull over the set dimensions; -1 when empty.
  // Only meaningful for parameter-free polyhedra.
  int affine_dim() const;
  std::vector<Polyhedron> subtract(const Polyhedron& b) const;
  bool contains(const std::vector<long long>& point, const std::vector<long long>& param_values) const;
};

}  // namespace iolb::poly
