#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iolb/polyset/intset.hpp"

namespace iolb::poly {

struct AffineMapForm {
  RatMat matrix;              // out_dims x in_dims
  std::vector<RatVec> offset;  // per out dim: coefficient per parameter, then constant
  IntSet guard;

  bool invertible() const;
  bool full_column_rank() const;
};

// Linear subspace kept in reduced row echelon form, so equal spaces compare equal.
class Subspace {
 public:
  Subspace() = default;
  Subspace(int ambient, const std::vector<RatVec>& vectors);
  static Subspace zero(int ambient) { return Subspace(ambient, {}); }

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const RatMat& rows() const { return basis_; }
  std::vector<RatVec> primitive_basis() const;
  bool contains(const RatVec& v) const;
  bool contains(const Subspace& o) const;
  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  Subspace orthogonal() const;
  std::string str() const;
  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

 private:
  int ambient_ = 0;
  RatMat basis_;
};

std::optional<AffineMapForm> as_affine_map(const AffRelation& r);
std::optional<RatVec> as_translation(const AffRelation& r);
Subspace kernel_basis(const AffineMapForm& m);

// Rewrites under x = m x'. For relations both sides are transformed.
IntSet change_basis(const IntSet& s, const RatMat& m);
AffRelation change_basis(const AffRelation& r, const RatMat& m);

// Adapted basis of a compatible family: every k in K is spanned by a subset
// of the returned vectors. Vectors are sorted by leading index. When
// orthogonal is set the basis must also be pairwise orthogonal.
std::optional<std::vector<RatVec>> base(const std::vector<Subspace>& K, int ambient, bool orthogonal = false);
// Columns of the change-of-basis matrix.
RatMat basis_matrix(const std::vector<RatVec>& b);

}  // namespace iolb::poly
