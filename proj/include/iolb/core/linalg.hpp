#pragma once

#include <optional>

#include "iolb/core/rational.hpp"

namespace iolb {

// Reduced row echelon form. pivots receives the pivot column of each nonzero row.
RatMat rref(RatMat m, std::vector<int>* pivots = nullptr);
int rank(const RatMat& m);
// Basis of {x : m x = 0}; cols is needed when m has no rows.
RatMat nullspace(const RatMat& m, int cols);
std::optional<RatMat> inverse(const RatMat& m);
RatMat transpose(const RatMat& m);
RatMat multiply(const RatMat& a, const RatMat& b);
RatVec apply(const RatMat& m, const RatVec& x);
RatMat identity(int n);

}  // namespace iolb
