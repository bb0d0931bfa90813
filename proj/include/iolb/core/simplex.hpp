#pragma once

#include "iolb/core/rational.hpp"

namespace iolb {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  RatVec x;
};

// Exact two-phase simplex with Bland's rule.
// Maximizes c.x subject to rows[i].x <= rhs[i]. Variables are free unless
// nonneg[j] is set (nonneg may be empty, meaning all free).
LpResult lp_maximize(const RatMat& rows, const RatVec& rhs, const RatVec& c,
                     const std::vector<bool>& nonneg = {});

}  // namespace iolb
