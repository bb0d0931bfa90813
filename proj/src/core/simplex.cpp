#include "iolb/core/simplex.hpp"

namespace iolb {
namespace {

struct Tableau {
  RatMat t;  // rows: coefficients followed by rhs
  std::vector<int> basis;
  RatVec d;  // reduced costs
  Rational z;
  int cols = 0;

  void set_objective(const RatVec& cost) {
    d.assign(cols, 0);
    z = 0;
    for (int j = 0; j < cols; ++j) d[j] = cost[j];
    for (size_t i = 0; i < t.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (sgn(cb) == 0) continue;
      for (int j = 0; j < cols; ++j) d[j] -= cb * t[i][j];
      z += cb * t[i][cols];
    }
  }

  void pivot(int r, int e) {
    Rational inv = 1 / t[r][e];
    for (auto& x : t[r]) x *= inv;
    for (size_t i = 0; i < t.size(); ++i) {
      if (static_cast<int>(i) == r || sgn(t[i][e]) == 0) continue;
      Rational f = t[i][e];
      for (int j = 0; j <= cols; ++j)
        if (sgn(t[r][j]) != 0) t[i][j] -= f * t[r][j];
    }
    if (sgn(d[e]) != 0) {
      Rational f = d[e];
      for (int j = 0; j < cols; ++j)
        if (sgn(t[r][j]) != 0) d[j] -= f * t[r][j];
      z += f * t[r][cols];
    }
    basis[r] = e;
  }

  // Returns false when unbounded.
  bool run(const std::vector<bool>& barred) {
    for (;;) {
      int e = -1;
      for (int j = 0; j < cols; ++j)
        if (!barred[j] && sgn(d[j]) > 0) {
          e = j;
          break;
        }
      if (e < 0) return true;
      int r = -1;
      Rational best;
      for (size_t i = 0; i < t.size(); ++i) {
        if (sgn(t[i][e]) <= 0) continue;
        Rational ratio = t[i][cols] / t[i][e];
        if (r < 0 || ratio < best || (ratio == best && basis[i] < basis[r])) {
          r = static_cast<int>(i);
          best = ratio;
        }
      }
      if (r < 0) return false;
      pivot(r, e);
    }
  }
};

}  // namespace

LpResult lp_maximize(const RatMat& rows, const RatVec& rhs, const RatVec& c,
                     const std::vector<bool>& nonneg) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  // Column layout: for each variable a plus column, and a minus column when free.
  std::vector<int> plus(n), minus(n, -1);
  int ncol = 0;
  for (int j = 0; j < n; ++j) {
    plus[j] = ncol++;
    if (nonneg.empty() || !nonneg[j]) minus[j] = ncol++;
  }
  int nart = 0;
  for (int i = 0; i < m; ++i)
    if (sgn(rhs[i]) < 0) ++nart;
  Tableau tb;
  tb.cols = ncol + m + nart;
  tb.t.assign(m, RatVec(tb.cols + 1, 0));
  tb.basis.assign(m, 0);
  std::vector<bool> is_art(tb.cols, false);
  int art = ncol + m;
  for (int i = 0; i < m; ++i) {
    int s = sgn(rhs[i]) < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) {
      if (sgn(rows[i][j]) == 0) continue;
      tb.t[i][plus[j]] = s * rows[i][j];
      if (minus[j] >= 0) tb.t[i][minus[j]] = -s * rows[i][j];
    }
    tb.t[i][ncol + i] = s;
    tb.t[i][tb.cols] = s * rhs[i];
    if (s < 0) {
      tb.t[i][art] = 1;
      is_art[art] = true;
      tb.basis[i] = art++;
    } else {
      tb.basis[i] = ncol + i;
    }
  }

  LpResult res;
  std::vector<bool> none(tb.cols, false);
  if (nart > 0) {
    RatVec cost(tb.cols, 0);
    for (int j = 0; j < tb.cols; ++j)
      if (is_art[j]) cost[j] = -1;
    tb.set_objective(cost);
    tb.run(none);
    if (sgn(tb.z) < 0) {
      res.status = LpStatus::infeasible;
      return res;
    }
    // Drive zero-level artificials out of the basis.
    for (size_t i = 0; i < tb.t.size();) {
      if (!is_art[tb.basis[i]]) {
        ++i;
        continue;
      }
      int e = -1;
      for (int j = 0; j < tb.cols; ++j)
        if (!is_art[j] && sgn(tb.t[i][j]) != 0) {
          e = j;
          break;
        }
      if (e >= 0) {
        tb.pivot(static_cast<int>(i), e);
        ++i;
      } else {
        tb.t.erase(tb.t.begin() + i);
        tb.basis.erase(tb.basis.begin() + i);
      }
    }
  }
  RatVec cost(tb.cols, 0);
  for (int j = 0; j < n; ++j) {
    cost[plus[j]] = c[j];
    if (minus[j] >= 0) cost[minus[j]] = -c[j];
  }
  tb.set_objective(cost);
  if (!tb.run(is_art)) {
    res.status = LpStatus::unbounded;
    return res;
  }
  res.status = LpStatus::optimal;
  res.value = tb.z;
  RatVec colval(tb.cols, 0);
  for (size_t i = 0; i < tb.t.size(); ++i) colval[tb.basis[i]] = tb.t[i][tb.cols];
  res.x.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    res.x[j] = colval[plus[j]];
    if (minus[j] >= 0) res.x[j] -= colval[minus[j]];
  }
  return res;
}

}  // namespace iolb
