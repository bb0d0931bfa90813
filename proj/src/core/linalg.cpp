#include "iolb/core/linalg.hpp"

namespace iolb {

RatMat rref(RatMat m, std::vector<int>* pivots) {
  if (pivots) pivots->clear();
  if (m.empty()) return m;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (sgn(m[i][c]) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  m.resize(r);
  return m;
}

int rank(const RatMat& m) { return static_cast<int>(rref(m).size()); }

RatMat nullspace(const RatMat& m, int cols) {
  std::vector<int> piv;
  RatMat r = rref(m, &piv);
  std::vector<bool> is_pivot(cols, false);
  for (int p : piv) is_pivot[p] = true;
  RatMat basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols, 0);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][f];
    basis.push_back(primitive(v));
  }
  return basis;
}

std::optional<RatMat> inverse(const RatMat& m) {
  const int n = static_cast<int>(m.size());
  RatMat aug(n, RatVec(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) return std::nullopt;
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  std::vector<int> piv;
  RatMat r = rref(aug, &piv);
  if (static_cast<int>(r.size()) < n) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (piv[i] != i) return std::nullopt;
  RatMat inv(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = r[i][n + j];
  return inv;
}

RatMat transpose(const RatMat& m) {
  if (m.empty()) return {};
  RatMat t(m[0].size(), RatVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

RatMat multiply(const RatMat& a, const RatMat& b) {
  if (a.empty()) return {};
  const size_t inner = b.size();
  const size_t cols = inner ? b[0].size() : 0;
  RatMat c(a.size(), RatVec(cols, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatVec apply(const RatMat& m, const RatVec& x) {
  RatVec y(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
  return y;
}

RatMat identity(int n) {
  RatMat m(n, RatVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace iolb
