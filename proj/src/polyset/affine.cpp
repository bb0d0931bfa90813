#include "iolb/polyset/affine.hpp"

#include <algorithm>

#include "iolb/core/error.hpp"
#include "iolb/core/linalg.hpp"

namespace iolb::poly {

bool AffineMapForm::invertible() const {
  return !matrix.empty() && matrix.size() == matrix[0].size() && iolb::inverse(matrix).has_value();
}

bool AffineMapForm::full_column_rank() const {
  if (matrix.empty()) return false;
  return rank(matrix) == static_cast<int>(matrix[0].size());
}

Subspace::Subspace(int ambient, const std::vector<RatVec>& vectors) : ambient_(ambient) {
  basis_ = rref(vectors);
}

std::vector<RatVec> Subspace::primitive_basis() const {
  std::vector<RatVec> out;
  for (const auto& r : basis_) out.push_back(primitive(r));
  return out;
}

bool Subspace::contains(const RatVec& v) const {
  RatMat m = basis_;
  m.push_back(v);
  return rank(m) == dim();
}

bool Subspace::contains(const Subspace& o) const {
  for (const auto& v : o.basis_)
    if (!contains(v)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& o) const {
  RatMat m = basis_;
  m.insert(m.end(), o.basis_.begin(), o.basis_.end());
  return Subspace(ambient_, m);
}

Subspace Subspace::orthogonal() const { return Subspace(ambient_, nullspace(basis_, ambient_)); }

Subspace Subspace::intersect(const Subspace& o) const {
  RatMat m = orthogonal().basis_;
  const RatMat& n = o.orthogonal().basis_;
  m.insert(m.end(), n.begin(), n.end());
  return Subspace(ambient_, nullspace(m, ambient_));
}

std::string Subspace::str() const {
  auto b = primitive_basis();
  if (b.empty()) return "{0}";
  std::string s = "span{";
  for (size_t i = 0; i < b.size(); ++i) s += (i ? ", " : "") + iolb::to_string(b[i]);
  return s + "}";
}

std::optional<AffineMapForm> as_affine_map(const AffRelation& r) {
  if (r.pieces.empty()) return std::nullopt;
  const int in = r.in_dims, out = r.out_dims, np = static_cast<int>(r.params.size());
  std::optional<AffineMapForm> result;
  for (const auto& p : r.pieces) {
    if (p.is_empty()) continue;
    // Column order: out dims, in dims, params, constant.
    RatMat eqs;
    for (const auto& e : p.equalities()) {
      RatVec row;
      row.insert(row.end(), e.begin() + in, e.begin() + in + out);
      row.insert(row.end(), e.begin(), e.begin() + in);
      row.insert(row.end(), e.begin() + in + out, e.end());
      eqs.push_back(row);
    }
    std::vector<int> piv;
    RatMat red = rref(eqs, &piv);
    if (static_cast<int>(piv.size()) < out) return std::nullopt;
    for (int k = 0; k < out; ++k)
      if (piv[k] != k) return std::nullopt;
    AffineMapForm f;
    f.matrix.assign(out, RatVec(in, 0));
    f.offset.assign(out, RatVec(np + 1, 0));
    for (int k = 0; k < out; ++k) {
      for (int i = 0; i < in; ++i) f.matrix[k][i] = -red[k][out + i];
      for (int q = 0; q <= np; ++q) f.offset[k][q] = -red[k][out + in + q];
    }
    if (result && (result->matrix != f.matrix || result->offset != f.offset)) return std::nullopt;
    if (!result) result = std::move(f);
  }
  if (!result) return std::nullopt;
  result->guard = domain(r);
  return result;
}

std::optional<RatVec> as_translation(const AffRelation& r) {
  if (r.in_dims != r.out_dims) return std::nullopt;
  auto m = as_affine_map(r);
  if (!m || m->matrix != identity(r.in_dims)) return std::nullopt;
  RatVec b;
  const int np = static_cast<int>(r.params.size());
  for (const auto& off : m->offset) {
    for (int q = 0; q < np; ++q)
      if (sgn(off[q]) != 0) return std::nullopt;
    b.push_back(off[np]);
  }
  return b;
}

Subspace kernel_basis(const AffineMapForm& m) {
  const int cols = m.matrix.empty() ? 0 : static_cast<int>(m.matrix[0].size());
  return Subspace(cols, nullspace(m.matrix, cols));
}

IntSet change_basis(const IntSet& s, const RatMat& m) {
  if (static_cast<int>(m.size()) != s.dims || !iolb::inverse(m)) fail(ErrorKind::input, "change_basis: singular matrix");
  IntSet r = s;
  r.pieces.clear();
  r.names.clear();
  for (int i = 0; i < s.dims; ++i) r.names.push_back("x" + std::to_string(i + 1));
  for (const auto& p : s.pieces) r.add_piece(p.transform(m));
  return r;
}

AffRelation change_basis(const AffRelation& r, const RatMat& m) {
  if (r.in_dims != r.out_dims || static_cast<int>(m.size()) != r.in_dims || !iolb::inverse(m))
    fail(ErrorKind::input, "change_basis: singular matrix or arity mismatch");
  const int d = r.in_dims;
  RatMat big(2 * d, RatVec(2 * d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) big[i][j] = big[d + i][d + j] = m[i][j];
  AffRelation out = r;
  out.pieces.clear();
  for (const auto& p : r.pieces) {
    out.add_piece(p.transform(big));
  }
  return out;
}

std::optional<std::vector<RatVec>> base(const std::vector<Subspace>& K, int ambient, bool orthogonal) {
  // Every intersection of a nonempty subfamily must be spanned by basis vectors.
  std::vector<Subspace> family;
  const size_t n = K.size();
  if (n > 12) return std::nullopt;
  for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
    Subspace w;
    bool first = true;
    for (size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      w = first ? K[i] : w.intersect(K[i]);
      first = false;
    }
    if (w.dim() == 0) continue;
    if (std::find(family.begin(), family.end(), w) == family.end()) family.push_back(w);
  }
  std::stable_sort(family.begin(), family.end(), [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  std::vector<RatVec> b;
  auto independent_with = [&](const RatVec& v) {
    RatMat m = b;
    m.push_back(v);
    return rank(m) == static_cast<int>(m.size());
  };
  for (const auto& w : family) {
    std::vector<RatVec> inside;
    for (const auto& v : b)
      if (w.contains(v)) inside.push_back(v);
    int need = w.dim() - static_cast<int>(inside.size());
    if (need <= 0) continue;
    Subspace rest = w.intersect(Subspace(ambient, inside).orthogonal());
    for (const auto& v : rest.primitive_basis()) {
      if (need == 0) break;
      if (!independent_with(v)) continue;
      b.push_back(v);
      --need;
    }
    if (need > 0) return std::nullopt;
  }
  for (const auto& k : K) {
    int in = 0;
    for (const auto& v : b)
      if (k.contains(v)) ++in;
    if (in != k.dim()) return std::nullopt;
  }
  for (const auto& v : Subspace(ambient, b).orthogonal().primitive_basis()) b.push_back(v);
  if (static_cast<int>(b.size()) != ambient) return std::nullopt;
  auto lead = [](const RatVec& v) {
    for (size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0) return i;
    return v.size();
  };
  std::stable_sort(b.begin(), b.end(), [&](const RatVec& x, const RatVec& y) { return lead(x) < lead(y); });
  if (orthogonal)
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j)
        if (sgn(dot(b[i], b[j])) != 0) return std::nullopt;
  return b;
}

RatMat basis_matrix(const std::vector<RatVec>& b) {
  const size_t d = b.size();
  RatMat m(d, RatVec(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) m[i][j] = b[j][i];
  return m;
}

}  // namespace iolb::poly
