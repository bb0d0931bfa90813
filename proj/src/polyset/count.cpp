#include "iolb/polyset/count.hpp"

#include <algorithm>
#include <cmath>

#include "iolb/core/error.hpp"
#include "iolb/core/linalg.hpp"

namespace iolb::poly {
namespace {

struct IntCons {
  std::vector<long long> a;
  long long c = 0;
  bool eq = false;
};

long long fdiv(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long cdiv(long long a, long long b) { return -fdiv(-a, b); }

// Nested enumeration over the Fourier-Motzkin chain of projections; the
// innermost dimension is counted in closed form.
class Counter {
 public:
  explicit Counter(const Polyhedron& p) : d_(p.dims) {
    if (p.params != 0) fail(ErrorKind::internal, "counting needs a bound polyhedron");
    empty_ = p.contradiction || p.is_empty();
    if (empty_ || d_ == 0) return;
    level_.resize(d_);
    Polyhedron cur = p;
    for (int k = d_ - 1; k >= 0; --k) {
      for (const auto& c : cur.cons) {
        IntCons ic;
        for (int j = 0; j <= k; ++j) ic.a.push_back(to_ll(c.coeffs[j].get_num()));
        ic.c = to_ll(c.coeffs[k + 1].get_num());
        ic.eq = c.equality;
        level_[k].push_back(std::move(ic));
      }
      if (k > 0) cur = cur.eliminate(k);
    }
  }

  Integer count() {
    if (empty_) return 0;
    if (d_ == 0) return 1;
    std::vector<long long> x(d_);
    return count_from(0, x);
  }

  void enumerate(const std::function<bool(const std::vector<long long>&)>& f) {
    if (empty_) return;
    std::vector<long long> x(d_);
    if (d_ == 0) {
      f(x);
      return;
    }
    stop_ = false;
    enum_from(0, x, f);
  }

 private:
  bool bounds(int k, const std::vector<long long>& x, long long& lo, long long& hi) const {
    bool has_lo = false, has_hi = false;
    for (const auto& c : level_[k]) {
      long long rest = c.c;
      for (int j = 0; j < k; ++j) rest += c.a[j] * x[j];
      long long ak = c.a[k];
      if (ak == 0) {
        if (c.eq ? rest != 0 : rest < 0) return false;
        continue;
      }
      long long l, h;
      bool sl = false, sh = false;
      if (ak > 0) {
        l = cdiv(-rest, ak);
        sl = true;
        if (c.eq) {
          h = fdiv(-rest, ak);
          sh = true;
        }
      } else {
        h = fdiv(rest, -ak);
        sh = true;
        if (c.eq) {
          l = cdiv(rest, -ak);
          sl = true;
        }
      }
      if (sl) {
        lo = has_lo ? std::max(lo, l) : l;
        has_lo = true;
      }
      if (sh) {
        hi = has_hi ? std::min(hi, h) : h;
        has_hi = true;
      }
    }
    if (!has_lo || !has_hi) fail(ErrorKind::input, "unbounded set");
    return lo <= hi;
  }

  Integer count_from(int k, std::vector<long long>& x) {
    long long lo = 0, hi = -1;
    if (!bounds(k, x, lo, hi)) return 0;
    if (k == d_ - 1) return integer(hi - lo + 1);
    Integer total = 0;
    for (long long v = lo; v <= hi; ++v) {
      x[k] = v;
      total += count_from(k + 1, x);
    }
    return total;
  }

  void enum_from(int k, std::vector<long long>& x, const std::function<bool(const std::vector<long long>&)>& f) {
    long long lo = 0, hi = -1;
    if (!bounds(k, x, lo, hi)) return;
    for (long long v = lo; v <= hi && !stop_; ++v) {
      x[k] = v;
      if (k == d_ - 1) {
        if (!f(x)) stop_ = true;
      } else {
        enum_from(k + 1, x, f);
      }
    }
  }

  int d_;
  bool empty_ = false;
  bool stop_ = false;
  std::vector<std::vector<IntCons>> level_;
};

std::vector<Polyhedron> bound_disjoint(const std::vector<Polyhedron>& pieces, const std::vector<long long>& pv) {
  std::vector<Polyhedron> bound, out;
  for (const auto& p : pieces) {
    Polyhedron b = p.bind(pv);
    if (!b.is_empty()) bound.push_back(std::move(b));
  }
  for (size_t i = 0; i < bound.size(); ++i) {
    std::vector<Polyhedron> rest{bound[i]};
    for (size_t j = 0; j < i; ++j) {
      std::vector<Polyhedron> next;
      for (const auto& r : rest)
        for (auto& y : r.subtract(bound[j])) next.push_back(std::move(y));
      rest = std::move(next);
    }
    for (auto& r : rest) out.push_back(std::move(r));
  }
  return out;
}

bool has_point(const Polyhedron& bound) {
  bool found = false;
  enumerate_points(bound, [&](const std::vector<long long>&) {
    found = true;
    return false;
  });
  return found;
}

std::vector<long long> generic_values(size_t n) {
  std::vector<long long> v;
  for (size_t k = 0; k < n; ++k) v.push_back(100 + 17 * static_cast<long long>(k));
  return v;
}

}  // namespace

Posynomial::Posynomial(std::vector<ParamMonomial> t) : terms(std::move(t)) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
}

std::string monomial_str(const ParamMonomial& m) {
  std::string s;
  for (const auto& [p, e] : m) {
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += p;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string Posynomial::str() const {
  std::string s;
  for (const auto& t : terms) s += (s.empty() ? "" : "+") + monomial_str(t);
  return s.empty() ? "0" : s;
}

double Posynomial::eval(const std::map<std::string, double>& values) const {
  double total = 0;
  for (const auto& t : terms) {
    double v = 1;
    for (const auto& [p, e] : t) v *= std::pow(values.at(p), e);
    total += v;
  }
  return total;
}

Integer count_points(const Polyhedron& bound) { return Counter(bound).count(); }

void enumerate_points(const Polyhedron& bound, const std::function<bool(const std::vector<long long>&)>& f) {
  Counter(bound).enumerate(f);
}

Integer card_at(const IntSet& s, const Binding& b) {
  Integer total = 0;
  for (const auto& p : bound_disjoint(s.pieces, param_values(s.params, b))) total += count_points(p);
  return total;
}

void enumerate_set(const IntSet& s, const Binding& b, const std::function<void(const std::vector<long long>&)>& f) {
  for (const auto& p : bound_disjoint(s.pieces, param_values(s.params, b)))
    enumerate_points(p, [&](const std::vector<long long>& x) {
      f(x);
      return true;
    });
}

void enumerate_relation(const AffRelation& r, const Binding& b,
                        const std::function<void(const std::vector<long long>&)>& f) {
  for (const auto& p : bound_disjoint(r.pieces, param_values(r.params, b)))
    enumerate_points(p, [&](const std::vector<long long>& x) {
      f(x);
      return true;
    });
}

int dim_of(const IntSet& s, bool allow_empty) {
  const auto pv = generic_values(s.params.size());
  int best = -1;
  for (const auto& p : s.pieces) {
    Polyhedron b = p.bind(pv);
    if (b.is_empty() || !has_point(b)) continue;
    best = std::max(best, b.affine_dim());
  }
  if (best < 0 && !allow_empty) fail(ErrorKind::input, "dim_of: set is empty at probe binding: " + to_string(s));
  return best;
}

int dim_by_counting(const IntSet& s, long long big) {
  Binding b;
  for (const auto& p : s.params) b[p] = big;
  Integer c = card_at(s, b);
  if (c == 0) fail(ErrorKind::input, "dim_by_counting: empty set");
  return static_cast<int>(std::lround(std::log(c.get_d()) / std::log(static_cast<double>(big))));
}

Posynomial card_leading(const IntSet& s) {
  const int np = static_cast<int>(s.params.size());
  std::vector<int> used;
  for (int k = 0; k < np; ++k) {
    bool any = false;
    for (const auto& p : s.pieces)
      for (const auto& c : p.cons)
        if (sgn(c.coeffs[s.dims + k]) != 0) any = true;
    if (any) used.push_back(k);
  }
  constexpr long long base = 120, step = 60;
  Binding b;
  for (const auto& p : s.params) b[p] = base;
  if (used.empty()) {
    if (card_at(s, b) == 0) fail(ErrorKind::input, "card_leading: empty set");
    return Posynomial({ParamMonomial{}});
  }
  const int deg = std::max(s.dims, 1);
  const int n = deg + 1;
  const int u = static_cast<int>(used.size());
  size_t total = 1;
  for (int a = 0; a < u; ++a) total *= n;

  // Sample counts on the tensor grid, index = sum idx[a] * n^a.
  RatVec values(total);
  for (size_t flat = 0; flat < total; ++flat) {
    size_t rest = flat;
    for (int a = 0; a < u; ++a) {
      b[s.params[used[a]]] = base + step * static_cast<long long>(rest % n);
      rest /= n;
    }
    values[flat] = Rational(card_at(s, b));
  }
  // Convert to monomial coefficients axis by axis.
  RatMat vand(n, RatVec(n));
  for (int i = 0; i < n; ++i) {
    Rational x = rat(base + step * i), pw = 1;
    for (int j = 0; j < n; ++j) {
      vand[i][j] = pw;
      pw *= x;
    }
  }
  RatMat vinv = *iolb::inverse(vand);
  size_t stride = 1;
  for (int a = 0; a < u; ++a) {
    RatVec next(total, 0);
    for (size_t flat = 0; flat < total; ++flat) {
      size_t idx = (flat / stride) % n;
      size_t base_flat = flat - idx * stride;
      Rational acc = 0;
      for (int i = 0; i < n; ++i) acc += vinv[idx][i] * values[base_flat + i * stride];
      next[flat] = acc;
    }
    values = std::move(next);
    stride *= n;
  }
  auto exps = [&](size_t flat) {
    std::vector<int> e(u);
    for (int a = 0; a < u; ++a) {
      e[a] = static_cast<int>(flat % n);
      flat /= n;
    }
    return e;
  };
  // Validate at an off-grid point. All samples are multiples of step, so
  // quasi-polynomial counts with a period dividing it fit exactly.
  std::vector<long long> probe(u);
  for (int a = 0; a < u; ++a) {
    probe[a] = base + step * (n + a);
    b[s.params[used[a]]] = probe[a];
  }
  Rational predicted = 0;
  for (size_t flat = 0; flat < total; ++flat) {
    if (sgn(values[flat]) == 0) continue;
    Rational t = values[flat];
    auto e = exps(flat);
    for (int a = 0; a < u; ++a)
      for (int k = 0; k < e[a]; ++k) t *= rat(probe[a]);
    predicted += t;
  }
  if (predicted != Rational(card_at(s, b)))
    fail(ErrorKind::input, "card_leading: non-polynomial growth for " + to_string(s));

  std::vector<std::pair<std::vector<int>, int>> nonzero;
  for (size_t flat = 0; flat < total; ++flat)
    if (sgn(values[flat]) != 0) nonzero.push_back({exps(flat), sgn(values[flat])});
  if (nonzero.empty()) fail(ErrorKind::input, "card_leading: empty set " + to_string(s));
  std::vector<ParamMonomial> lead;
  for (const auto& [e, sign] : nonzero) {
    bool dominated = false;
    for (const auto& [f, _] : nonzero) {
      if (f == e) continue;
      bool le = true;
      for (int a = 0; a < u; ++a) le = le && e[a] <= f[a];
      if (le) dominated = true;
    }
    if (dominated) continue;
    if (sign < 0) fail(ErrorKind::input, "card_leading: negative leading term for " + to_string(s));
    ParamMonomial m;
    for (int a = 0; a < u; ++a)
      if (e[a] > 0) m[s.params[used[a]]] = e[a];
    lead.push_back(m);
  }
  return Posynomial(lead);
}

}  // namespace iolb::poly
