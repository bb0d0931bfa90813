#pragma once

// Brute-force helpers shared by the unit and acceptance tests.

#include <functional>
#include <random>
#include <string>

#include "iolb/polyset/count.hpp"
#include "iolb/polyset/intset.hpp"

namespace oracle {

using iolb::poly::AffRelation;
using iolb::poly::Binding;
using iolb::poly::IntSet;

// Points of s inside the box [lo, hi]^dims, checked constraint by constraint.
inline long long naive_count(const IntSet& s, const Binding& b, long long lo, long long hi) {
  auto pv = iolb::poly::param_values(s.params, b);
  std::vector<long long> x(s.dims, lo);
  long long n = 0;
  std::function<void(int)> rec = [&](int k) {
    if (k == s.dims) {
      for (const auto& p : s.pieces)
        if (p.contains(x, pv)) {
          ++n;
          break;
        }
      return;
    }
    for (long long v = lo; v <= hi; ++v) {
      x[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return n;
}

inline IntSet relation_as_set(const AffRelation& r) {
  IntSet s = IntSet::empty(r.in_tag + "->" + r.out_tag, r.in_dims + r.out_dims, r.params);
  s.pieces = r.pieces;
  return s;
}

inline bool same_at(const IntSet& a, const IntSet& b, const Binding& bind) {
  IntSet bb = b;
  bb.tag = a.tag;
  return iolb::poly::card_at(iolb::poly::subtract(a, bb), bind) == 0 &&
         iolb::poly::card_at(iolb::poly::subtract(bb, a), bind) == 0;
}

inline bool same_rel_at(const AffRelation& a, const AffRelation& b, const Binding& bind) {
  return same_at(relation_as_set(a), relation_as_set(b), bind);
}

}  // namespace oracle
