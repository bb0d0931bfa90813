#pragma once

#include <string>
#include <vector>

#include "iolb/polyset/polyhedron.hpp"

namespace iolb::poly {

// Union of polyhedra over one tagged space.
struct IntSet {
  std::string tag;
  int dims = 0;
  ParamSpace params;
  std::vector<std::string> names;  // per dimension, for printing
  std::vector<Polyhedron> pieces;

  static IntSet empty(std::string tag, int dims, ParamSpace params);
  static IntSet universe(std::string tag, int dims, ParamSpace params);
  bool is_empty() const;  // rational relaxation
  void add_piece(Polyhedron p);
};

// Relation between two tagged spaces; pieces live over in-dims ++ out-dims.
struct AffRelation {
  std::string in_tag, out_tag;
  int in_dims = 0, out_dims = 0;
  ParamSpace params;
  std::vector<std::string> in_names, out_names;
  std::vector<Polyhedron> pieces;

  bool is_empty() const;
  void add_piece(Polyhedron p);
};

IntSet intersect(const IntSet& a, const IntSet& b);
IntSet subtract(const IntSet& a, const IntSet& b);
IntSet unite(const IntSet& a, const IntSet& b);
IntSet make_disjoint(const IntSet& s);
IntSet project_out(const IntSet& s, const std::vector<int>& dims);
IntSet keep_dims(const IntSet& s, const std::vector<int>& dims);

IntSet domain(const AffRelation& r);
IntSet image(const AffRelation& r);
AffRelation inverse(const AffRelation& r);
// r2 after r1.
AffRelation compose(const AffRelation& r2, const AffRelation& r1);
AffRelation restrict_domain(const AffRelation& r, const IntSet& s);
AffRelation restrict_image(const AffRelation& r, const IntSet& s);
IntSet apply(const AffRelation& r, const IntSet& s);
IntSet frontier(const IntSet& d, const AffRelation& r);
AffRelation identity_relation(const IntSet& s);

std::string to_string(const IntSet& s);
std::string to_string(const AffRelation& r);

std::vector<long long> param_values(const ParamSpace& params, const Binding& b);

}  // namespace iolb::poly
