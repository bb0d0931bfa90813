#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace iolb {

using Rational = mpq_class;
using Integer = mpz_class;
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

std::string to_string(const Rational& q);
std::string to_string(const RatVec& v);
Rational parse_rational(std::string_view text);

Rational dot(const RatVec& a, const RatVec& b);
bool is_zero(const RatVec& v);

// Scales v to coprime integers; the sign of the first nonzero entry is kept
// unless make_positive is set.
RatVec primitive(RatVec v, bool make_positive = true);

Integer floor_div(const Rational& q);
Integer ceil_div(const Rational& q);

long long to_ll(const Integer& z);
inline Rational rat(long long v) { return Rational(static_cast<long>(v)); }
inline Integer integer(long long v) { return Integer(static_cast<long>(v)); }
double to_double(const Rational& q);

}  // namespace iolb
