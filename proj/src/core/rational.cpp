#include "iolb/core/rational.hpp"

#include <limits>

#include "iolb/core/error.hpp"

namespace iolb {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

Rational parse_rational(std::string_view text) {
  Rational q;
  if (q.set_str(std::string(text), 10) != 0) fail(ErrorKind::input, "bad rational: " + std::string(text));
  q.canonicalize();
  return q;
}

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

RatVec primitive(RatVec v, bool make_positive) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  Integer g = 0;
  for (auto& x : v) {
    x *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g == 0) return v;
  int sign = 1;
  if (make_positive) {
    for (const auto& x : v)
      if (sgn(x) != 0) {
        sign = sgn(x);
        break;
      }
  }
  for (auto& x : v) x = x / g * sign;
  return v;
}

Integer floor_div(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_div(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

long long to_ll(const Integer& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::cap, "integer overflow: " + z.get_str());
  return z.get_si();
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace iolb
