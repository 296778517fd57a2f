#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "arrangefree/errors.hpp"

namespace arrangefree {

// Exact arithmetic everywhere. Int is an arbitrary-precision integer and
// Rat an always-reduced rational with positive denominator; both are GMP
// classes, which already maintain those invariants.
using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int div_exact(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

// Accepts integer literals and p/q fractions, e.g. "-3", "1/2".
inline Rat parse_rat(const std::string& tok) {
  Rat r;
  if (r.set_str(tok, 10) != 0) throw Error("cannot parse rational '" + tok + "'");
  r.canonicalize();
  return r;
}

inline Int parse_int(const std::string& tok) {
  Int v;
  if (v.set_str(tok, 10) != 0) throw Error("cannot parse integer '" + tok + "'");
  return v;
}

// Divides the vector by the gcd of its entries and flips the sign so the
// first nonzero entry is positive. Zero vectors are left untouched.
inline void make_primitive(std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) {
    g = gcd(g, x);
    if (g == 1) break;
  }
  if (g == 0) return;
  int lead_sign = 0;
  for (const Int& x : v) {
    if (x != 0) {
      lead_sign = sgn(x);
      break;
    }
  }
  if (lead_sign < 0) g = -g;
  if (g != 1)
    for (Int& x : v) x = div_exact(x, g);
}

// Clears denominators of a rational vector into a primitive integer vector.
inline std::vector<Int> clear_denominators(const std::vector<Rat>& v) {
  Int den = 1;
  for (const Rat& x : v) den = lcm(den, x.get_den());
  std::vector<Int> out;
  out.reserve(v.size());
  for (const Rat& x : v) out.push_back(x.get_num() * div_exact(den, x.get_den()));
  make_primitive(out);
  return out;
}

inline bool is_zero(const std::vector<Int>& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace arrangefree
