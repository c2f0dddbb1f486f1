#pragma once
#include <gmpxx.h>
#include <string>

#include "henselkit/errors.hpp"

namespace henselkit {

using rat = mpq_class;
using bigint = mpz_class;

inline long floor_long(const rat& x) {
  bigint q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (!q.fits_slong_p()) throw error("overflow", "rational floor out of long range");
  return q.get_si();
}

inline long ceil_long(const rat& x) {
  bigint q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (!q.fits_slong_p()) throw error("overflow", "rational ceil out of long range");
  return q.get_si();
}

inline bool is_integral(const rat& x) { return x.get_den() == 1; }

// mpq_class(n, d) keeps the raw pair; always build fractions through here so
// comparisons and hashing see canonical values.
inline rat frac(long n, long d) {
  rat x(n, d);
  x.canonicalize();
  return x;
}

// "n/d", "n", optional sign; used for precisions, valuations, coefficients.
rat parse_rat(const std::string& s);
std::string rat_str(const rat& x);

// Rational extended with +infinity.  Precisions and valuations live here: an
// exact series has precision +inf, an exact zero has valuation +inf.
struct xrat {
  bool inf = false;
  rat v;

  xrat() : inf(false), v(0) {}
  xrat(const rat& r) : inf(false), v(r) {}
  xrat(long n) : inf(false), v(n) {}
  static xrat infinity() {
    xrat x;
    x.inf = true;
    return x;
  }

  bool is_inf() const { return inf; }
  const rat& finite() const {
    if (inf) throw error("overflow", "infinite value where finite expected");
    return v;
  }

  friend bool operator==(const xrat& a, const xrat& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.v == b.v;
  }
  friend bool operator<(const xrat& a, const xrat& b) {
    if (a.inf) return false;
    if (b.inf) return true;
    return a.v < b.v;
  }
  friend bool operator<=(const xrat& a, const xrat& b) { return a < b || a == b; }
  friend bool operator>(const xrat& a, const xrat& b) { return b < a; }
  friend bool operator>=(const xrat& a, const xrat& b) { return b <= a; }

  friend xrat operator+(const xrat& a, const xrat& b) {
    if (a.inf || b.inf) return infinity();
    return xrat(rat(a.v + b.v));
  }
  friend xrat operator-(const xrat& a, const rat& b) {
    if (a.inf) return infinity();
    return xrat(rat(a.v - b));
  }

  std::string str() const { return inf ? "inf" : rat_str(v); }
};

inline xrat min(const xrat& a, const xrat& b) { return a < b ? a : b; }
inline xrat max(const xrat& a, const xrat& b) { return a < b ? b : a; }

} // namespace henselkit
