#pragma once
#include <map>
#include <string>
#include <vector>

#include "henselkit/field.hpp"

namespace henselkit {

// Result of val().  A series with no visible terms is either an exact zero
// (valuation +inf, unconditionally) or merely zero so far, in which case the
// +inf marker is precision-limited: all we know is val >= known_from.
struct valuation {
  bool finite = true;
  rat value = 0;            // when finite
  bool precision_limited = false; // when !finite
  xrat known_from;          // when precision_limited, the masking precision

  xrat lower_bound() const {
    if (finite) return xrat(value);
    return precision_limited ? known_from : xrat::infinity();
  }
};

// Truncated Puiseux series sum c_k t^{k/q}, k ranging over the keys of
// `terms`, known modulo t^{prec}.  Precision is part of the value, never
// ambient state; +inf precision means the series is exact (a Laurent
// polynomial in t^{1/q}).  Invariants: q >= 1, coefficients nonzero and all
// from `field`, every exponent k/q < prec, and prec > 0.
class puiseux_series {
public:
  puiseux_series(field_desc fd, long q, std::map<long, field_elem> terms, xrat prec);

  static puiseux_series zero(const field_desc& fd, xrat prec = xrat::infinity());
  static puiseux_series constant(const field_elem& c, xrat prec = xrat::infinity());
  // c * t^{k/q}
  static puiseux_series monomial(const field_elem& c, long k, long q,
                                 xrat prec = xrat::infinity());

  const field_desc& field() const { return fd_; }
  long ram_index() const { return q_; }
  const std::map<long, field_elem>& terms() const { return terms_; }
  const xrat& precision() const { return prec_; }

  bool has_terms() const { return !terms_.empty(); }
  bool is_exact() const { return prec_.is_inf(); }
  bool is_exact_zero() const { return terms_.empty() && is_exact(); }
  bool is_zero_so_far() const { return terms_.empty(); }

  // Coefficient of t^e; throws precision_too_low when e is at or beyond the
  // known precision.
  field_elem coeff_at(const rat& e) const;
  field_elem leading_coeff() const; // throws zero_series when no terms

private:
  field_desc fd_;
  long q_ = 1;
  std::map<long, field_elem> terms_;
  xrat prec_;
};

puiseux_series add(const puiseux_series& a, const puiseux_series& b);
puiseux_series sub(const puiseux_series& a, const puiseux_series& b);
puiseux_series neg(const puiseux_series& a);
puiseux_series mul(const puiseux_series& a, const puiseux_series& b);
puiseux_series scale(const puiseux_series& a, const field_elem& c);

// Multiplicative inverse r with mul(a, r) == 1 mod t^{target}.  Needs val(a)
// finite and, for finitely known a, target <= prec(a) - val(a).
puiseux_series invert_unit(const puiseux_series& a, const xrat& target);

valuation val(const puiseux_series& a);

// Rewrite on the ramification level q_new (a positive multiple of the current
// one); pure relabeling of exponent numerators.
puiseux_series reramify(const puiseux_series& a, long q_new);
// Smallest ramification level carrying the same term data.
puiseux_series normalize_ram(const puiseux_series& a);

// Lower the precision to prec (no-op when already coarser).
puiseux_series truncate(const puiseux_series& a, const xrat& prec);
// Multiply by t^{k/q}.
puiseux_series shift(const puiseux_series& a, long k, long q);
puiseux_series pow(const puiseux_series& a, long e);

// Do a and b agree modulo t^{mu}?  Both must be known at least to mu.
bool equiv_mod(const puiseux_series& a, const puiseux_series& b, const rat& mu);

inline puiseux_series operator+(const puiseux_series& a, const puiseux_series& b) {
  return add(a, b);
}
inline puiseux_series operator-(const puiseux_series& a, const puiseux_series& b) {
  return sub(a, b);
}
inline puiseux_series operator-(const puiseux_series& a) { return neg(a); }
inline puiseux_series operator*(const puiseux_series& a, const puiseux_series& b) {
  return mul(a, b);
}

std::string series_str(const puiseux_series& a); // human-readable, for reports

} // namespace henselkit
