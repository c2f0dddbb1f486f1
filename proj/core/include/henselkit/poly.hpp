#pragma once
#include <optional>

#include "henselkit/series.hpp"

namespace henselkit {

using multi_index = std::vector<unsigned>;

// Polynomial in n_vars variables with truncated-Puiseux-series coefficients.
// Coefficient entries are kept unless exactly zero: a zero-so-far series
// still carries precision information and stays in the map.
class series_poly {
public:
  series_poly(field_desc fd, size_t n_vars) : fd_(fd), n_(n_vars) {}

  const field_desc& field() const { return fd_; }
  size_t n_vars() const { return n_; }
  const std::map<multi_index, puiseux_series>& terms() const { return terms_; }
  const std::optional<unsigned>& homogeneous_degree() const { return homo_; }

  void add_term(const multi_index& idx, const puiseux_series& c); // accumulates
  void set_homogeneous_degree(unsigned d); // validates every present term
  puiseux_series coeff(const multi_index& idx) const; // exact zero when absent

  unsigned total_degree() const; // max |idx| over present terms (0 for empty)
  bool empty() const { return terms_.empty(); }

private:
  field_desc fd_;
  size_t n_;
  std::map<multi_index, puiseux_series> terms_;
  std::optional<unsigned> homo_;
};

puiseux_series eval_poly(const series_poly& f, const std::vector<puiseux_series>& x);
series_poly partial(const series_poly& f, size_t var);

series_poly add(const series_poly& a, const series_poly& b);
series_poly mul(const series_poly& a, const series_poly& b);
series_poly scale(const series_poly& a, const puiseux_series& c);

// x_i -> t^{a_i/q} x_i for each variable.
series_poly substitute_scaled_vars(const series_poly& f, const std::vector<rat>& exps);
// Divide every coefficient by t^{e}. Exponents may go negative (Laurent).
series_poly divide_power(const series_poly& f, const rat& e);
// Minimal valuation over all coefficients (+inf marker when nothing visible).
valuation min_coeff_val(const series_poly& f);

// Univariate helpers (n_vars == 1).
series_poly univar_from_coeffs(const field_desc& fd,
                               const std::vector<puiseux_series>& coeffs);
std::vector<puiseux_series> univar_coeffs(const series_poly& f); // degree+1 entries
// f(t^{rho} * (c + Y)) as a polynomial in Y.
series_poly univar_shift_scale(const series_poly& f, const rat& rho, const field_elem& c);

// The univariate section of a multivariate form: variable `var` stays X,
// variable `unit_var` is set to 1, all others to 0.
series_poly univar_section(const series_poly& f, size_t var, size_t unit_var);

// System of polynomials over one field in one variable set.
struct poly_system {
  std::vector<series_poly> polys;

  const field_desc& field() const { return polys.at(0).field(); }
  size_t n_vars() const { return polys.at(0).n_vars(); }
  void validate() const; // nonempty, consistent fields and arities
};

std::vector<puiseux_series> eval_system(const poly_system& F,
                                        const std::vector<puiseux_series>& x);
valuation residual_val(const poly_system& F, const std::vector<puiseux_series>& x);

} // namespace henselkit
