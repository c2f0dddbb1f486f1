#include "henselkit/poly.hpp"

#include <algorithm>

namespace henselkit {

namespace {

unsigned index_weight(const multi_index& idx) {
  unsigned s = 0;
  for (unsigned e : idx) s += e;
  return s;
}

} // namespace

void series_poly::add_term(const multi_index& idx, const puiseux_series& c) {
  if (idx.size() != n_) throw dimension_mismatch("multi-index arity");
  require_same_field(fd_, c.field());
  if (homo_ && index_weight(idx) != *homo_)
    throw precondition_violated("term degree breaks declared homogeneity");
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    if (!c.is_exact_zero()) terms_.emplace(idx, c);
    return;
  }
  puiseux_series s = add(it->second, c);
  if (s.is_exact_zero())
    terms_.erase(it);
  else
    it->second = s;
}

void series_poly::set_homogeneous_degree(unsigned d) {
  for (const auto& [idx, c] : terms_) {
    (void)c;
    if (index_weight(idx) != d)
      throw precondition_violated("declared homogeneous degree does not match terms");
  }
  homo_ = d;
}

puiseux_series series_poly::coeff(const multi_index& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? puiseux_series::zero(fd_) : it->second;
}

unsigned series_poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [idx, c] : terms_) {
    (void)c;
    d = std::max(d, index_weight(idx));
  }
  return d;
}

puiseux_series eval_poly(const series_poly& f, const std::vector<puiseux_series>& x) {
  if (x.size() != f.n_vars()) throw dimension_mismatch("evaluation point arity");
  for (const auto& xi : x) require_same_field(f.field(), xi.field());
  // Powers computed once per variable.
  std::vector<std::vector<puiseux_series>> pw(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    pw[i].push_back(puiseux_series::constant(field_elem::one(f.field())));
  auto power = [&](size_t i, unsigned e) -> const puiseux_series& {
    while (pw[i].size() <= e) pw[i].push_back(mul(pw[i].back(), x[i]));
    return pw[i][e];
  };
  puiseux_series acc = puiseux_series::zero(f.field());
  for (const auto& [idx, c] : f.terms()) {
    puiseux_series m = c;
    for (size_t i = 0; i < idx.size(); ++i)
      if (idx[i] > 0) m = mul(m, power(i, idx[i]));
    acc = add(acc, m);
  }
  return acc;
}

series_poly partial(const series_poly& f, size_t var) {
  if (var >= f.n_vars()) throw dimension_mismatch("derivative variable out of range");
  series_poly g(f.field(), f.n_vars());
  for (const auto& [idx, c] : f.terms()) {
    if (idx[var] == 0) continue;
    multi_index j = idx;
    j[var] -= 1;
    g.add_term(j, scale(c, field_elem(f.field(), static_cast<long>(idx[var]))));
  }
  return g;
}

series_poly add(const series_poly& a, const series_poly& b) {
  require_same_field(a.field(), b.field());
  if (a.n_vars() != b.n_vars()) throw dimension_mismatch("adding different arities");
  series_poly r(a.field(), a.n_vars());
  for (const auto& [idx, c] : a.terms()) r.add_term(idx, c);
  for (const auto& [idx, c] : b.terms()) r.add_term(idx, c);
  return r;
}

series_poly mul(const series_poly& a, const series_poly& b) {
  require_same_field(a.field(), b.field());
  if (a.n_vars() != b.n_vars()) throw dimension_mismatch("multiplying different arities");
  series_poly r(a.field(), a.n_vars());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      multi_index idx(ia.size());
      for (size_t k = 0; k < idx.size(); ++k) idx[k] = ia[k] + ib[k];
      r.add_term(idx, mul(ca, cb));
    }
  return r;
}

series_poly scale(const series_poly& a, const puiseux_series& c) {
  series_poly r(a.field(), a.n_vars());
  for (const auto& [idx, x] : a.terms()) r.add_term(idx, mul(x, c));
  return r;
}

series_poly substitute_scaled_vars(const series_poly& f, const std::vector<rat>& exps) {
  if (exps.size() != f.n_vars()) throw dimension_mismatch("scaling exponent arity");
  series_poly r(f.field(), f.n_vars());
  for (const auto& [idx, c] : f.terms()) {
    rat e(0);
    for (size_t i = 0; i < idx.size(); ++i) e += exps[i] * static_cast<long>(idx[i]);
    long num = e.get_num().get_si();
    long den = e.get_den().get_si();
    r.add_term(idx, shift(c, num, den));
  }
  return r;
}

series_poly divide_power(const series_poly& f, const rat& e) {
  series_poly r(f.field(), f.n_vars());
  for (const auto& [idx, c] : f.terms())
    r.add_term(idx, shift(c, static_cast<long>(-e.get_num().get_si()),
                          e.get_den().get_si()));
  return r;
}

valuation min_coeff_val(const series_poly& f) {
  valuation best;
  best.finite = false;
  best.precision_limited = false;
  best.known_from = xrat::infinity();
  bool limited = false;
  xrat bound = xrat::infinity();
  for (const auto& [idx, c] : f.terms()) {
    (void)idx;
    valuation v = val(c);
    if (v.finite) {
      if (!best.finite || v.value < best.value) best = v;
    } else if (v.precision_limited) {
      limited = true;
      bound = min(bound, v.known_from);
    }
  }
  if (best.finite) return best;
  best.precision_limited = limited;
  best.known_from = bound;
  return best;
}

series_poly univar_from_coeffs(const field_desc& fd,
                               const std::vector<puiseux_series>& coeffs) {
  series_poly f(fd, 1);
  for (size_t i = 0; i < coeffs.size(); ++i)
    f.add_term({static_cast<unsigned>(i)}, coeffs[i]);
  return f;
}

std::vector<puiseux_series> univar_coeffs(const series_poly& f) {
  if (f.n_vars() != 1) throw dimension_mismatch("univariate access on multivariate poly");
  std::vector<puiseux_series> c(f.total_degree() + 1, puiseux_series::zero(f.field()));
  for (const auto& [idx, s] : f.terms()) c[idx[0]] = s;
  return c;
}

series_poly univar_shift_scale(const series_poly& f, const rat& rho, const field_elem& c) {
  auto coeffs = univar_coeffs(f);
  // f(t^rho (c + Y)) = sum_i c_i t^{i rho} (c + Y)^i, expanded by binomials.
  size_t d = coeffs.size() - 1;
  std::vector<puiseux_series> out(d + 1, puiseux_series::zero(f.field()));
  long rnum = rho.get_num().get_si();
  long rden = rho.get_den().get_si();
  for (size_t i = 0; i <= d; ++i) {
    if (coeffs[i].is_exact_zero()) continue;
    puiseux_series base = shift(coeffs[i], rnum * static_cast<long>(i), rden);
    bigint binom = 1; // C(i,k), updated along the row
    for (size_t k = 0; k <= i; ++k) {
      field_elem cf(f.field(), rat(binom));
      field_elem cpow = c.pow(static_cast<long>(i - k));
      out[k] = add(out[k], scale(base, cf * cpow));
      binom = binom * static_cast<long>(i - k) / static_cast<long>(k + 1);
    }
  }
  return univar_from_coeffs(f.field(), out);
}

series_poly univar_section(const series_poly& f, size_t var, size_t unit_var) {
  if (var >= f.n_vars() || unit_var >= f.n_vars() || var == unit_var)
    throw dimension_mismatch("section variables out of range");
  series_poly g(f.field(), 1);
  for (const auto& [idx, c] : f.terms()) {
    bool keep = true;
    for (size_t i = 0; i < idx.size(); ++i)
      if (i != var && i != unit_var && idx[i] != 0) {
        keep = false;
        break;
      }
    if (keep) g.add_term({idx[var]}, c);
  }
  return g;
}

void poly_system::validate() const {
  if (polys.empty()) throw precondition_violated("empty polynomial system");
  for (const auto& f : polys) {
    require_same_field(field(), f.field());
    if (f.n_vars() != n_vars()) throw dimension_mismatch("system arity mismatch");
  }
}

std::vector<puiseux_series> eval_system(const poly_system& F,
                                        const std::vector<puiseux_series>& x) {
  F.validate();
  std::vector<puiseux_series> r;
  r.reserve(F.polys.size());
  for (const auto& f : F.polys) r.push_back(eval_poly(f, x));
  return r;
}

valuation residual_val(const poly_system& F, const std::vector<puiseux_series>& x) {
  auto r = eval_system(F, x);
  valuation best;
  best.finite = false;
  best.precision_limited = false;
  best.known_from = xrat::infinity();
  bool limited = false;
  xrat bound = xrat::infinity();
  for (const auto& ri : r) {
    valuation v = val(ri);
    if (v.finite) {
      if (!best.finite || v.value < best.value) best = v;
    } else if (v.precision_limited) {
      limited = true;
      bound = min(bound, v.known_from);
    }
  }
  if (best.finite) return best;
  best.precision_limited = limited;
  best.known_from = bound;
  return best;
}

} // namespace henselkit
