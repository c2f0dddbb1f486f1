#include "henselkit/series.hpp"

#include <numeric>
#include <sstream>

namespace henselkit {

namespace {

long lcm_long(long a, long b) { return std::lcm(a, b); }

// Is k/q strictly below prec?
bool below(long k, long q, const xrat& prec) {
  if (prec.is_inf()) return true;
  return rat(k) < prec.finite() * q;
}

} // namespace

puiseux_series::puiseux_series(field_desc fd, long q, std::map<long, field_elem> terms,
                               xrat prec)
    : fd_(fd), q_(q), terms_(std::move(terms)), prec_(prec) {
  if (q_ < 1) throw precondition_violated("ramification index must be >= 1");
  if (!(xrat(0) < prec_))
    throw insufficient_precision("series precision must be positive");
  for (auto it = terms_.begin(); it != terms_.end();) {
    require_same_field(fd_, it->second.field());
    if (!below(it->first, q_, prec_))
      throw precondition_violated("term exponent at or beyond stated precision");
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

puiseux_series puiseux_series::zero(const field_desc& fd, xrat prec) {
  return puiseux_series(fd, 1, {}, prec);
}

puiseux_series puiseux_series::constant(const field_elem& c, xrat prec) {
  std::map<long, field_elem> t;
  if (!c.is_zero()) t.emplace(0, c);
  return puiseux_series(c.field(), 1, std::move(t), prec);
}

puiseux_series puiseux_series::monomial(const field_elem& c, long k, long q, xrat prec) {
  std::map<long, field_elem> t;
  if (!c.is_zero()) t.emplace(k, c);
  return puiseux_series(c.field(), q, std::move(t), prec);
}

field_elem puiseux_series::coeff_at(const rat& e) const {
  if (!(xrat(e) < prec_))
    throw precision_too_low("coefficient of t^" + rat_str(e) + " beyond precision");
  rat scaled = e * q_;
  if (is_integral(scaled)) {
    long k = floor_long(scaled);
    auto it = terms_.find(k);
    if (it != terms_.end()) return it->second;
  }
  return field_elem::zero(fd_);
}

field_elem puiseux_series::leading_coeff() const {
  if (terms_.empty()) throw zero_series("no visible terms");
  return terms_.begin()->second;
}

valuation val(const puiseux_series& a) {
  valuation v;
  if (a.has_terms()) {
    v.finite = true;
    v.value = rat(a.terms().begin()->first) / a.ram_index();
    return v;
  }
  v.finite = false;
  v.precision_limited = !a.is_exact();
  v.known_from = a.precision();
  return v;
}

puiseux_series reramify(const puiseux_series& a, long q_new) {
  if (q_new < 1 || q_new % a.ram_index() != 0)
    throw not_a_multiple("new ramification index " + std::to_string(q_new) +
                         " is not a multiple of " + std::to_string(a.ram_index()));
  long f = q_new / a.ram_index();
  std::map<long, field_elem> t;
  for (const auto& [k, c] : a.terms()) t.emplace(k * f, c);
  return puiseux_series(a.field(), q_new, std::move(t), a.precision());
}

puiseux_series normalize_ram(const puiseux_series& a) {
  long g = a.ram_index();
  for (const auto& [k, c] : a.terms()) {
    (void)c;
    g = std::gcd(g, k < 0 ? -k : k);
    if (g == 1) break;
  }
  if (g == a.ram_index() && g == 1) return a;
  if (a.terms().empty()) g = a.ram_index();
  std::map<long, field_elem> t;
  for (const auto& [k, c] : a.terms()) t.emplace(k / g, c);
  return puiseux_series(a.field(), a.ram_index() / g, std::move(t), a.precision());
}

puiseux_series add(const puiseux_series& a, const puiseux_series& b) {
  require_same_field(a.field(), b.field());
  long q = lcm_long(a.ram_index(), b.ram_index());
  long fa = q / a.ram_index(), fb = q / b.ram_index();
  xrat prec = min(a.precision(), b.precision());
  std::map<long, field_elem> t;
  for (const auto& [k, c] : a.terms())
    if (below(k * fa, q, prec)) t.emplace(k * fa, c);
  for (const auto& [k, c] : b.terms()) {
    if (!below(k * fb, q, prec)) continue;
    auto [it, fresh] = t.emplace(k * fb, c);
    if (!fresh) {
      field_elem s = it->second + c;
      if (s.is_zero())
        t.erase(it);
      else
        it->second = s;
    }
  }
  return puiseux_series(a.field(), q, std::move(t), prec);
}

puiseux_series neg(const puiseux_series& a) {
  std::map<long, field_elem> t;
  for (const auto& [k, c] : a.terms()) t.emplace(k, -c);
  return puiseux_series(a.field(), a.ram_index(), std::move(t), a.precision());
}

puiseux_series sub(const puiseux_series& a, const puiseux_series& b) {
  return add(a, neg(b));
}

puiseux_series scale(const puiseux_series& a, const field_elem& c) {
  require_same_field(a.field(), c.field());
  if (c.is_zero()) return puiseux_series::zero(a.field());
  std::map<long, field_elem> t;
  for (const auto& [k, x] : a.terms()) t.emplace(k, x * c);
  return puiseux_series(a.field(), a.ram_index(), std::move(t), a.precision());
}

puiseux_series mul(const puiseux_series& a, const puiseux_series& b) {
  require_same_field(a.field(), b.field());
  if (a.is_exact_zero() || b.is_exact_zero()) return puiseux_series::zero(a.field());
  // prec = min(prec_a + val(b), prec_b + val(a)), with zero-so-far factors
  // contributing their precision as the valuation lower bound.
  xrat prec = min(a.precision() + val(b).lower_bound(),
                  b.precision() + val(a).lower_bound());
  if (!prec.is_inf() && !(xrat(0) < prec))
    throw insufficient_precision("product precision drops to t^" + prec.str());
  long q = lcm_long(a.ram_index(), b.ram_index());
  long fa = q / a.ram_index(), fb = q / b.ram_index();
  std::map<long, field_elem> t;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      long k = ka * fa + kb * fb;
      if (!below(k, q, prec)) continue;
      field_elem p = ca * cb;
      if (p.is_zero()) continue;
      auto [it, fresh] = t.emplace(k, p);
      if (!fresh) {
        field_elem s = it->second + p;
        if (s.is_zero())
          t.erase(it);
        else
          it->second = s;
      }
    }
  return puiseux_series(a.field(), q, std::move(t), prec);
}

puiseux_series truncate(const puiseux_series& a, const xrat& prec) {
  xrat p = min(a.precision(), prec);
  if (!(xrat(0) < p)) throw insufficient_precision("truncation precision must be positive");
  std::map<long, field_elem> t;
  for (const auto& [k, c] : a.terms())
    if (below(k, a.ram_index(), p)) t.emplace(k, c);
  return puiseux_series(a.field(), a.ram_index(), std::move(t), p);
}

puiseux_series shift(const puiseux_series& a, long k, long q) {
  if (q < 1) throw precondition_violated("shift denominator must be >= 1");
  long Q = lcm_long(a.ram_index(), q);
  long fa = Q / a.ram_index(), fk = Q / q;
  xrat prec = a.precision() + xrat(frac(k, q));
  if (!prec.is_inf() && !(xrat(0) < prec))
    throw insufficient_precision("shifted precision drops to t^" + prec.str());
  std::map<long, field_elem> t;
  for (const auto& [kk, c] : a.terms()) t.emplace(kk * fa + k * fk, c);
  return puiseux_series(a.field(), Q, std::move(t), prec);
}

puiseux_series pow(const puiseux_series& a, long e) {
  if (e < 0) throw precondition_violated("negative power; use invert_unit");
  puiseux_series acc = puiseux_series::constant(field_elem::one(a.field()));
  puiseux_series base = a;
  unsigned long n = e;
  while (n) {
    if (n & 1) acc = mul(acc, base);
    if (n >>= 1) base = mul(base, base);
  }
  return acc;
}

puiseux_series invert_unit(const puiseux_series& a, const xrat& target) {
  if (target.is_inf() || !(xrat(0) < target))
    throw precondition_violated("inversion target must be finite and positive");
  if (!a.has_terms())
    throw zero_series("no unit part visible at the current precision");
  long q = a.ram_index();
  long kmin = a.terms().begin()->first;
  rat v(kmin, q);
  if (a.precision() < target + v)
    throw insufficient_precision("inverting to t^" + target.str() + " needs input mod t^" +
                                 (target + v).str());
  xrat rprec = target - v;
  if (!(xrat(0) < rprec))
    throw insufficient_precision("inverse precision would drop to t^" + rprec.str());

  // u = a / t^{v} is a unit with constant term u_0; solve u * w = 1 term by
  // term for exponents below `target`.
  std::map<long, field_elem> u;
  for (const auto& [k, c] : a.terms()) u.emplace(k - kmin, c);
  field_elem u0_inv = u.at(0).inverse();
  std::map<long, field_elem> w;
  long kmax = ceil_long(target.finite() * q); // compute w_j for j < kmax
  w.emplace(0, u0_inv);
  for (long j = 1; j < kmax; ++j) {
    if (!below(j, q, target)) break;
    field_elem s = field_elem::zero(a.field());
    for (const auto& [i, ui] : u) {
      if (i <= 0 || i > j) continue;
      auto it = w.find(j - i);
      if (it != w.end()) s = s + ui * it->second;
    }
    field_elem wj = -(u0_inv * s);
    if (!wj.is_zero()) w.emplace(j, wj);
  }
  std::map<long, field_elem> t;
  for (const auto& [j, c] : w)
    if (below(j - kmin, q, rprec)) t.emplace(j - kmin, c);
  return puiseux_series(a.field(), q, std::move(t), rprec);
}

bool equiv_mod(const puiseux_series& a, const puiseux_series& b, const rat& mu) {
  if (a.precision() < xrat(mu) || b.precision() < xrat(mu))
    throw precision_too_low("comparison mod t^" + rat_str(mu) +
                            " beyond operand precision");
  puiseux_series d = sub(a, b);
  for (const auto& [k, c] : d.terms()) {
    (void)c;
    if (rat(k) < mu * d.ram_index()) return false;
  }
  return true;
}

std::string series_str(const puiseux_series& a) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : a.terms()) {
    std::string cs = c.str();
    bool negc = !cs.empty() && cs[0] == '-';
    if (first) {
      if (negc) os << "-";
      first = false;
    } else {
      os << (negc ? " - " : " + ");
    }
    if (negc) cs = cs.substr(1);
    long q = a.ram_index();
    if (k == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << "t";
      if (!(k == q)) {
        os << "^";
        if (k % q == 0)
          os << (k / q);
        else
          os << "(" << k << "/" << q << ")";
      }
    }
  }
  if (first) os << "0";
  if (!a.precision().is_inf()) os << " + O(t^" << a.precision().str() << ")";
  return os.str();
}

} // namespace henselkit
