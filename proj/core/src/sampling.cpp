#include "henselkit/sampling.hpp"

#include <algorithm>

namespace henselkit {

long sampler::uniform(long lo, long hi) {
  if (lo > hi) throw precondition_violated("empty sampling range");
  unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1;
  return lo + static_cast<long>(rng_() % span);
}

rat sampler::rational(long height, bool nonzero) {
  long num = uniform(-height, height);
  while (nonzero && num == 0) num = uniform(-height, height);
  return frac(num, uniform(1, height));
}

field_elem sampler::elem(const field_desc& fd, bool nonzero) {
  if (fd.kind == field_kind::prime_field)
    return field_elem(fd, uniform(nonzero ? 1 : 0, static_cast<long>(fd.p) - 1));
  return field_elem(fd, rational(6, nonzero));
}

puiseux_series sampler::series(const field_desc& fd, long ram_cap, bool unit, bool exact) {
  long q = uniform(1, ram_cap);
  std::map<long, field_elem> terms;
  long k = unit ? 0 : uniform(-3 * q, 3 * q);
  long nterms = uniform(1, 4);
  for (long i = 0; i < nterms; ++i) {
    terms.insert({k, elem(fd, true)});
    k += uniform(1, 2 * q + 1);
  }
  xrat prec = xrat::infinity();
  if (!exact && uniform(0, 2) != 0) {
    long last = terms.rbegin()->first;
    prec = xrat(frac(std::max(last + uniform(1, 8), 1L), q));
  }
  return puiseux_series(fd, q, std::move(terms), prec);
}

admissible_quadruple sampler::quadruple() {
  admissible_quadruple quad;
  quad.q0 = uniform(1, 3);
  quad.N = uniform(1, 12);
  quad.c = uniform(1, 4);
  quad.s = uniform(0, 4);
  return quad;
}

component_inputs sampler::components() {
  component_inputs in;
  in.q0_prime = uniform(1, 3);
  in.u = uniform(1, 3);
  in.v = uniform(0, 3);
  in.w = uniform(1, 3);
  // one quadruple per component: the combine requires u to be their count
  for (long i = 0; i < in.u; ++i) in.components.push_back(quadruple());
  return in;
}

unit_class_mod_d sampler::uclass(unsigned d, unsigned m) {
  unit_class_mod_d c;
  c.d = d;
  c.vec.reserve(m);
  for (unsigned i = 0; i < m; ++i)
    c.vec.push_back(static_cast<unsigned>(uniform(0, static_cast<long>(d) - 1)));
  return c;
}

std::vector<unit_class_mod_d> sampler::distinct_uclasses(unsigned d, unsigned m,
                                                         unsigned count) {
  double capacity = 1;
  for (unsigned i = 0; i < m; ++i) capacity *= d;
  if (count > capacity)
    throw precondition_violated("more distinct classes requested than the lattice holds");
  std::vector<unit_class_mod_d> out;
  while (out.size() < count) {
    unit_class_mod_d c = uclass(d, m);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

monic_laurent_poly sampler::eisenstein(unsigned d, unsigned m) {
  if (m == 0) throw precondition_violated("need at least one uniformizer");
  monic_laurent_poly f;
  f.degree = d;
  monomial_elem c0;
  c0.exps.reserve(m);
  bool primitive = false;
  while (!primitive) {
    c0.exps.clear();
    for (unsigned i = 0; i < m; ++i) {
      long e = uniform(-4, 4);
      c0.exps.push_back(e);
      if (e % static_cast<long>(d) != 0) primitive = true;
    }
  }
  if (uniform(0, 1)) c0.constant_tag = "-1";
  f.lower[0] = c0;
  long v_out = c0.exps[m - 1];
  for (unsigned i = 1; i + 1 < d; ++i) {
    if (uniform(0, 1)) continue;
    monomial_elem ci;
    for (unsigned k = 0; k + 1 < m; ++k) ci.exps.push_back(uniform(-3, 3));
    // strict dominance in the outermost coordinate keeps the polygon on one
    // slope whatever the inner coordinates do
    long num = static_cast<long>(d - i) * v_out;
    long dd = static_cast<long>(d);
    long floor_q = (num >= 0) ? num / dd : -((-num + dd - 1) / dd);
    ci.exps.push_back(floor_q + 1 + uniform(0, 2));
    f.lower[i] = std::move(ci);
  }
  return f;
}

sampler::smooth_instance sampler::planted_smooth(const field_desc& fd, unsigned n) {
  if (n == 0 || n > 3) throw precondition_violated("planted systems cover 1 to 3 variables");
  // exact planted root: small integer-exponent polynomials
  std::vector<puiseux_series> root;
  for (unsigned i = 0; i < n; ++i) {
    std::map<long, field_elem> terms;
    long nt = uniform(1, 2);
    long k = uniform(0, 2);
    for (long tix = 0; tix < nt; ++tix) {
      terms.insert({k, elem(fd, true)});
      k += uniform(1, 2);
    }
    root.emplace_back(fd, 1, std::move(terms), xrat::infinity());
  }

  auto linear_factor = [&](unsigned var) {
    // X_var - root_var
    series_poly L(fd, n);
    multi_index idx(n, 0);
    idx[var] = 1;
    L.add_term(idx, puiseux_series::constant(field_elem::one(fd)));
    L.add_term(multi_index(n, 0), neg(root[var]));
    return L;
  };

  poly_system F;
  long e_total = 0;
  std::vector<long> diag_val(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    diag_val[i] = uniform(0, 3) == 0 ? 1 : 0;
    e_total += diag_val[i];
  }
  for (unsigned i = 0; i < n; ++i) {
    puiseux_series mi =
        puiseux_series::monomial(elem(fd, true), diag_val[i], 1);
    series_poly fi = scale(linear_factor(i), mi);
    long quads = uniform(0, 2);
    for (long qx = 0; qx < quads; ++qx) {
      unsigned j1 = static_cast<unsigned>(uniform(0, n - 1));
      unsigned j2 = static_cast<unsigned>(uniform(0, n - 1));
      series_poly q = mul(linear_factor(j1), linear_factor(j2));
      fi = add(fi, scale(q, puiseux_series::constant(elem(fd, true))));
    }
    F.polys.push_back(std::move(fi));
  }

  // perturb past twice the minor valuation so the contract bites
  long mu = 2 * e_total + 1 + uniform(0, 3);
  std::vector<puiseux_series> x = root;
  unsigned bumped = static_cast<unsigned>(uniform(0, n - 1));
  for (unsigned i = 0; i < n; ++i) {
    if (i != bumped && uniform(0, 1)) continue;
    puiseux_series p = puiseux_series::monomial(elem(fd, true), mu + uniform(0, 2), 1);
    x[i] = add(x[i], p);
  }
  return {std::move(F), std::move(x), std::move(root)};
}

} // namespace henselkit
