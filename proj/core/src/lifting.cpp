#include "henselkit/lifting.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "henselkit/arith.hpp"
#include "henselkit/roots.hpp"
#include "henselkit/truncated.hpp"

namespace henselkit {

// --- admissible-constant calculus ------------------------------------------

namespace {

void validate_quad(const admissible_quadruple& q, const char* who) {
  if (q.q0 < 1 || q.N < 1 || q.c < 1 || q.s < 0)
    throw precondition_violated(std::string(who) + ": need q0,N,c >= 1 and s >= 0");
}

long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw error("overflow", "constant product overflow");
  return r;
}

rat rat_max(const rat& a, const rat& b) { return a < b ? b : a; }

} // namespace

greenberg_constants derive_greenberg_constants(const admissible_quadruple& quad) {
  validate_quad(quad, "derive");
  greenberg_constants g;
  g.M = frac(quad.N, quad.q0);
  g.gamma = quad.c;
  g.sigma = frac(quad.s + 1, quad.q0);
  g.source = quad;
  return g;
}

admissible_quadruple combine_admissible_smooth(
    const admissible_quadruple& minor_quad,
    const std::vector<admissible_quadruple>& per_index_set) {
  validate_quad(minor_quad, "smooth combine");
  for (const auto& q : per_index_set) validate_quad(q, "smooth combine");

  long q0 = minor_quad.q0;
  for (const auto& q : per_index_set) q0 = checked_mul(q0, q.q0);

  rat n_ratio = frac(minor_quad.N, minor_quad.q0);
  rat s_ratio = frac(minor_quad.s, minor_quad.q0);
  long c = minor_quad.c;
  for (const auto& q : per_index_set) {
    n_ratio = rat_max(n_ratio, frac(q.N, q.q0));
    s_ratio = rat_max(s_ratio, frac(q.s, q.q0));
    c = std::max(c, q.c);
  }

  admissible_quadruple out;
  out.q0 = q0;
  out.N = ceil_long(rat(2) + rat(2) * q0 * n_ratio);
  out.c = checked_mul(2, c);
  out.s = ceil_long(rat(1) + q0 * s_ratio);
  return out;
}

admissible_quadruple combine_admissible_components(const component_inputs& in) {
  if (in.components.empty()) throw empty_decomposition("no components to combine");
  if (in.q0_prime < 1 || in.u < 1 || in.v < 0 || in.w < 1)
    throw precondition_violated("component combine: need q0' >= 1, u,w >= 1, v >= 0");
  if (in.u != static_cast<long>(in.components.size()))
    throw precondition_violated("component combine: u must equal the component count");
  for (const auto& q : in.components) validate_quad(q, "component combine");

  long ratio = 1; // q0 / q0'
  rat n_ratio = frac(in.components[0].N, in.components[0].q0);
  rat s_ratio = frac(in.components[0].s, in.components[0].q0);
  long c = 1;
  for (const auto& q : in.components) {
    ratio = checked_mul(ratio, q.q0);
    n_ratio = rat_max(n_ratio, frac(q.N, q.q0));
    s_ratio = rat_max(s_ratio, frac(q.s, q.q0));
    c = std::max(c, q.c);
  }

  admissible_quadruple out;
  out.q0 = checked_mul(in.q0_prime, ratio);
  long uw = checked_mul(in.u, in.w);
  out.N = ceil_long(rat(uw) * ratio * (n_ratio + in.v));
  out.c = checked_mul(uw, c);
  out.s = ceil_long(rat(1) + ratio * (rat(in.v) + s_ratio));
  return out;
}

// --- quantitative Newton lifting -------------------------------------------

namespace {

void validate_minor(const jacobian_minor& m, size_t n_rows, size_t n_cols) {
  if (m.rows.empty() || m.rows.size() != m.cols.size())
    throw precondition_violated("minor index sets must be nonempty and of equal size");
  for (size_t i = 0; i < m.rows.size(); ++i) {
    if (i > 0 && (m.rows[i] <= m.rows[i - 1] || m.cols[i] <= m.cols[i - 1]))
      throw precondition_violated("minor index sets must be strictly increasing");
  }
  if (m.rows.back() >= n_rows || m.cols.back() >= n_cols)
    throw precondition_violated("minor index out of range");
}

series_matrix minor_matrix(const poly_system& F, const std::vector<puiseux_series>& x,
                           const jacobian_minor& m) {
  size_t k = m.rows.size();
  series_matrix M(k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      M[i].push_back(eval_poly(partial(F.polys[m.rows[i]], m.cols[j]), x));
  return M;
}

bool next_combination(std::vector<size_t>& idx, size_t total) {
  size_t k = idx.size();
  for (size_t i = k; i-- > 0;) {
    if (idx[i] < total - (k - i)) {
      ++idx[i];
      for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Fresh iterate bounded by the working precision.  In exact mode the kept
// terms are exact values, so the new iterate is again an honest polynomial;
// otherwise plain truncation keeps the precision accounting.
puiseux_series refresh_window(const puiseux_series& s, const rat& bound, bool exact_mode) {
  if (!exact_mode) return truncate(s, xrat(bound));
  std::map<long, field_elem> kept;
  for (const auto& [k, c] : s.terms())
    if (frac(k, s.ram_index()) < bound) kept.emplace(k, c);
  return puiseux_series(s.field(), s.ram_index(), std::move(kept), xrat::infinity());
}

} // namespace

valuation jacobian_residual(const poly_system& F, const std::vector<puiseux_series>& x,
                            const jacobian_minor& minor) {
  F.validate();
  if (x.size() != F.n_vars()) throw dimension_mismatch("point arity does not match the system");
  validate_minor(minor, F.polys.size(), F.n_vars());
  valuation v = val(det(minor_matrix(F, x, minor)));
  if (!v.finite && v.precision_limited)
    throw precision_too_low("minor determinant is masked by finite precision");
  return v;
}

lift_result smooth_lift(const poly_system& F, const std::vector<puiseux_series>& x,
                        const lift_options& opt) {
  F.validate();
  size_t n = F.n_vars();
  size_t r = F.polys.size();
  if (x.size() != n) throw dimension_mismatch("point arity does not match the system");
  for (const auto& xi : x) require_same_field(xi.field(), F.field());
  if (opt.target.is_inf())
    throw precondition_violated("lift target precision must be finite");
  rat target = opt.target.finite();

  valuation rv = residual_val(F, x);
  if (!rv.finite) {
    if (!rv.precision_limited) return {x, rat(0), rat(0), {}, {}};
    if (rv.known_from >= opt.target) return {x, rat(0), rat(0), {}, {}};
    throw precision_exhausted("residual is masked below the target precision");
  }
  rat nu = rv.value;
  if (xrat(nu) >= opt.target) return {x, rat(0), nu, {}, {}};

  // choose a minor with val(det) = e minimal subject to nu > 2e, preferring
  // the largest size
  jacobian_minor chosen;
  rat e;
  bool found = false;
  if (opt.minor) {
    chosen = *opt.minor;
    valuation mv = jacobian_residual(F, x, chosen);
    if (!mv.finite) throw not_smooth_enough("selected minor vanishes identically");
    e = mv.value;
    if (!(nu > 2 * e))
      throw not_smooth_enough("need residual " + rat_str(nu) + " > twice the minor valuation " +
                              rat_str(e));
    found = true;
  } else {
    std::string best_seen = "none finite";
    for (size_t k = std::min(r, n); k >= 1 && !found; --k) {
      rat best_e;
      std::vector<size_t> rows0(k), cols0(k);
      std::iota(rows0.begin(), rows0.end(), 0);
      std::vector<size_t> rows = rows0;
      do {
        std::iota(cols0.begin(), cols0.end(), 0);
        std::vector<size_t> cols = cols0;
        do {
          jacobian_minor cand{rows, cols};
          valuation mv;
          try {
            mv = jacobian_residual(F, x, cand);
          } catch (const precision_too_low&) {
            continue;
          }
          if (!mv.finite) continue;
          best_seen = rat_str(mv.value);
          if (nu > 2 * mv.value && (!found || mv.value < best_e)) {
            chosen = cand;
            best_e = mv.value;
            found = true;
          }
        } while (next_combination(cols, n));
      } while (next_combination(rows, r));
      if (found) e = best_e;
    }
    if (!found)
      throw not_smooth_enough("no Jacobian minor satisfies residual > 2*val(det) at the "
                              "initial point (residual " +
                              rat_str(nu) + ", best minor valuation " + best_seen + ")");
  }

  bool exact_mode = true;
  for (const auto& xi : x) exact_mode = exact_mode && xi.is_exact();
  for (const auto& f : F.polys)
    for (const auto& [idx, cf] : f.terms()) {
      (void)idx;
      exact_mode = exact_mode && cf.is_exact();
    }

  rat work = target + 3 * e + 1; // 2e of Newton slack plus e for the det division
  std::vector<puiseux_series> y;
  y.reserve(n);
  for (const auto& xi : x) y.push_back(refresh_window(xi, work, exact_mode));

  size_t k = chosen.rows.size();
  std::vector<xrat> trace;
  bool have_prev = false;
  rat prev_gain;
  bool done = false;

  for (long iter = 0; iter < opt.max_iter && !done; ++iter) {
    auto evs = eval_system(F, y);
    xrat full_lb = xrat::infinity();
    xrat sel_lb = xrat::infinity();
    bool sel_finite = false;
    rat sel_val;
    for (size_t i = 0; i < evs.size(); ++i) {
      valuation v = val(evs[i]);
      full_lb = min(full_lb, v.lower_bound());
      if (std::find(chosen.rows.begin(), chosen.rows.end(), i) != chosen.rows.end()) {
        sel_lb = min(sel_lb, v.lower_bound());
        if (v.finite && (!sel_finite || v.value < sel_val)) {
          sel_finite = true;
          sel_val = v.value;
        }
      }
    }
    trace.push_back(full_lb);
    if (full_lb >= opt.target) {
      done = true;
      break;
    }
    if (sel_lb >= opt.target)
      throw not_smooth_enough("selected minor does not control the full system");
    if (!sel_finite)
      throw precision_exhausted("selected residual is masked below the target precision");
    if (!(sel_val > 2 * e))
      throw not_smooth_enough("residual fell back under the minor threshold");
    rat gain = sel_val - 2 * e;
    if (have_prev && gain < 2 * prev_gain)
      throw not_smooth_enough("lift stalled: the residual gain stopped doubling");
    have_prev = true;
    prev_gain = gain;

    std::vector<puiseux_series> R;
    R.reserve(k);
    for (size_t i = 0; i < k; ++i) R.push_back(truncate(evs[chosen.rows[i]], xrat(work)));
    series_matrix J(k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j)
        J[i].push_back(
            truncate(eval_poly(partial(F.polys[chosen.rows[i]], chosen.cols[j]), y), xrat(work)));
    // dividing by det(J) costs its valuation e, so invert at work - e; the
    // work window above carries the extra e of margin
    auto delta = cramer_solve(J, R, xrat(work - e));
    for (size_t j = 0; j < k; ++j)
      y[chosen.cols[j]] = refresh_window(y[chosen.cols[j]] - delta[j], work, exact_mode);
  }
  if (!done) throw precision_exhausted("iteration cap reached before the target precision");

  // the output stays in the congruence class of the input mod t^{nu - e}
  rat mu = nu - e;
  if (mu > 0) {
    for (size_t j = 0; j < n; ++j) {
      if (x[j].precision() < xrat(mu) || y[j].precision() < xrat(mu)) continue;
      if (!equiv_mod(y[j], x[j], mu))
        throw not_smooth_enough("lift drifted outside the congruence class of the input");
    }
  }

  return {y, e, nu, chosen, trace};
}

// --- residue root search ---------------------------------------------------

residue_root_fn default_residue_roots() {
  return [](const field_desc& fd, const std::vector<field_elem>& coeffs) {
    size_t deg1 = coeffs.size();
    while (deg1 > 0 && coeffs[deg1 - 1].is_zero()) --deg1;
    if (deg1 == 0) throw zero_series("residue polynomial is identically zero");
    auto eval = [&](const field_elem& c) {
      field_elem acc = field_elem::zero(fd);
      for (size_t i = deg1; i-- > 0;) acc = acc * c + coeffs[i];
      return acc;
    };
    std::vector<field_elem> out;
    if (fd.kind == field_kind::prime_field) {
      for (unsigned long rv = 0; rv < fd.p; ++rv) {
        field_elem c(fd, static_cast<long>(rv));
        if (eval(c).is_zero()) out.push_back(c);
      }
      return out;
    }
    size_t m = 0;
    while (coeffs[m].is_zero()) ++m;
    if (m > 0) out.push_back(field_elem::zero(fd));
    if (m == deg1 - 1) return out; // monomial: zero is the only root
    bigint den_lcm = 1;
    for (size_t i = m; i < deg1; ++i)
      den_lcm = lcm(den_lcm, bigint(coeffs[i].value().get_den()));
    bigint lo = bigint(coeffs[m].value().get_num()) * (den_lcm / coeffs[m].value().get_den());
    bigint hi =
        bigint(coeffs[deg1 - 1].value().get_num()) * (den_lcm / coeffs[deg1 - 1].value().get_den());
    for (const bigint& p : divisors_of(lo))
      for (const bigint& q : divisors_of(hi)) {
        if (gcd(p, q) != 1) continue;
        for (int sign : {1, -1}) {
          rat cand(sign * p, q);
          cand.canonicalize();
          field_elem c(fd, cand);
          if (eval(c).is_zero()) out.push_back(c);
        }
      }
    std::sort(out.begin(), out.end(),
              [](const field_elem& a, const field_elem& b) { return a.value() < b.value(); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
}

// --- certification harness -------------------------------------------------

namespace {

std::vector<field_elem> probe_pool(const field_desc& fd) {
  std::vector<field_elem> pool;
  if (fd.kind == field_kind::prime_field) {
    unsigned long top = std::min<unsigned long>(fd.p - 1, 4);
    for (unsigned long v = 1; v <= top; ++v) pool.push_back(field_elem(fd, static_cast<long>(v)));
  } else {
    for (long v : {1L, -1L, 2L, -2L, 3L}) pool.push_back(field_elem(fd, v));
    pool.push_back(field_elem(fd, frac(1, 2)));
  }
  return pool;
}

std::string point_str(const std::vector<puiseux_series>& x) {
  std::ostringstream os;
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << series_str(x[i]);
  }
  return os.str();
}

} // namespace

certify_report certify_triple(const poly_system& F, const associated_triple& triple,
                              const certify_options& opt) {
  F.validate();
  if (triple.N < 1 || triple.c < 1 || triple.s < 0 || triple.q < 1)
    throw precondition_violated("triple: need N,c >= 1, s >= 0, q >= 1");
  size_t n = F.n_vars();
  bool univariate = (n == 1 && F.polys.size() == 1);
  long q = triple.q;

  certify_report report;
  report.triple = triple;
  report.verdict = "pass";

  auto pool = probe_pool(F.field());
  std::vector<std::vector<puiseux_series>> probes;
  probes.push_back(std::vector<puiseux_series>(n, puiseux_series::zero(F.field())));
  for (long k = 0; k <= opt.exponent_cap; ++k)
    for (const auto& c : pool)
      for (size_t i = 0; i < n && static_cast<long>(probes.size()) < opt.samples; ++i) {
        std::vector<puiseux_series> x(n, puiseux_series::zero(F.field()));
        x[i] = puiseux_series::monomial(c, k, q);
        probes.push_back(std::move(x));
      }
  std::mt19937_64 rng(opt.seed);
  while (static_cast<long>(probes.size()) < opt.samples) {
    std::vector<puiseux_series> x;
    for (size_t i = 0; i < n; ++i) {
      puiseux_series s = puiseux_series::zero(F.field());
      long nterms = static_cast<long>(rng() % 3);
      for (long tctr = 0; tctr < nterms; ++tctr) {
        long kexp = static_cast<long>(rng() % (opt.exponent_cap + 1));
        const auto& c = pool[rng() % pool.size()];
        s = s + puiseux_series::monomial(c, kexp, q);
      }
      x.push_back(s);
    }
    probes.push_back(std::move(x));
  }

  bool any_budget = false;
  for (size_t pi = 0; pi < probes.size(); ++pi) {
    const auto& x = probes[pi];
    certify_sample sample;
    sample.index = static_cast<long>(pi);
    sample.x = point_str(x);

    valuation rv = residual_val(F, x);
    if (!rv.finite) {
      sample.outcome = "exact";
      report.samples.push_back(std::move(sample));
      continue;
    }
    long nu_scaled = floor_long(rv.value * q);
    sample.nu = nu_scaled;
    if (nu_scaled < triple.N) {
      sample.outcome = "vacuous";
      report.samples.push_back(std::move(sample));
      continue;
    }
    rat tau = frac(nu_scaled / triple.c - triple.s, q); // y must match x below t^tau

    if (univariate) {
      root_options ro;
      ro.ring_q = q;
      ro.q_cap = q;
      ro.prec = opt.work_prec;
      ro.roots = opt.roots;
      root_result rr = puiseux_roots(F.polys[0], ro);
      bool matched = false;
      for (const auto& root : rr.roots)
        if (val(root.y - x[0]).lower_bound() >= xrat(tau)) matched = true;
      if (matched) {
        sample.outcome = "lifted";
      } else if (rr.complete) {
        sample.outcome = "counterexample";
        std::ostringstream os;
        os << "no root with ramification dividing " << q << " lies within t^" << rat_str(tau)
           << " of the probe (" << rr.roots.size() << " roots checked)";
        sample.note = os.str();
        report.witness = sample;
        report.verdict = "counterexample";
        report.samples.push_back(std::move(sample));
        break;
      } else {
        sample.outcome = "budget";
        sample.note = rr.note;
        any_budget = true;
      }
    } else {
      try {
        lift_options lo;
        lo.target = opt.work_prec;
        lift_result lr = smooth_lift(F, x, lo);
        bool near = true;
        for (size_t j = 0; j < n; ++j)
          if (val(lr.point[j] - x[j]).lower_bound() < xrat(tau)) near = false;
        if (near) {
          sample.outcome = "lifted";
        } else {
          sample.outcome = "budget";
          sample.note = "lifted root misses the congruence class";
          any_budget = true;
        }
      } catch (const not_smooth_enough& ex) {
        sample.outcome = "budget";
        sample.note = ex.what();
        any_budget = true;
      } catch (const precision_exhausted& ex) {
        sample.outcome = "budget";
        sample.note = ex.what();
        any_budget = true;
      }
    }
    report.samples.push_back(std::move(sample));
  }

  if (report.verdict == "pass" && any_budget) report.verdict = "inconclusive";
  return report;
}

// --- solving in the ramification closure -----------------------------------

namespace {

long coefficient_grid(const poly_system& F) {
  long g = 1;
  for (const auto& f : F.polys)
    for (const auto& [idx, c] : f.terms()) {
      (void)idx;
      g = std::lcm(g, normalize_ram(c).ram_index());
    }
  return g;
}

long point_ram(const std::vector<puiseux_series>& x) {
  long g = 1;
  for (const auto& xi : x) g = std::lcm(g, normalize_ram(xi).ram_index());
  return g;
}

} // namespace

solve_report solve_in_R_infty(const poly_system& F, const solve_options& opt) {
  F.validate();
  solve_report report;
  if (opt.quad) report.constants = derive_greenberg_constants(*opt.quad);

  if (F.n_vars() == 1 && F.polys.size() == 1) {
    root_options ro;
    ro.ring_q = 0;
    ro.q_cap = opt.q_cap;
    ro.prec = opt.target;
    ro.roots = opt.roots;
    root_result rr = puiseux_roots(F.polys[0], ro);
    const puiseux_root* pick = nullptr;
    for (const auto& root : rr.roots)
      if (root.exact && !pick) pick = &root;
    for (const auto& root : rr.roots)
      if (!pick) pick = &root;
    if (pick) {
      report.verdict = "solved";
      report.point = {normalize_ram(pick->y)};
      report.q = report.point[0].ram_index();
      if (!pick->exact) report.note = "root certified to the working precision";
      return report;
    }
    // no root found: fall through to the congruence schedule; a negative can
    // still be definitive even when the root search was cut
  }

  long base = coefficient_grid(F);
  std::vector<long> q_list;
  for (long q = base; q <= opt.q_cap; q += base) q_list.push_back(q);
  if (q_list.empty()) {
    report.verdict = "inconclusive";
    report.note = "coefficient grid exceeds the ramification cap";
    return report;
  }

  for (long nu = 1; nu <= opt.nu_max; ++nu) {
    bool any_solution = false;
    bool all_exhaustive = true;
    for (long q : q_list) {
      if (report.checked >= opt.budget) {
        report.verdict = "inconclusive";
        report.note = "evaluation budget exhausted";
        return report;
      }
      trunc_options topt;
      topt.nu = rat(nu);
      topt.q = q;
      topt.budget = opt.budget - report.checked;
      topt.max_solutions = 32;
      topt.roots = opt.roots;
      trunc_result tr = truncated_solutions(F, topt);
      report.checked += tr.checked;
      if (!tr.exhaustive) all_exhaustive = false;
      if (!tr.solutions.empty()) any_solution = true;
      for (const auto& sol : tr.solutions) {
        try {
          lift_options lo;
          lo.target = opt.target;
          lift_result lr = smooth_lift(F, sol, lo);
          report.verdict = "solved";
          report.nu = nu;
          report.point = lr.point;
          for (auto& c : report.point) c = normalize_ram(c);
          report.q = point_ram(report.point);
          report.note = "newton-certified to the working precision";
          return report;
        } catch (const not_smooth_enough&) {
        } catch (const precision_exhausted&) {
        }
      }
    }
    if (!any_solution) {
      if (all_exhaustive) {
        report.verdict = "no-solution-mod-nu";
        report.nu = nu;
        return report;
      }
      report.verdict = "inconclusive";
      report.nu = nu;
      report.note = "no congruence solution found, but the search was not exhaustive";
      return report;
    }
  }
  report.verdict = "inconclusive";
  report.note = "congruences stay solvable through the schedule without a certified lift";
  return report;
}

} // namespace henselkit
