#include "henselkit/pointfinder.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace henselkit {

// --- residue forms ----------------------------------------------------------

field_elem residue_form::eval(const std::vector<field_elem>& x) const {
  if (x.size() != n_vars) throw dimension_mismatch("point arity does not match the form");
  field_elem acc = field_elem::zero(fd);
  for (const auto& [idx, c] : terms) {
    field_elem m = c;
    for (size_t i = 0; i < n_vars; ++i)
      for (unsigned e = 0; e < idx[i]; ++e) m = m * x[i];
    acc = acc + m;
  }
  return acc;
}

unsigned residue_form::total_degree() const {
  unsigned d = 0;
  for (const auto& [idx, c] : terms) {
    (void)c;
    unsigned s = 0;
    for (unsigned e : idx) s += e;
    d = std::max(d, s);
  }
  return d;
}

residue_form residue_of(const series_poly& f) {
  residue_form out;
  out.fd = f.field();
  out.n_vars = f.n_vars();
  for (const auto& [idx, c] : f.terms()) {
    field_elem r = c.coeff_at(rat(0));
    if (!r.is_zero()) out.terms.emplace(idx, r);
  }
  return out;
}

// --- finite-field enumeration ----------------------------------------------

cw_result cw_search(const std::vector<residue_form>& forms, const cw_options& opt) {
  if (forms.empty()) throw precondition_violated("no forms to search");
  const field_desc& fd = forms[0].fd;
  if (fd.kind != field_kind::prime_field)
    throw precondition_violated("direct enumeration needs a finite coefficient field");
  size_t n = forms[0].n_vars;
  if (n == 0) throw dimension_mismatch("forms need at least one variable");
  for (const auto& f : forms) {
    if (f.fd != fd) throw field_mismatch("mixed coefficient fields");
    if (f.n_vars != n) throw dimension_mismatch("mixed variable counts");
  }

  cw_result out;
  auto is_common_zero = [&](const std::vector<field_elem>& x) {
    for (const auto& f : forms)
      if (!f.eval(x).is_zero()) return false;
    return true;
  };

  if (opt.randomized) {
    std::mt19937_64 rng(opt.seed);
    std::vector<field_elem> x(n, field_elem::zero(fd));
    while (out.checked < opt.budget) {
      bool zero = true;
      for (size_t i = 0; i < n; ++i) {
        x[i] = field_elem(fd, static_cast<long>(rng() % fd.p));
        if (!x[i].is_zero()) zero = false;
      }
      if (zero) continue;
      ++out.checked;
      if (is_common_zero(x)) {
        out.verdict = "found";
        out.point = x;
        return out;
      }
    }
    out.verdict = "budget-exceeded";
    return out;
  }

  std::vector<unsigned long> digits(n, 0);
  std::vector<field_elem> x(n, field_elem::zero(fd));
  for (;;) {
    // advance the odometer; the leftmost digit is the most significant
    size_t i = n;
    while (i-- > 0) {
      if (++digits[i] < fd.p) break;
      digits[i] = 0;
      if (i == 0) {
        out.verdict = "none";
        return out;
      }
    }
    for (size_t j = 0; j < n; ++j) x[j] = field_elem(fd, static_cast<long>(digits[j]));
    if (++out.checked > opt.budget) {
      out.verdict = "budget-exceeded";
      return out;
    }
    if (is_common_zero(x)) {
      out.verdict = "found";
      out.point = x;
      return out;
    }
  }
}

c1_report verify_c1_batch(const std::vector<residue_form>& forms, const cw_options& opt) {
  c1_report report;
  for (const auto& f : forms) {
    if (f.total_degree() > f.n_vars)
      throw precondition_violated("the degree bound deg <= n_vars is the hypothesis");
    cw_result r = cw_search({f}, opt);
    ++report.total;
    if (r.verdict == "found") ++report.found;
    report.results.push_back(std::move(r));
  }
  return report;
}

// --- coefficient splitting --------------------------------------------------

split_form truncate_split(const series_poly& f, const rat& level) {
  if (level <= 0) throw precondition_violated("split level must be positive");
  series_poly low(f.field(), f.n_vars());
  series_poly high(f.field(), f.n_vars());
  long lden = static_cast<long>(level.get_den().get_si());
  for (const auto& [idx, c0] : f.terms()) {
    if (!c0.is_exact() && c0.precision() <= xrat(level))
      throw precision_too_low("coefficient not known beyond the split level");
    long q = std::lcm(c0.ram_index(), lden);
    puiseux_series c = reramify(c0, q);
    rat scaled = level * q;
    long cut = static_cast<long>(scaled.get_num().get_si());
    std::map<long, field_elem> lo, hi;
    for (const auto& [k, v] : c.terms()) {
      if (k < cut)
        lo.emplace(k, v);
      else
        hi.emplace(k - cut, v);
    }
    low.add_term(idx, puiseux_series(f.field(), q, std::move(lo), xrat::infinity()));
    xrat hprec = c.precision() - level;
    high.add_term(idx, puiseux_series(f.field(), q, std::move(hi), hprec));
  }
  if (f.homogeneous_degree()) {
    low.set_homogeneous_degree(*f.homogeneous_degree());
    high.set_homogeneous_degree(*f.homogeneous_degree());
  }
  return {std::move(low), std::move(high), level};
}

// --- points over Laurent/Puiseux coefficients -------------------------------

namespace {

struct lp_state {
  const laurent_point_options* opt;
  laurent_point_report* report;
  bool definitive_negative = false;
};

std::vector<field_elem> projective_normalize(const std::vector<field_elem>& x) {
  for (const auto& c : x)
    if (!c.is_zero()) {
      field_elem inv = c.inverse();
      std::vector<field_elem> out;
      out.reserve(x.size());
      for (const auto& v : x) out.push_back(v * inv);
      return out;
    }
  return x;
}

// Residue zeros of fbar, the hint (when valid) first, then sweep order.
std::vector<std::vector<field_elem>> residue_zeros(lp_state& st, const residue_form& fbar,
                                                   bool top_level) {
  std::vector<std::vector<field_elem>> zeros;
  std::set<std::vector<rat>> seen;
  auto push = [&](const std::vector<field_elem>& x) {
    auto nx = projective_normalize(x);
    std::vector<rat> key;
    key.reserve(nx.size());
    for (const auto& c : nx) key.push_back(c.value());
    if (seen.insert(key).second) zeros.push_back(nx);
  };

  if (top_level && st.opt->residue_hint) {
    const auto& h = *st.opt->residue_hint;
    bool nonzero = false;
    for (const auto& c : h)
      if (!c.is_zero()) nonzero = true;
    if (h.size() == fbar.n_vars && nonzero && fbar.eval(h).is_zero()) push(h);
  }

  const field_desc& fd = fbar.fd;
  size_t n = fbar.n_vars;
  if (fd.kind == field_kind::prime_field) {
    std::vector<unsigned long> digits(n, 0);
    std::vector<field_elem> x(n, field_elem::zero(fd));
    for (;;) {
      size_t i = n;
      bool rolled_out = false;
      while (i-- > 0) {
        if (++digits[i] < fd.p) break;
        digits[i] = 0;
        if (i == 0) rolled_out = true;
      }
      if (rolled_out) break;
      if (++st.report->checked > st.opt->budget) {
        st.report->note = "enumeration budget exhausted";
        return zeros;
      }
      for (size_t j = 0; j < n; ++j) x[j] = field_elem(fd, static_cast<long>(digits[j]));
      if (fbar.eval(x).is_zero()) {
        push(x);
        if (zeros.size() >= st.opt->residue_candidates) return zeros;
      }
    }
    if (zeros.empty() && top_level) st.definitive_negative = true;
    return zeros;
  }

  // Over Q a full sweep is impossible.  A diagonal form of even degree with
  // residue coefficients all of one strict sign has no nontrivial real zero,
  // which settles the question; otherwise a sample pool is tried.
  if (top_level) {
    bool diagonal = true;
    size_t diag_count = 0;
    int sign = 0;
    bool mixed = false;
    unsigned deg = fbar.total_degree();
    for (const auto& [idx, c] : fbar.terms) {
      size_t support = 0;
      for (unsigned e : idx)
        if (e) ++support;
      if (support > 1) diagonal = false;
      ++diag_count;
      int s = c.value() > 0 ? 1 : -1;
      if (sign == 0)
        sign = s;
      else if (sign != s)
        mixed = true;
    }
    if (diagonal && !mixed && deg % 2 == 0 && deg > 0 && diag_count == n) {
      st.definitive_negative = true;
      st.report->note = "definite diagonal form: no nontrivial real zero";
      return zeros;
    }
  }
  std::vector<field_elem> pool;
  for (long v : {0L, 1L, -1L, 2L, -2L, 3L, -3L}) pool.push_back(field_elem(fd, v));
  pool.push_back(field_elem(fd, frac(1, 2)));
  pool.push_back(field_elem(fd, frac(-1, 2)));
  std::vector<size_t> digits(n, 0);
  std::vector<field_elem> x(n, field_elem::zero(fd));
  for (;;) {
    size_t i = n;
    bool rolled_out = false;
    while (i-- > 0) {
      if (++digits[i] < pool.size()) break;
      digits[i] = 0;
      if (i == 0) rolled_out = true;
    }
    if (rolled_out) break;
    if (++st.report->checked > st.opt->budget) {
      st.report->note = "enumeration budget exhausted";
      return zeros;
    }
    for (size_t j = 0; j < n; ++j) x[j] = pool[digits[j]];
    if (fbar.eval(x).is_zero()) {
      push(x);
      if (zeros.size() >= st.opt->residue_candidates) return zeros;
    }
  }
  return zeros;
}

std::optional<std::vector<puiseux_series>> lp_stage(lp_state& st, const series_poly& f,
                                                    long depth, long q_acc) {
  if (f.empty()) {
    // the zero form vanishes everywhere
    std::vector<puiseux_series> pt(f.n_vars(), puiseux_series::zero(f.field()));
    pt[0] = puiseux_series::constant(field_elem::one(f.field()));
    return pt;
  }
  valuation mv = min_coeff_val(f);
  if (!mv.finite) {
    st.report->note = "coefficient precision masks the form";
    return std::nullopt;
  }
  series_poly f1 = divide_power(f, mv.value);
  residue_form fbar = residue_of(f1);

  auto zeros = residue_zeros(st, fbar, depth == 0);
  for (const auto& z : zeros) {
    std::vector<puiseux_series> P0;
    P0.reserve(z.size());
    for (const auto& c : z) P0.push_back(puiseux_series::constant(c));
    try {
      lift_options lo;
      lo.target = st.opt->target;
      lift_result lr = smooth_lift({{f1}}, P0, lo);
      return lr.point;
    } catch (const not_smooth_enough&) {
    } catch (const precision_exhausted&) {
    } catch (const insufficient_precision&) {
    } catch (const precision_too_low&) {
    }
  }
  if (st.definitive_negative) return std::nullopt;
  if (depth >= st.opt->depth_cap) {
    st.report->note = "substitution depth cap reached";
    return std::nullopt;
  }

  // every usable residue zero is singular: look for ramified valuations of a
  // single variable from the Newton polygons of the axis sections
  size_t n = f1.n_vars();
  std::set<std::pair<size_t, rat>> tried;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      series_poly sec(f1.field(), 1);
      try {
        sec = univar_section(f1, i, j);
      } catch (const error&) {
        continue;
      }
      newton_polygon_slopes poly;
      try {
        poly = newton_polygon(sec);
      } catch (const error&) {
        continue;
      }
      for (const auto& seg : poly.segments) {
        rat rho = -seg.slope;
        if (rho <= 0) continue; // the unramified case was handled above
        if (!tried.insert({i, rho}).second) continue;
        long b = static_cast<long>(rho.get_den().get_si());
        long q_new = std::lcm(q_acc, b);
        if (q_new > st.opt->q_cap) {
          st.report->note = "ramification cap cut a substitution";
          continue;
        }
        std::vector<rat> exps(n, rat(0));
        exps[i] = rho;
        series_poly f2 = substitute_scaled_vars(f1, exps);
        auto sub = lp_stage(st, f2, depth + 1, q_new);
        if (sub) {
          auto pt = *sub;
          pt[i] = shift(pt[i], static_cast<long>(rho.get_num().get_si()), b);
          return pt;
        }
      }
    }
  }
  return std::nullopt;
}

} // namespace

laurent_point_report point_over_laurent(const series_poly& f,
                                        const laurent_point_options& opt) {
  if (!f.homogeneous_degree())
    throw precondition_violated("point search needs a homogeneous form");
  if (*f.homogeneous_degree() < 1)
    throw precondition_violated("the form must have positive degree");
  if (f.n_vars() < 1) throw dimension_mismatch("the form needs at least one variable");
  if (opt.target.is_inf())
    throw precondition_violated("target precision must be finite");

  laurent_point_report report;
  lp_state st{&opt, &report, false};
  auto pt = lp_stage(st, f, 0, 1);
  if (!pt) {
    report.verdict = st.definitive_negative ? "no-residue-point" : "inconclusive";
    if (report.note.empty() && !st.definitive_negative)
      report.note = "no residue zero led to a certified lift";
    return report;
  }

  // make the point primitive: shift so the minimal coordinate valuation is 0
  xrat m = xrat::infinity();
  for (const auto& c : *pt) m = min(m, val(c).lower_bound());
  if (!m.is_inf() && m.finite() != 0) {
    rat shift_by = -m.finite();
    long d = static_cast<long>(shift_by.get_den().get_si());
    long a = static_cast<long>(shift_by.get_num().get_si());
    for (auto& c : *pt) c = shift(c, a, d);
  }
  for (auto& c : *pt) c = normalize_ram(c);

  report.verdict = "found";
  report.point = *pt;
  report.q = 1;
  for (const auto& c : report.point) report.q = std::lcm(report.q, c.ram_index());

  valuation rv = residual_val({{f}}, report.point);
  if (rv.lower_bound() < opt.target) {
    try {
      lift_options lo;
      lo.target = opt.target;
      report.point = smooth_lift({{f}}, report.point, lo).point;
    } catch (const error&) {
      report.note = "certified only to t^" + rv.lower_bound().str();
    }
  }
  return report;
}

} // namespace henselkit
