#include "henselkit/roots.hpp"

#include <numeric>

namespace henselkit {

namespace {

struct np_state {
  const root_options* opt;
  root_result* out;
  field_desc fd;
};

puiseux_series prefix_series(const field_desc& fd,
                             const std::vector<std::pair<rat, field_elem>>& pref,
                             const xrat& prec) {
  long q = 1;
  for (const auto& [e, c] : pref) {
    (void)c;
    q = std::lcm(q, static_cast<long>(e.get_den().get_si()));
  }
  if (!prec.is_inf()) q = std::lcm(q, static_cast<long>(prec.finite().get_den().get_si()));
  std::map<long, field_elem> terms;
  for (const auto& [e, c] : pref) {
    rat k = e * q;
    terms.emplace(floor_long(k), c);
  }
  return puiseux_series(fd, q, std::move(terms), prec);
}

// Is c a simple root of the edge polynomial?  Simple continuation means the
// rest of the branch is a forced Hensel chain, so an approximate prefix
// certifies a genuine root.
bool simple_edge_root(const std::vector<field_elem>& edge, const field_elem& c) {
  field_elem d = field_elem::zero(c.field());
  field_elem pw = field_elem::one(c.field());
  for (size_t i = 1; i < edge.size(); ++i) {
    d = d + field_elem(c.field(), static_cast<long>(i)) * edge[i] * pw;
    pw = pw * c;
  }
  return !d.is_zero();
}

// f_cur is the transformed polynomial whose roots Y correspond to original
// roots x = (prefix) + t^{E}(c + Y) at the next branching.
void np_rec(np_state& st, const series_poly& f_cur,
            std::vector<std::pair<rat, field_elem>>& prefix, const rat& E, long q_acc,
            long depth, bool simple_from_here) {
  if (depth > st.opt->depth_cap) {
    st.out->complete = false;
    st.out->note = "branch depth cap reached";
    return;
  }

  auto coeffs = univar_coeffs(f_cur);
  // Exact root of the original polynomial whenever the constant term is
  // exactly zero.
  if (coeffs[0].is_exact_zero()) {
    st.out->roots.push_back({prefix_series(st.fd, prefix, xrat::infinity()), true});
    bool others = false; // other roots besides Y = 0?
    for (size_t i = 1; i < coeffs.size(); ++i)
      if (!coeffs[i].is_exact_zero()) others = true;
    if (!others) return;
  }
  if (simple_from_here && xrat(E) >= st.opt->prec) {
    st.out->roots.push_back(
        {prefix_series(st.fd, prefix, xrat(E + frac(1, q_acc))), false});
    return;
  }

  newton_polygon_slopes poly;
  try {
    poly = newton_polygon(f_cur);
  } catch (const zero_series&) {
    st.out->complete = false;
    st.out->note = "transformed polynomial vanished";
    return;
  } catch (const precision_too_low&) {
    st.out->complete = false;
    st.out->note = "precision mask inside a branch";
    return;
  }
  for (const auto& seg : poly.segments) {
    rat rho = -seg.slope;
    if (depth == 0) {
      if (st.opt->nonneg_only && rho < 0) continue; // not an integral root
    } else {
      if (rho <= 0) continue; // expansion exponents must increase
    }
    long b = static_cast<long>(rho.get_den().get_si());
    long q_new = std::lcm(q_acc, b);
    if (st.opt->ring_q > 0) {
      if (st.opt->ring_q % q_new != 0) continue; // outside the requested ring
    }
    if (q_new > st.opt->q_cap) {
      st.out->complete = false;
      st.out->note = "ramification cap cut a branch";
      continue;
    }

    // Edge polynomial: leading coefficients of the terms sitting on this
    // segment.
    std::vector<field_elem> edge;
    long i0 = -1;
    {
      // find segment endpoints by walking resolved points on the hull line
      // val(c_i) == v0 + slope*(i - i_seg_start)
      // reconstruct from the polygon: locate the start index of this segment
      long idx = poly.lowest_index;
      for (const auto& s2 : poly.segments) {
        if (&s2 == &seg) break;
        idx += s2.mult;
      }
      i0 = idx;
      long i1 = idx + seg.mult;
      edge.assign(static_cast<size_t>(seg.mult) + 1, field_elem::zero(st.fd));
      valuation v_start = val(coeffs[static_cast<size_t>(i0)]);
      bool edge_resolved = true;
      for (long i = i0; i <= i1; ++i) {
        const auto& ci = coeffs[static_cast<size_t>(i)];
        valuation v = val(ci);
        rat expect = v_start.value + seg.slope * rat(i - i0);
        if (!v.finite) {
          // A zero-so-far coefficient whose precision stops exactly on the
          // segment may or may not contribute to the edge polynomial.
          if (v.precision_limited && v.lower_bound() == xrat(expect)) edge_resolved = false;
          continue;
        }
        if (v.value == expect) edge[static_cast<size_t>(i - i0)] = ci.leading_coeff();
      }
      if (!edge_resolved) {
        st.out->complete = false;
        st.out->note = "precision mask on a segment edge";
        continue;
      }
    }
    std::vector<field_elem> cand;
    try {
      cand = st.opt->roots(st.fd, edge);
    } catch (const budget_exceeded&) {
      st.out->complete = false;
      st.out->note = "residue root budget exceeded";
      continue;
    }
    for (const auto& c : cand) {
      if (c.is_zero()) continue;
      bool simple = simple_edge_root(edge, c);
      series_poly g = univar_shift_scale(f_cur, rho, c);
      rat Enew = E + rho;
      prefix.push_back({Enew, c});
      np_rec(st, g, prefix, Enew, q_new, depth + 1, simple);
      prefix.pop_back();
    }
  }
}

} // namespace

root_result puiseux_roots(const series_poly& f, const root_options& opt) {
  if (f.n_vars() != 1) throw dimension_mismatch("root search needs a univariate poly");
  root_result out;
  out.complete = true;
  np_state st{&opt, &out, f.field()};
  std::vector<std::pair<rat, field_elem>> prefix;
  np_rec(st, f, prefix, rat(0), 1, 0, false);
  return out;
}

} // namespace henselkit
