#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "henselkit/pointfinder.hpp"
#include "henselkit/sampling.hpp"

using namespace henselkit;

namespace {

puiseux_series cnum(const field_desc& fd, long n) {
  return puiseux_series::constant(field_elem(fd, rat(n)));
}

puiseux_series t_to(const field_desc& fd, long k) {
  return puiseux_series::monomial(field_elem::one(fd), k, 1);
}

// x^2 + y^2 - u z^2 with u = unit_const + t
series_poly unit_conic(const field_desc& fd, long unit_const) {
  series_poly f(fd, 3);
  f.add_term({2, 0, 0}, cnum(fd, 1));
  f.add_term({0, 2, 0}, cnum(fd, 1));
  f.add_term({0, 0, 2}, neg(add(cnum(fd, unit_const), t_to(fd, 1))));
  f.set_homogeneous_degree(2);
  return f;
}

} // namespace

TEST_CASE("residue reduction keeps the visible constant terms") {
  field_desc F5 = field_desc::Fp(5);
  series_poly f = unit_conic(F5, 1);
  residue_form r = residue_of(f);
  CHECK(r.n_vars == 3);
  CHECK(r.total_degree() == 2);
  // x = y = 1, z anything: 1 + 1 - z^2 = 2 - z^2
  field_elem got = r.eval({field_elem::one(F5), field_elem::one(F5),
                           field_elem(F5, 0)});
  CHECK(got.value() == 2);
}

TEST_CASE("enumeration finds guaranteed zeros of small systems") {
  // two diagonal quadrics in five variables over F_2 and F_3: the degree sum
  // is below the variable count, so a nontrivial common zero must exist
  for (unsigned long p : {2ul, 3ul}) {
    field_desc fd = field_desc::Fp(p);
    residue_form a, b;
    a.fd = b.fd = fd;
    a.n_vars = b.n_vars = 5;
    for (unsigned i = 0; i < 5; ++i) {
      multi_index idx(5, 0);
      idx[i] = 2;
      a.terms[idx] = field_elem(fd, long(1 + i % (p - 1 ? p - 1 : 1)));
      if (i < 4) b.terms[idx] = field_elem::one(fd);
    }
    cw_result r = cw_search({a, b});
    REQUIRE(r.verdict == "found");
    bool nontrivial = false;
    for (const auto& c : r.point) nontrivial = nontrivial || !c.is_zero();
    CHECK(nontrivial);
    CHECK(a.eval(r.point).is_zero());
    CHECK(b.eval(r.point).is_zero());
  }
}

TEST_CASE("enumeration reports none only after a full sweep") {
  // x^2 + x y + y^2 over F_2 vanishes nowhere but the origin
  field_desc F2 = field_desc::Fp(2);
  residue_form f;
  f.fd = F2;
  f.n_vars = 2;
  f.terms[{2, 0}] = field_elem::one(F2);
  f.terms[{1, 1}] = field_elem::one(F2);
  f.terms[{0, 2}] = field_elem::one(F2);
  cw_result r = cw_search({f});
  CHECK(r.verdict == "none");
  CHECK(r.checked == 3); // every nonzero pair

  cw_options tight;
  tight.budget = 2;
  CHECK(cw_search({f}, tight).verdict == "budget-exceeded");
}

TEST_CASE("batch driver checks the degree bound first") {
  field_desc F3 = field_desc::Fp(3);
  residue_form f;
  f.fd = F3;
  f.n_vars = 2;
  f.terms[{3, 0}] = field_elem::one(F3); // degree 3 > 2 variables
  CHECK_THROWS_AS((void)verify_c1_batch({f}), error);
}

TEST_CASE("coefficient splitting reassembles the polynomial") {
  field_desc Q = field_desc::Q();
  series_poly f(Q, 2);
  f.add_term({2, 0}, add(cnum(Q, 1), t_to(Q, 2)));
  f.add_term({0, 1}, shift(cnum(Q, 3), 1, 1));
  f.add_term({1, 1}, truncate(t_to(Q, 3), xrat(5)));

  split_form sp = truncate_split(f, rat(2));
  CHECK(sp.level == rat(2));
  for (const auto& [idx, c] : f.terms()) {
    puiseux_series back =
        add(sp.low.coeff(idx),
            mul(puiseux_series::monomial(field_elem::one(Q), 2, 1),
                sp.high.coeff(idx)));
    xrat known = min(c.precision(), back.precision());
    if (known.is_inf()) {
      CHECK(!sub(back, c).has_terms());
    } else {
      CHECK(equiv_mod(back, c, known.finite()));
    }
    // the low part is exact and supported strictly below the level
    puiseux_series lo = sp.low.coeff(idx);
    CHECK(lo.is_exact());
    for (const auto& [k, cv] : lo.terms())
      CHECK(frac(k, lo.ram_index()) < rat(2));
  }

  // a coefficient not known to the level is refused
  series_poly g(Q, 1);
  g.add_term({1}, truncate(cnum(Q, 1), xrat(1)));
  CHECK_THROWS_AS((void)truncate_split(g, rat(2)), error);
}

TEST_CASE("hypersurface points over residue-smooth forms") {
  field_desc F5 = field_desc::Fp(5);
  series_poly f = unit_conic(F5, 1);
  laurent_point_options lo;
  lo.target = xrat(16);
  laurent_point_report r = point_over_laurent(f, lo);
  REQUIRE(r.verdict == "found");
  CHECK(val(eval_poly(f, r.point)).lower_bound() >= xrat(16));
  // primitivity: some coordinate is a unit
  bool unit_coord = false;
  for (const auto& c : r.point) {
    valuation v = val(c);
    unit_coord = unit_coord || (v.finite && v.value == 0);
  }
  CHECK(unit_coord);

  // same pipeline over the rationals
  field_desc Q = field_desc::Q();
  laurent_point_report r2 = point_over_laurent(unit_conic(Q, 2), lo);
  REQUIRE(r2.verdict == "found");
  CHECK(val(eval_poly(unit_conic(Q, 2), r2.point)).lower_bound() >= xrat(16));
}

TEST_CASE("forms without residue zeros are refused definitively") {
  // x^2 + y^2 over F_3: squares are 0 and 1, so only the origin vanishes
  field_desc F3 = field_desc::Fp(3);
  series_poly f(F3, 2);
  f.add_term({2, 0}, cnum(F3, 1));
  f.add_term({0, 2}, cnum(F3, 1));
  f.set_homogeneous_degree(2);
  laurent_point_report r = point_over_laurent(f);
  CHECK(r.verdict == "no-residue-point");
}

TEST_CASE("solving in the ramification closure") {
  field_desc Q = field_desc::Q();

  // y^2 = t^3 needs ramification 2
  series_poly f(Q, 1);
  f.add_term({2}, cnum(Q, 1));
  f.add_term({0}, neg(puiseux_series::monomial(field_elem::one(Q), 3, 1)));
  solve_report r = solve_in_R_infty({{f}});
  REQUIRE(r.verdict == "solved");
  CHECK(r.q == 2);
  puiseux_series y = r.point[0];
  valuation v = val(y);
  CHECK(v.finite);
  CHECK(v.value == frac(3, 2));

  // y^2 = -1 has no solution at any ramification over F_3
  field_desc F3 = field_desc::Fp(3);
  series_poly g(F3, 1);
  g.add_term({2}, cnum(F3, 1));
  g.add_term({0}, cnum(F3, 1));
  solve_report r2 = solve_in_R_infty({{g}});
  CHECK(r2.verdict == "no-solution-mod-nu");
  CHECK(r2.nu >= 1);

  // constants are derived and passed through when a quadruple is supplied
  solve_options so;
  so.quad = admissible_quadruple{1, 12, 6, 3};
  solve_report r3 = solve_in_R_infty({{f}}, so);
  REQUIRE(r3.constants.has_value());
  CHECK(r3.constants->M == rat(12));
  CHECK(r3.constants->gamma == 6);
  CHECK(r3.constants->sigma == rat(4));
}
