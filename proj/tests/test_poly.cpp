#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "henselkit/newton_polygon.hpp"
#include "henselkit/roots.hpp"
#include "henselkit/sampling.hpp"

using namespace henselkit;

namespace {

field_desc Q = field_desc::Q();

puiseux_series cnum(long n) {
  return puiseux_series::constant(field_elem(Q, rat(n)));
}

puiseux_series t_to(long k, long q = 1) {
  return puiseux_series::monomial(field_elem::one(Q), k, q);
}

// X^deg + lower coefficients, all exact
series_poly univar(const std::vector<puiseux_series>& coeffs) {
  return univar_from_coeffs(Q, coeffs);
}

bool vanishes(const puiseux_series& a) { return !a.has_terms(); }

// slopes of a polygon flattened to one entry per root, sorted
std::vector<rat> slope_multiset(const newton_polygon_slopes& np) {
  std::vector<rat> out;
  for (const auto& s : np.segments)
    for (long i = 0; i < s.mult; ++i) out.push_back(s.slope);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("evaluation and partial derivatives") {
  // f(x, y) = x^2 y + 3 x - 1
  series_poly f(Q, 2);
  f.add_term({2, 1}, cnum(1));
  f.add_term({1, 0}, cnum(3));
  f.add_term({0, 0}, cnum(-1));

  puiseux_series got = eval_poly(f, {cnum(2), cnum(5)});
  CHECK(vanishes(sub(got, cnum(25)))); // 4*5 + 6 - 1

  series_poly fx = partial(f, 0); // 2xy + 3
  puiseux_series gx = eval_poly(fx, {cnum(2), cnum(5)});
  CHECK(vanishes(sub(gx, cnum(23))));

  series_poly fy = partial(f, 1); // x^2
  puiseux_series gy = eval_poly(fy, {cnum(2), cnum(5)});
  CHECK(vanishes(sub(gy, cnum(4))));
}

TEST_CASE("product evaluation matches factor product") {
  sampler gen(21);
  for (int it = 0; it < 50; ++it) {
    series_poly a(Q, 2), b(Q, 2);
    for (int k = 0; k < 3; ++k) {
      a.add_term({unsigned(gen.uniform(0, 2)), unsigned(gen.uniform(0, 2))},
                 gen.series(Q, 2, false, true));
      b.add_term({unsigned(gen.uniform(0, 2)), unsigned(gen.uniform(0, 2))},
                 gen.series(Q, 2, false, true));
    }
    series_poly p = mul(a, b);
    std::vector<puiseux_series> x = {gen.series(Q, 2, false, true),
                                     gen.series(Q, 2, false, true)};
    puiseux_series lhs = eval_poly(p, x);
    puiseux_series rhs = mul(eval_poly(a, x), eval_poly(b, x));
    CHECK(vanishes(sub(lhs, rhs)));
  }
}

TEST_CASE("homogeneous degree validation") {
  series_poly f(Q, 3);
  f.add_term({2, 0, 0}, cnum(1));
  f.add_term({0, 1, 1}, cnum(-1));
  f.set_homogeneous_degree(2);
  CHECK(f.homogeneous_degree().value() == 2);
  CHECK_THROWS_AS(f.set_homogeneous_degree(3), error);

  series_poly g(Q, 2);
  g.add_term({1, 0}, cnum(1));
  g.add_term({0, 2}, cnum(1));
  CHECK_THROWS_AS(g.set_homogeneous_degree(2), error);
}

TEST_CASE("substitute scaled vars and divide power") {
  // f = x^2 - t y^2; x -> t x gives t^2 x^2 - t y^2, dividing by t leaves
  // t x^2 - y^2
  series_poly f(Q, 2);
  f.add_term({2, 0}, cnum(1));
  f.add_term({0, 2}, neg(t_to(1)));
  series_poly g = substitute_scaled_vars(f, {rat(1), rat(0)});
  series_poly h = divide_power(g, rat(1));
  CHECK(vanishes(sub(h.coeff({2, 0}), t_to(1))));
  CHECK(vanishes(sub(h.coeff({0, 2}), cnum(-1))));

  // dividing past a coefficient's support is legal and goes Laurent: the x^2
  // coefficient of f / t is t^{-1}
  series_poly w = divide_power(f, rat(1));
  CHECK(vanishes(sub(w.coeff({2, 0}), t_to(-1))));
  CHECK(vanishes(sub(w.coeff({0, 2}), cnum(-1))));
  CHECK(val(w.coeff({2, 0})).lower_bound() == xrat(rat(-1)));
}

TEST_CASE("newton polygon of hand-built polynomials") {
  // X^2 - t: single segment of slope -1/2
  newton_polygon_slopes np = newton_polygon(univar({neg(t_to(1)), cnum(0), cnum(1)}));
  REQUIRE(np.segments.size() == 1);
  CHECK(np.segments[0].slope == frac(-1, 2));
  CHECK(np.segments[0].mult == 2);
  CHECK(np.root_valuations()[0].first == frac(1, 2));

  // t^3 + (t + t^2) X + X^2 = (X + t)(X + t^2): slopes -2 and -1
  newton_polygon_slopes np2 =
      newton_polygon(univar({t_to(3), add(t_to(1), t_to(2)), cnum(1)}));
  REQUIRE(np2.segments.size() == 2);
  CHECK(np2.segments[0].slope == rat(-2));
  CHECK(np2.segments[0].mult == 1);
  CHECK(np2.segments[1].slope == rat(-1));
  CHECK(np2.segments[1].mult == 1);

  // t X^2: support starts at 2 (X^2 divides)
  newton_polygon_slopes np3 = newton_polygon(univar({cnum(0), cnum(0), t_to(1)}));
  CHECK(np3.lowest_index == 2);
  CHECK(np3.segments.empty());
}

TEST_CASE("polygon of a product is the union of the factor polygons") {
  sampler gen(22);
  for (int it = 0; it < 60; ++it) {
    std::vector<puiseux_series> ca, cb;
    long da = gen.uniform(1, 3), db = gen.uniform(1, 3);
    for (long i = 0; i < da; ++i)
      ca.push_back(gen.uniform(0, 3) == 0
                       ? puiseux_series::zero(Q)
                       : shift(cnum(gen.uniform(1, 5)), gen.uniform(0, 4), 1));
    ca.push_back(cnum(1));
    for (long i = 0; i < db; ++i)
      cb.push_back(gen.uniform(0, 3) == 0
                       ? puiseux_series::zero(Q)
                       : shift(cnum(gen.uniform(1, 5)), gen.uniform(0, 4), 1));
    cb.push_back(cnum(1));
    if (!ca.front().has_terms() || !cb.front().has_terms()) continue;

    std::vector<rat> want = slope_multiset(newton_polygon(univar(ca)));
    std::vector<rat> other = slope_multiset(newton_polygon(univar(cb)));
    want.insert(want.end(), other.begin(), other.end());
    std::sort(want.begin(), want.end());

    std::vector<rat> got =
        slope_multiset(newton_polygon(mul(univar(ca), univar(cb))));
    CHECK(got == want);
  }
}

TEST_CASE("polygon refuses precision-masked hulls") {
  // constant term only known to t^1 with nothing visible: the hull is unknowable
  series_poly f =
      univar({puiseux_series::zero(Q, xrat(1)), cnum(0), cnum(1)});
  CHECK_THROWS_AS((void)newton_polygon(f), error);
  CHECK_THROWS_AS((void)newton_polygon(univar({puiseux_series::zero(Q)})), error);
}

TEST_CASE("puiseux roots of split and ramified polynomials") {
  // (X - 1)(X - 2): two exact unramified roots
  root_result r = puiseux_roots(univar({cnum(2), cnum(-3), cnum(1)}));
  CHECK(r.complete);
  REQUIRE(r.roots.size() == 2);
  for (const auto& root : r.roots) {
    CHECK(root.exact);
    CHECK(root.y.ram_index() == 1);
  }

  // X^2 - (1 + t): square root of a unit, infinite expansion
  root_result r2 =
      puiseux_roots(univar({neg(add(cnum(1), t_to(1))), cnum(0), cnum(1)}),
                    {.prec = xrat(8)});
  CHECK(r2.complete);
  REQUIRE(r2.roots.size() == 2);
  for (const auto& root : r2.roots) {
    puiseux_series res = eval_poly(univar({neg(add(cnum(1), t_to(1))), cnum(0), cnum(1)}),
                                   {root.y});
    CHECK(val(res).lower_bound() >= xrat(8));
  }

  // X^2 - t: ramified root t^{1/2}, none inside R_1
  series_poly f = univar({neg(t_to(1)), cnum(0), cnum(1)});
  root_result r3 = puiseux_roots(f);
  REQUIRE(r3.roots.size() == 2);
  CHECK(r3.roots[0].y.ram_index() == 2);
  CHECK(r3.roots[0].exact);

  root_result r4 = puiseux_roots(f, {.ring_q = 1});
  CHECK(r4.complete);
  CHECK(r4.roots.empty());
}

TEST_CASE("cramer solve inverts small systems") {
  // [[1, t], [0, 1]] x = (1 + t, 2) has x = (1 - t, 2)
  series_matrix M = {{cnum(1), t_to(1)}, {cnum(0), cnum(1)}};
  std::vector<puiseux_series> x =
      cramer_solve(M, {add(cnum(1), t_to(1)), cnum(2)}, xrat(8));
  CHECK(vanishes(sub(x[0], sub(cnum(1), t_to(1)))));
  CHECK(vanishes(sub(x[1], cnum(2))));
  CHECK(vanishes(sub(det(M), cnum(1))));
}
