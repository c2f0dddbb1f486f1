#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "henselkit/sampling.hpp"
#include "henselkit/serialize.hpp"

using namespace henselkit;

namespace {

bool same_series(const puiseux_series& a, const puiseux_series& b) {
  return !sub(a, b).has_terms() && a.precision() == b.precision() &&
         a.field() == b.field();
}

} // namespace

TEST_CASE("series round trips") {
  sampler gen(51);
  for (int i = 0; i < 200; ++i) {
    field_desc fd = (i % 2) ? field_desc::Fp(5) : field_desc::Q();
    puiseux_series a = gen.series(fd, 4);
    puiseux_series back = series_from_json(series_to_json(a));
    CHECK(same_series(a, back));
    // stable wire text
    CHECK(series_to_json(back).dump() == series_to_json(a).dump());
  }
}

TEST_CASE("infinite precision survives the trip") {
  field_desc Q = field_desc::Q();
  puiseux_series a = puiseux_series::monomial(field_elem(Q, frac(-3, 7)), 5, 2);
  json j = series_to_json(a);
  CHECK(j.at("prec") == "inf");
  puiseux_series back = series_from_json(j);
  CHECK(back.is_exact());
  CHECK(same_series(a, back));
}

TEST_CASE("polynomial and system round trips") {
  sampler gen(52);
  for (int i = 0; i < 50; ++i) {
    field_desc fd = (i % 2) ? field_desc::Fp(3) : field_desc::Q();
    series_poly f(fd, 2);
    for (int k = 0; k < 3; ++k)
      f.add_term({unsigned(gen.uniform(0, 2)), unsigned(gen.uniform(0, 2))},
                 gen.series(fd, 3));
    series_poly back = poly_from_json(poly_to_json(f));
    CHECK(back.n_vars() == f.n_vars());
    CHECK(back.terms().size() == f.terms().size());
    for (const auto& [idx, c] : f.terms()) CHECK(same_series(back.coeff(idx), c));

    poly_system F{{f, back}};
    poly_system F2 = system_from_json(system_to_json(F));
    CHECK(F2.polys.size() == 2);
  }
}

TEST_CASE("homogeneous marker round trips") {
  field_desc Q = field_desc::Q();
  series_poly f(Q, 2);
  f.add_term({2, 0}, puiseux_series::constant(field_elem::one(Q)));
  f.add_term({0, 2}, puiseux_series::constant(field_elem(Q, rat(-1))));
  f.set_homogeneous_degree(2);
  series_poly back = poly_from_json(poly_to_json(f));
  REQUIRE(back.homogeneous_degree().has_value());
  CHECK(back.homogeneous_degree().value() == 2);
}

TEST_CASE("point round trips") {
  sampler gen(53);
  std::vector<puiseux_series> x;
  for (int i = 0; i < 4; ++i) x.push_back(gen.series(field_desc::Q(), 3));
  std::vector<puiseux_series> back = point_from_json(point_to_json(x));
  REQUIRE(back.size() == x.size());
  for (size_t i = 0; i < x.size(); ++i) CHECK(same_series(back[i], x[i]));
}

TEST_CASE("malformed input is reported as parse errors") {
  CHECK_THROWS_AS((void)series_from_json(json::parse("{}")), error);
  CHECK_THROWS_AS((void)series_from_json(json::parse("[1,2]")), error);
  CHECK_THROWS_AS(
      (void)series_from_json(json::parse(
          R"({"field":"Q","q":0,"prec":"1","terms":[]})")),
      error);
  CHECK_THROWS_AS((void)poly_from_json(json::parse(R"({"field":"Q"})")), error);
  CHECK_THROWS_AS((void)field_desc::parse("Fp:4"), error);
}

TEST_CASE("file loading") {
  std::string path = "serialize_roundtrip_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"field":"Q","q":1,"prec":"inf","terms":[[0,"1"]]})";
  }
  json j = load_json_file(path);
  puiseux_series a = series_from_json(j);
  CHECK(a.is_exact());
  CHECK(a.coeff_at(rat(0)).value() == 1);
  std::remove(path.c_str());

  CHECK_THROWS_AS((void)load_json_file("does_not_exist_anywhere.json"), error);
}

TEST_CASE("rational parsing round trips") {
  for (const char* s : {"0", "-3", "7/2", "-11/13"}) {
    rat x = parse_rat(s);
    CHECK(rat_str(x) == s);
  }
  CHECK(parse_rat("4/6") == frac(2, 3));
  CHECK_THROWS_AS((void)parse_rat("q"), error);
  CHECK_THROWS_AS((void)parse_rat("1/0"), error);
}
