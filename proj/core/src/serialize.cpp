#include "henselkit/serialize.hpp"

#include <fstream>

namespace henselkit {

namespace {

xrat prec_from_string(const std::string& s) {
  if (s == "inf") return xrat::infinity();
  return xrat(parse_rat(s));
}

} // namespace

json series_to_json(const puiseux_series& a) {
  json j;
  j["field"] = a.field().name();
  j["q"] = a.ram_index();
  j["prec"] = a.precision().str();
  json terms = json::array();
  for (const auto& [k, c] : a.terms()) terms.push_back(json::array({k, c.str()}));
  j["terms"] = std::move(terms);
  return j;
}

puiseux_series series_from_json(const json& j) {
  try {
    field_desc fd = field_desc::parse(j.at("field").get<std::string>());
    long q = j.at("q").get<long>();
    xrat prec = prec_from_string(j.at("prec").get<std::string>());
    std::map<long, field_elem> terms;
    for (const auto& t : j.at("terms")) {
      long k = t.at(0).get<long>();
      field_elem c = field_elem::parse(fd, t.at(1).get<std::string>());
      if (!terms.emplace(k, c).second)
        throw parse_error("duplicate exponent " + std::to_string(k));
    }
    return puiseux_series(fd, q, std::move(terms), prec);
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    throw parse_error(std::string("bad series: ") + e.what());
  }
}

json poly_to_json(const series_poly& f) {
  json j;
  j["field"] = f.field().name();
  j["n_vars"] = f.n_vars();
  if (f.homogeneous_degree()) j["homogeneous_degree"] = *f.homogeneous_degree();
  json terms = json::array();
  for (const auto& [idx, c] : f.terms())
    terms.push_back(json::array({json(idx), series_to_json(c)}));
  j["terms"] = std::move(terms);
  return j;
}

series_poly poly_from_json(const json& j) {
  try {
    field_desc fd = field_desc::parse(j.at("field").get<std::string>());
    size_t n = j.at("n_vars").get<size_t>();
    series_poly f(fd, n);
    for (const auto& t : j.at("terms")) {
      multi_index idx = t.at(0).get<multi_index>();
      f.add_term(idx, series_from_json(t.at(1)));
    }
    if (j.contains("homogeneous_degree"))
      f.set_homogeneous_degree(j.at("homogeneous_degree").get<unsigned>());
    return f;
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    throw parse_error(std::string("bad polynomial: ") + e.what());
  }
}

json system_to_json(const poly_system& F) {
  json j;
  json polys = json::array();
  for (const auto& f : F.polys) polys.push_back(poly_to_json(f));
  j["polys"] = std::move(polys);
  return j;
}

poly_system system_from_json(const json& j) {
  try {
    poly_system F;
    for (const auto& p : j.at("polys")) F.polys.push_back(poly_from_json(p));
    F.validate();
    return F;
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    throw parse_error(std::string("bad system: ") + e.what());
  }
}

json point_to_json(const std::vector<puiseux_series>& x) {
  json j = json::array();
  for (const auto& xi : x) j.push_back(series_to_json(xi));
  return j;
}

std::vector<puiseux_series> point_from_json(const json& j) {
  try {
    std::vector<puiseux_series> x;
    for (const auto& s : j) x.push_back(series_from_json(s));
    return x;
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    throw parse_error(std::string("bad point: ") + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
}

} // namespace henselkit
