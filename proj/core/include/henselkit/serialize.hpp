#pragma once
#include <json.hpp>

#include "henselkit/poly.hpp"

namespace henselkit {

// Wire format (all exact, deterministic key order):
//   series: {"field":"Q"|"Fp:<p>", "q":2, "prec":"7/2"|"inf",
//            "terms":[[k,"coeff"],...]}   exponent = k/q, coeffs as reduced
//            fractions over Q, residues 0..p-1 over F_p
//   poly:   {"field":..., "n_vars":n, "homogeneous_degree":d?,
//            "terms":[[[e_1..e_n], series], ...]}
//   system: {"polys":[poly,...]}
//   point:  [series,...]
using json = nlohmann::ordered_json;

json series_to_json(const puiseux_series& a);
puiseux_series series_from_json(const json& j);

json poly_to_json(const series_poly& f);
series_poly poly_from_json(const json& j);

json system_to_json(const poly_system& F);
poly_system system_from_json(const json& j);

json point_to_json(const std::vector<puiseux_series>& x);
std::vector<puiseux_series> point_from_json(const json& j);

json load_json_file(const std::string& path);

} // namespace henselkit
