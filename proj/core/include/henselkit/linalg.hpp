#pragma once
#include "henselkit/series.hpp"

namespace henselkit {

using series_matrix = std::vector<std::vector<puiseux_series>>;

// Cofactor determinant; division-free, fine at the small sizes Newton steps
// use.
puiseux_series det(const series_matrix& M);

// Solve M x = r by Cramer's rule; det(M) must have finite valuation and the
// inversion runs at precision inv_target.
std::vector<puiseux_series> cramer_solve(const series_matrix& M,
                                         const std::vector<puiseux_series>& r,
                                         const xrat& inv_target);

} // namespace henselkit
