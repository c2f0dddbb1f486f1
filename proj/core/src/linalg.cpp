#include "henselkit/linalg.hpp"

namespace henselkit {

namespace {

puiseux_series det_rec(const series_matrix& M, std::vector<size_t>& cols, size_t row) {
  const field_desc& fd = M[0][0].field();
  if (cols.size() == 1) return M[row][cols[0]];
  puiseux_series acc = puiseux_series::zero(fd);
  for (size_t j = 0; j < cols.size(); ++j) {
    size_t cj = cols[j];
    cols.erase(cols.begin() + j);
    puiseux_series minor = det_rec(M, cols, row + 1);
    cols.insert(cols.begin() + j, cj);
    puiseux_series term = mul(M[row][cj], minor);
    acc = (j % 2 == 0) ? add(acc, term) : sub(acc, term);
  }
  return acc;
}

} // namespace

puiseux_series det(const series_matrix& M) {
  size_t n = M.size();
  if (n == 0) throw dimension_mismatch("determinant of empty matrix");
  for (const auto& row : M)
    if (row.size() != n) throw dimension_mismatch("determinant needs a square matrix");
  if (n > 6) throw budget_exceeded("cofactor determinant capped at 6x6");
  std::vector<size_t> cols(n);
  for (size_t j = 0; j < n; ++j) cols[j] = j;
  return det_rec(M, cols, 0);
}

std::vector<puiseux_series> cramer_solve(const series_matrix& M,
                                         const std::vector<puiseux_series>& r,
                                         const xrat& inv_target) {
  size_t n = M.size();
  if (r.size() != n) throw dimension_mismatch("rhs size != matrix size");
  puiseux_series d = det(M);
  puiseux_series dinv = invert_unit(d, inv_target);
  std::vector<puiseux_series> x;
  x.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    series_matrix Mi = M;
    for (size_t row = 0; row < n; ++row) Mi[row][i] = r[row];
    x.push_back(mul(det(Mi), dinv));
  }
  return x;
}

} // namespace henselkit
