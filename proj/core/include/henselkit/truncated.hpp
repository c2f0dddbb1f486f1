#pragma once
#include "henselkit/lifting.hpp"

namespace henselkit {

struct trunc_options {
  rat nu = 1;       // search x with val F(x) >= nu
  long q = 1;       // coefficients of x live on the t^{1/q} grid
  bool primitive = false;        // require a nonzero residue vector
  unsigned long long budget = 100000; // residual evaluations
  size_t max_solutions = 16;
  residue_root_fn roots = default_residue_roots();
};

struct trunc_result {
  std::vector<std::vector<puiseux_series>> solutions;
  bool exhaustive; // the whole tree within the grid was explored
  unsigned long long checked = 0;
  std::string note;
};

// Level-by-level search for solutions of the truncated congruence
// F(x) = 0 mod t^{nu} in R_q^n.  Exhaustive over F_p (within budget); over Q
// levels with a forced or empty extension keep exhaustiveness, a free level
// falls back to a small sample pool and drops the exhaustive claim.
// Requires integral coefficient valuations (the pruning rule needs them).
trunc_result truncated_solutions(const poly_system& F, const trunc_options& opt);

} // namespace henselkit
