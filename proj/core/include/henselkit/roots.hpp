#pragma once
#include "henselkit/lifting.hpp"

namespace henselkit {

struct puiseux_root {
  puiseux_series y;
  bool exact; // f(y) == 0 identically (not merely to the target precision)
};

struct root_options {
  long ring_q = 0;  // >0: only roots lying in R_{ring_q} (completeness is
                    // relative to that ring); 0: any ramification up to q_cap
  long q_cap = 6;
  xrat prec = xrat(24); // approximation depth for non-terminating branches
  bool nonneg_only = true; // restrict to integral roots (val >= 0)
  long depth_cap = 256;
  residue_root_fn roots = default_residue_roots();
};

struct root_result {
  std::vector<puiseux_root> roots;
  bool complete; // every branch in the requested ring was resolved
  std::string note;
};

// Newton-Puiseux on a univariate polynomial over Q((t^{1/q})) or
// F_p((t^{1/q})): slope by slope, edge equation over the residue field,
// substitute X = t^{rho}(c + Y) and recurse.  Over Q the residue search is
// the rational-root proxy (exhaustive for the rational residue field).
root_result puiseux_roots(const series_poly& f, const root_options& opt = {});

} // namespace henselkit
